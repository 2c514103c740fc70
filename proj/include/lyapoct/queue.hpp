#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

namespace lyapoct {

/// Backlog of visualization work (work-units) at a slot. Immutable value;
/// advance() returns the successor state.
struct QueueState {
  double backlog = 0.0;  // never negative
  std::uint64_t slot = 0;
};

/// One slot of queue dynamics: backlog' = max(backlog + arrivals - service, 0).
QueueState advance(QueueState q, double arrivals, double service);

enum class ServiceKind { constant, seeded_uniform };

/// Work drained per slot. constant: exactly `rate`. seeded_uniform:
/// rate * (1 + u) with u uniform in [-jitter, +jitter], a pure function of
/// (seed, slot) so parallel simulations never share sampler state.
struct ServiceModel {
  ServiceKind kind = ServiceKind::constant;
  double rate = 1.0;    // work-units per slot, > 0
  double jitter = 0.0;  // uniform half-width fraction, in [0,1)
  std::uint64_t seed = 0;
};

double service_sample(const ServiceModel& model, std::uint64_t slot);

class EmptyTrace : public std::runtime_error {
 public:
  EmptyTrace() : std::runtime_error("backlog trace is empty") {}
};

/// Arithmetic mean of a backlog trace (finite-horizon delay metric).
double running_average_backlog(std::span<const double> backlog);

}  // namespace lyapoct
