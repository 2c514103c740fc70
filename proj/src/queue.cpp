#include "lyapoct/queue.hpp"

#include <cmath>
#include <numeric>

namespace lyapoct {

QueueState advance(QueueState q, double arrivals, double service) {
  if (!(std::isfinite(arrivals) && arrivals >= 0.0))
    throw std::invalid_argument("arrivals must be finite and >= 0");
  if (!(std::isfinite(service) && service >= 0.0))
    throw std::invalid_argument("service must be finite and >= 0");
  return QueueState{std::max(q.backlog + arrivals - service, 0.0), q.slot + 1};
}

namespace {

// splitmix64 of (seed, slot): stateless, so samples depend only on the pair.
std::uint64_t mix(std::uint64_t seed, std::uint64_t slot) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (slot + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double service_sample(const ServiceModel& model, std::uint64_t slot) {
  if (!(model.rate > 0.0)) throw std::invalid_argument("service rate must be > 0");
  if (model.kind == ServiceKind::constant) return model.rate;
  if (!(model.jitter >= 0.0 && model.jitter < 1.0))
    throw std::invalid_argument("service jitter must be in [0, 1)");
  const double u = static_cast<double>(mix(model.seed, slot) >> 11) * 0x1.0p-53;  // [0,1)
  return model.rate * (1.0 + model.jitter * (2.0 * u - 1.0));
}

double running_average_backlog(std::span<const double> backlog) {
  if (backlog.empty()) throw EmptyTrace();
  const double sum = std::accumulate(backlog.begin(), backlog.end(), 0.0);
  return sum / static_cast<double>(backlog.size());
}

}  // namespace lyapoct
