#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lyapoct/controller.hpp"
#include "lyapoct/octree.hpp"
#include "lyapoct/queue.hpp"

namespace lyapoct {

enum class PolicyKind { proposed, fixed_depth };

struct Policy {
  PolicyKind kind = PolicyKind::proposed;
  int fixed_depth = 0;  // meaningful only for fixed_depth; must be a candidate
};

/// Frame sequence source: a PLY file, a directory of PLY files (sorted
/// lexicographically by filename), or one synthetic frame. The sequence is
/// cycled when shorter than the horizon.
using FrameSource = std::variant<std::filesystem::path, SyntheticSpec>;

struct SimConfig {
  std::uint64_t horizon = 1;  // slots, >= 1
  ControllerConfig controller;
  ServiceModel service;
  FrameSource frames;
  Policy policy;
  std::uint64_t seed = 0;  // folded into the service sampler seed
};

struct TraceRecord {
  std::uint64_t t = 0;
  std::string frame_id;
  double q_before = 0.0;
  int d_star = 0;
  double quality = 0.0;
  double arrivals = 0.0;
  double service = 0.0;
  double q_after = 0.0;
  double score = 0.0;
};

struct TraceStats {
  double avg_quality = 0.0;  // mean per-slot quality over the horizon
  double avg_backlog = 0.0;  // mean of q_before over the horizon
  double final_backlog = 0.0;
};

struct Trace {
  std::vector<TraceRecord> records;
  TraceStats stats;
};

TraceStats compute_stats(std::span<const TraceRecord> records);

class ConfigInvalid : public std::runtime_error {
 public:
  explicit ConfigInvalid(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown by compare_policies when the configured rates cannot exhibit the
/// stability dichotomy; carries the three rates so the caller can rescale.
class RegimeInvalid : public std::runtime_error {
 public:
  RegimeInvalid(double min_arrivals, double service_rate, double max_arrivals);

  double min_arrivals() const { return min_arrivals_; }
  double service_rate() const { return service_rate_; }
  double max_arrivals() const { return max_arrivals_; }

 private:
  double min_arrivals_;
  double service_rate_;
  double max_arrivals_;
};

/// Build the per-frame summary cache for a source. Summaries are computed to
/// `max_depth` once per distinct frame; the result is immutable and safe to
/// share across concurrent runs.
std::vector<DepthSummary> load_frame_summaries(const FrameSource& source, int max_depth);

/// Closed-loop run: per slot observe the backlog, decide a depth (controller
/// or fixed), enqueue its workload, serve, advance. Fully deterministic
/// given the config.
Trace run(const SimConfig& cfg);
Trace run(const SimConfig& cfg, std::span<const DepthSummary> frames);

struct PolicyComparison {
  Trace fixed_min;
  Trace fixed_max;
  Trace proposed;
};

/// Run fixed-min, fixed-max, and the proposed policy over identical frames,
/// seeds, and service. Requires a regime where the min-depth arrival rate is
/// below the mean service rate and the max-depth rate is above it.
PolicyComparison compare_policies(const SimConfig& cfg);

}  // namespace lyapoct
