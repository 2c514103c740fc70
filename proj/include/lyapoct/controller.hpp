#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "lyapoct/octree.hpp"
#include "lyapoct/queue.hpp"

namespace lyapoct {

enum class TieBreak { lowest_depth, highest_depth };

struct ControllerConfig {
  double quality_weight = 0.0;  // tradeoff coefficient: weight on quality vs backlog penalty, >= 0
  std::vector<int> depths;      // candidate depth set, strictly increasing, all >= 1
  QualityModel quality_model;
  WorkloadModel workload_model;
  TieBreak tie_break = TieBreak::lowest_depth;
};

struct CandidateScore {
  int depth = 0;
  double quality = 0.0;
  double arrivals = 0.0;
  double score = 0.0;
};

struct Decision {
  int depth = 0;       // chosen depth, always a member of the candidate set
  double score = 0.0;  // maximized objective value
  std::vector<CandidateScore> per_candidate;
  std::size_t evaluations = 0;  // objective evaluations performed (== candidate count)

  [[nodiscard]] const CandidateScore& chosen() const;
};

class EmptyCandidateSet : public std::runtime_error {
 public:
  EmptyCandidateSet() : std::runtime_error("candidate depth set is empty") {}
};

/// Per-slot depth decision: the candidate maximizing
///   quality_weight * quality(d) - backlog * workload(d),
/// ties resolved by cfg.tie_break. Stateless and pure; performs exactly one
/// objective evaluation per candidate.
Decision decide(const QueueState& q, const DepthSummary& summary, const ControllerConfig& cfg);

/// Same contract as decide(), implemented as a deliberately naive
/// enumeration (score every candidate, then resolve the argmax over the
/// equal-score set). Kept separate from decide() so the two can
/// cross-validate each other.
Decision decide_oracle(const QueueState& q, const DepthSummary& summary,
                       const ControllerConfig& cfg);

}  // namespace lyapoct
