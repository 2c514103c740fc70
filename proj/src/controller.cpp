#include "lyapoct/controller.hpp"

#include <algorithm>
#include <limits>

namespace lyapoct {

namespace {

void validate(const QueueState& q, const DepthSummary& summary, const ControllerConfig& cfg) {
  if (cfg.depths.empty()) throw EmptyCandidateSet();
  if (!(cfg.quality_weight >= 0.0))
    throw std::invalid_argument("quality weight must be >= 0");
  int prev = 0;
  for (const int d : cfg.depths) {
    if (d < 1 || d <= prev)
      throw std::invalid_argument("candidate depths must be positive and strictly increasing");
    if (d > summary.max_depth)
      throw DepthOutOfRange("candidate depth " + std::to_string(d) +
                            " exceeds summary max depth " + std::to_string(summary.max_depth));
    prev = d;
  }
  (void)q;
}

CandidateScore evaluate(const QueueState& q, const DepthSummary& summary,
                        const ControllerConfig& cfg, int depth) {
  CandidateScore c;
  c.depth = depth;
  c.quality = quality(summary, depth, cfg.quality_model);
  c.arrivals = workload(summary, depth, cfg.workload_model);
  c.score = cfg.quality_weight * c.quality - q.backlog * c.arrivals;
  return c;
}

}  // namespace

const CandidateScore& Decision::chosen() const {
  const auto it = std::find_if(per_candidate.begin(), per_candidate.end(),
                               [this](const CandidateScore& c) { return c.depth == depth; });
  if (it == per_candidate.end()) throw std::logic_error("decision lost its chosen candidate");
  return *it;
}

Decision decide(const QueueState& q, const DepthSummary& summary, const ControllerConfig& cfg) {
  validate(q, summary, cfg);

  Decision dec;
  dec.per_candidate.reserve(cfg.depths.size());
  bool first = true;
  for (const int d : cfg.depths) {
    const CandidateScore c = evaluate(q, summary, cfg, d);
    ++dec.evaluations;
    // candidates come in ascending depth, so strict improvement keeps the
    // lowest depth on ties and >= keeps the highest
    const bool better = first || (cfg.tie_break == TieBreak::lowest_depth ? c.score > dec.score
                                                                          : c.score >= dec.score);
    if (better) {
      dec.depth = c.depth;
      dec.score = c.score;
      first = false;
    }
    dec.per_candidate.push_back(c);
  }
  return dec;
}

Decision decide_oracle(const QueueState& q, const DepthSummary& summary,
                       const ControllerConfig& cfg) {
  validate(q, summary, cfg);

  Decision dec;
  dec.per_candidate.reserve(cfg.depths.size());
  for (const int d : cfg.depths) {
    dec.per_candidate.push_back(evaluate(q, summary, cfg, d));
    ++dec.evaluations;
  }

  double best = -std::numeric_limits<double>::infinity();
  for (const CandidateScore& c : dec.per_candidate) best = std::max(best, c.score);

  std::vector<int> tied;
  for (const CandidateScore& c : dec.per_candidate)
    if (c.score == best) tied.push_back(c.depth);

  dec.depth = cfg.tie_break == TieBreak::lowest_depth ? tied.front() : tied.back();
  dec.score = best;
  return dec;
}

}  // namespace lyapoct
