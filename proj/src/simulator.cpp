#include "lyapoct/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "lyapoct/ply.hpp"

namespace lyapoct {

RegimeInvalid::RegimeInvalid(double min_arrivals, double service_rate, double max_arrivals)
    : std::runtime_error("stability dichotomy needs a(min depth) < service < a(max depth); got " +
                         std::to_string(min_arrivals) + " / " + std::to_string(service_rate) +
                         " / " + std::to_string(max_arrivals)),
      min_arrivals_(min_arrivals),
      service_rate_(service_rate),
      max_arrivals_(max_arrivals) {}

TraceStats compute_stats(std::span<const TraceRecord> records) {
  TraceStats stats;
  if (records.empty()) return stats;
  double quality_sum = 0.0;
  double backlog_sum = 0.0;
  for (const TraceRecord& r : records) {
    quality_sum += r.quality;
    backlog_sum += r.q_before;
  }
  const double n = static_cast<double>(records.size());
  stats.avg_quality = quality_sum / n;
  stats.avg_backlog = backlog_sum / n;
  stats.final_backlog = records.back().q_after;
  return stats;
}

std::vector<DepthSummary> load_frame_summaries(const FrameSource& source, int max_depth) {
  std::vector<DepthSummary> summaries;

  if (const auto* spec = std::get_if<SyntheticSpec>(&source)) {
    summaries.push_back(build_summary(generate_synthetic_cloud(*spec), max_depth));
    return summaries;
  }

  const auto& path = std::get<std::filesystem::path>(source);
  if (std::filesystem::is_directory(path)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path))
      if (entry.is_regular_file() && entry.path().extension() == ".ply")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
      return a.filename().string() < b.filename().string();
    });
    if (files.empty())
      throw ConfigInvalid("frame directory '" + path.string() + "' contains no .ply files");
    summaries.reserve(files.size());
    for (const auto& f : files) summaries.push_back(build_summary(read_ply_file(f), max_depth));
    return summaries;
  }

  summaries.push_back(build_summary(read_ply_file(path), max_depth));
  return summaries;
}

namespace {

void validate(const SimConfig& cfg) {
  if (cfg.horizon < 1) throw ConfigInvalid("horizon must be >= 1");
  if (cfg.controller.depths.empty()) throw ConfigInvalid("candidate depth set is empty");
  if (cfg.policy.kind == PolicyKind::fixed_depth) {
    const auto& r = cfg.controller.depths;
    if (std::find(r.begin(), r.end(), cfg.policy.fixed_depth) == r.end())
      throw ConfigInvalid("fixed depth " + std::to_string(cfg.policy.fixed_depth) +
                          " is not a candidate depth");
  }
}

ServiceModel effective_service(const SimConfig& cfg) {
  ServiceModel svc = cfg.service;
  svc.seed ^= cfg.seed;  // run-level seed perturbs the sampler
  return svc;
}

}  // namespace

Trace run(const SimConfig& cfg, std::span<const DepthSummary> frames) {
  validate(cfg);
  if (frames.empty()) throw ConfigInvalid("frame sequence is empty");

  const ServiceModel svc = effective_service(cfg);
  const bool proposed = cfg.policy.kind == PolicyKind::proposed;

  Trace trace;
  trace.records.reserve(cfg.horizon);
  QueueState q{0.0, 0};

  for (std::uint64_t t = 0; t < cfg.horizon; ++t) {
    const DepthSummary& frame = frames[t % frames.size()];

    TraceRecord rec;
    rec.t = t;
    rec.frame_id = frame.frame_id;
    rec.q_before = q.backlog;

    if (proposed) {
      const Decision dec = decide(q, frame, cfg.controller);
      const CandidateScore& c = dec.chosen();
      rec.d_star = dec.depth;
      rec.quality = c.quality;
      rec.arrivals = c.arrivals;
      rec.score = dec.score;
    } else {
      const int d = cfg.policy.fixed_depth;
      rec.d_star = d;
      rec.quality = quality(frame, d, cfg.controller.quality_model);
      rec.arrivals = workload(frame, d, cfg.controller.workload_model);
      rec.score = cfg.controller.quality_weight * rec.quality - q.backlog * rec.arrivals;
    }

    rec.service = service_sample(svc, t);
    q = advance(q, rec.arrivals, rec.service);
    rec.q_after = q.backlog;
    trace.records.push_back(std::move(rec));
  }

  trace.stats = compute_stats(trace.records);
  return trace;
}

Trace run(const SimConfig& cfg) {
  const int max_depth = *std::max_element(cfg.controller.depths.begin(), cfg.controller.depths.end());
  const auto frames = load_frame_summaries(cfg.frames, max_depth);
  return run(cfg, frames);
}

PolicyComparison compare_policies(const SimConfig& cfg) {
  validate(SimConfig{cfg.horizon, cfg.controller, cfg.service, cfg.frames,
                     Policy{PolicyKind::proposed, 0}, cfg.seed});
  const auto& depths = cfg.controller.depths;
  const int d_min = depths.front();
  const int d_max = depths.back();

  const auto frames = load_frame_summaries(cfg.frames, d_max);

  // Mean arrival rates over the distinct frames against the mean service
  // rate; the dichotomy experiment is meaningless outside this regime.
  double a_min = 0.0;
  double a_max = 0.0;
  for (const DepthSummary& f : frames) {
    a_min += workload(f, d_min, cfg.controller.workload_model);
    a_max += workload(f, d_max, cfg.controller.workload_model);
  }
  a_min /= static_cast<double>(frames.size());
  a_max /= static_cast<double>(frames.size());
  const double b_mean = cfg.service.rate;  // jitter is symmetric around rate
  if (!(a_min < b_mean && b_mean < a_max)) throw RegimeInvalid(a_min, b_mean, a_max);

  PolicyComparison cmp;
  SimConfig c = cfg;
  c.policy = Policy{PolicyKind::fixed_depth, d_min};
  cmp.fixed_min = run(c, frames);
  c.policy = Policy{PolicyKind::fixed_depth, d_max};
  cmp.fixed_max = run(c, frames);
  c.policy = Policy{PolicyKind::proposed, 0};
  cmp.proposed = run(c, frames);
  return cmp;
}

}  // namespace lyapoct
