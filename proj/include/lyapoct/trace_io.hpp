#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "lyapoct/simulator.hpp"

namespace lyapoct {

/// Fixed column set and order; golden traces depend on it byte for byte.
inline constexpr std::string_view kTraceCsvHeader =
    "t,frame_id,q_before,d_star,quality,arrivals,service,q_after,score";

/// Shortest decimal that round-trips the exact double. Deterministic, so
/// serialized traces are byte-stable across runs.
std::string format_double(double value);

std::string trace_to_csv(const Trace& trace);
void write_trace_csv(const Trace& trace, const std::filesystem::path& path);

}  // namespace lyapoct
