#include "lyapoct/trace_io.hpp"

#include <array>
#include <charconv>
#include <fstream>

#include "lyapoct/ply.hpp"  // IoError

namespace lyapoct {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

namespace {

// frame ids are free text; keep the column count stable
std::string csv_safe(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = '_';
  return s;
}

}  // namespace

std::string trace_to_csv(const Trace& trace) {
  std::string out(kTraceCsvHeader);
  out += '\n';
  for (const TraceRecord& r : trace.records) {
    out += std::to_string(r.t);
    out += ',';
    out += csv_safe(r.frame_id);
    out += ',';
    out += format_double(r.q_before);
    out += ',';
    out += std::to_string(r.d_star);
    out += ',';
    out += format_double(r.quality);
    out += ',';
    out += format_double(r.arrivals);
    out += ',';
    out += format_double(r.service);
    out += ',';
    out += format_double(r.q_after);
    out += ',';
    out += format_double(r.score);
    out += '\n';
  }
  return out;
}

void write_trace_csv(const Trace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create '" + path.string() + "'");
  const std::string csv = trace_to_csv(trace);
  out.write(csv.data(), static_cast<std::streamsize>(csv.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace lyapoct
