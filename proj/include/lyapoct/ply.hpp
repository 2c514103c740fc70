#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lyapoct/point_cloud.hpp"

namespace lyapoct {

enum class PlyFormat { ascii, binary_little_endian };

enum class PlyScalar : std::uint8_t { i8, u8, i16, u16, i32, u32, f32, f64 };

std::size_t ply_scalar_size(PlyScalar s);

struct PlyProperty {
  std::string name;
  PlyScalar type = PlyScalar::f32;
  bool is_list = false;
  PlyScalar count_type = PlyScalar::u8;  // meaningful only when is_list
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> properties;
};

struct PlyHeader {
  PlyFormat format = PlyFormat::ascii;
  std::vector<PlyElement> elements;
  std::vector<std::string> comments;
  std::size_t body_offset = 0;  // byte offset of the first data record

  [[nodiscard]] const PlyElement* find_element(std::string_view name) const;
  [[nodiscard]] std::size_t vertex_count() const;
};

/// Parse failure with the byte offset (and 1-based line, when the failure is
/// in a line-oriented region) where the problem was detected.
class PlyError : public std::runtime_error {
 public:
  PlyError(const std::string& what, std::size_t byte_offset, std::size_t line);

  [[nodiscard]] std::size_t byte_offset() const { return byte_offset_; }
  [[nodiscard]] std::size_t line() const { return line_; }  // 0 in binary bodies

 private:
  std::size_t byte_offset_;
  std::size_t line_;
};

class MalformedHeader : public PlyError {
 public:
  using PlyError::PlyError;
};

class TruncatedBody : public PlyError {
 public:
  using PlyError::PlyError;
};

class BadScalar : public PlyError {
 public:
  using PlyError::PlyError;
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Header-only parse: magic line, format, comments, elements/properties up to
/// and including end_header. Accepted formats: ascii 1.0 and
/// binary_little_endian 1.0 (big-endian is rejected as malformed).
PlyHeader parse_ply_header(std::span<const std::uint8_t> bytes);

/// Full parse. Returns exactly header vertex_count points in file order.
/// Unknown per-vertex properties are skipped; elements other than "vertex"
/// (faces and the like) are decoded only as far as needed to skip them, and
/// anything after the vertex data is ignored. red/green/blue uchar
/// properties become the cloud's colors.
PointCloud parse_ply(std::span<const std::uint8_t> bytes, std::string_view source_name = "");

/// Serialize a cloud. Coordinates are written as float64 so the binary
/// round-trip is bit-exact; ASCII uses shortest round-trip decimal. Colors
/// are emitted as uchar red/green/blue when present.
std::vector<std::uint8_t> write_ply(const PointCloud& cloud, PlyFormat format);

PointCloud read_ply_file(const std::filesystem::path& path);
void write_ply_file(const PointCloud& cloud, PlyFormat format, const std::filesystem::path& path);

}  // namespace lyapoct
