#include "lyapoct/ply.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <optional>

namespace lyapoct {

PlyError::PlyError(const std::string& what, std::size_t byte_offset, std::size_t line)
    : std::runtime_error(what + " (byte " + std::to_string(byte_offset) +
                         (line > 0 ? ", line " + std::to_string(line) : "") + ")"),
      byte_offset_(byte_offset),
      line_(line) {}

std::size_t ply_scalar_size(PlyScalar s) {
  switch (s) {
    case PlyScalar::i8:
    case PlyScalar::u8:
      return 1;
    case PlyScalar::i16:
    case PlyScalar::u16:
      return 2;
    case PlyScalar::i32:
    case PlyScalar::u32:
    case PlyScalar::f32:
      return 4;
    case PlyScalar::f64:
      return 8;
  }
  return 0;
}

const PlyElement* PlyHeader::find_element(std::string_view name) const {
  for (const PlyElement& e : elements)
    if (e.name == name) return &e;
  return nullptr;
}

std::size_t PlyHeader::vertex_count() const {
  const PlyElement* v = find_element("vertex");
  return v ? v->count : 0;
}

namespace {

std::optional<PlyScalar> scalar_from_name(std::string_view s) {
  if (s == "char" || s == "int8") return PlyScalar::i8;
  if (s == "uchar" || s == "uint8") return PlyScalar::u8;
  if (s == "short" || s == "int16") return PlyScalar::i16;
  if (s == "ushort" || s == "uint16") return PlyScalar::u16;
  if (s == "int" || s == "int32") return PlyScalar::i32;
  if (s == "uint" || s == "uint32") return PlyScalar::u32;
  if (s == "float" || s == "float32") return PlyScalar::f32;
  if (s == "double" || s == "float64") return PlyScalar::f64;
  return std::nullopt;
}

struct HeaderCursor {
  std::span<const std::uint8_t> bytes;
  std::size_t offset = 0;
  std::size_t line_no = 0;

  // Returns the next header line without its terminator; tolerates CRLF.
  std::string_view next_line() {
    const std::size_t start = offset;
    std::size_t end = start;
    while (end < bytes.size() && bytes[end] != '\n') ++end;
    if (end == bytes.size())
      throw MalformedHeader("header ends before end_header", start, line_no + 1);
    offset = end + 1;
    ++line_no;
    std::size_t len = end - start;
    if (len > 0 && bytes[start + len - 1] == '\r') --len;
    return std::string_view(reinterpret_cast<const char*>(bytes.data()) + start, len);
  }
};

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

std::size_t parse_count(std::string_view word, std::size_t byte, std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc{} || ptr != word.data() + word.size())
    throw MalformedHeader("bad element count '" + std::string(word) + "'", byte, line);
  return value;
}

}  // namespace

PlyHeader parse_ply_header(std::span<const std::uint8_t> bytes) {
  HeaderCursor cur{bytes};

  if (bytes.size() < 3) throw MalformedHeader("missing 'ply' magic", 0, 1);
  if (cur.next_line() != "ply") throw MalformedHeader("missing 'ply' magic", 0, 1);

  PlyHeader header;
  bool have_format = false;
  bool done = false;

  while (!done) {
    const std::size_t line_start = cur.offset;
    const std::string_view line = cur.next_line();
    const auto words = split_words(line);
    if (words.empty()) continue;

    const std::string_view kw = words[0];
    if (kw == "end_header") {
      done = true;
    } else if (kw == "format") {
      if (words.size() != 3 || words[2] != "1.0")
        throw MalformedHeader("unsupported format line '" + std::string(line) + "'", line_start,
                              cur.line_no);
      if (words[1] == "ascii") {
        header.format = PlyFormat::ascii;
      } else if (words[1] == "binary_little_endian") {
        header.format = PlyFormat::binary_little_endian;
      } else {
        // covers binary_big_endian and anything unknown
        throw MalformedHeader("unsupported format '" + std::string(words[1]) + "'", line_start,
                              cur.line_no);
      }
      have_format = true;
    } else if (kw == "comment" || kw == "obj_info") {
      const std::size_t body = line.find(' ');
      header.comments.emplace_back(body == std::string_view::npos ? "" : line.substr(body + 1));
    } else if (kw == "element") {
      if (words.size() != 3)
        throw MalformedHeader("bad element line", line_start, cur.line_no);
      PlyElement elem;
      elem.name = std::string(words[1]);
      elem.count = parse_count(words[2], line_start, cur.line_no);
      header.elements.push_back(std::move(elem));
    } else if (kw == "property") {
      if (header.elements.empty())
        throw MalformedHeader("property before any element", line_start, cur.line_no);
      PlyProperty prop;
      if (words.size() == 5 && words[1] == "list") {
        const auto count_type = scalar_from_name(words[2]);
        const auto item_type = scalar_from_name(words[3]);
        if (!count_type || !item_type)
          throw MalformedHeader("unknown list property type", line_start, cur.line_no);
        prop.is_list = true;
        prop.count_type = *count_type;
        prop.type = *item_type;
        prop.name = std::string(words[4]);
      } else if (words.size() == 3) {
        const auto type = scalar_from_name(words[1]);
        if (!type)
          throw MalformedHeader("unknown property type '" + std::string(words[1]) + "'",
                                line_start, cur.line_no);
        prop.type = *type;
        prop.name = std::string(words[2]);
      } else {
        throw MalformedHeader("bad property line", line_start, cur.line_no);
      }
      header.elements.back().properties.push_back(std::move(prop));
    } else {
      throw MalformedHeader("unknown header keyword '" + std::string(kw) + "'", line_start,
                            cur.line_no);
    }
  }

  if (!have_format) throw MalformedHeader("header has no format line", 0, 1);

  const PlyElement* vertex = header.find_element("vertex");
  if (vertex == nullptr)
    throw MalformedHeader("header declares no vertex element", 0, 1);
  for (const char* coord : {"x", "y", "z"}) {
    const bool found = std::any_of(vertex->properties.begin(), vertex->properties.end(),
                                   [&](const PlyProperty& p) { return !p.is_list && p.name == coord; });
    if (!found)
      throw MalformedHeader(std::string("vertex element lacks scalar property '") + coord + "'",
                            0, 1);
  }

  header.body_offset = cur.offset;
  return header;
}

namespace {

// ---- binary body decoding -------------------------------------------------

struct BinaryCursor {
  std::span<const std::uint8_t> bytes;
  std::size_t offset;

  void need(std::size_t n) const {
    if (offset + n > bytes.size())
      throw TruncatedBody("binary body ends early", bytes.size(), 0);
  }

  std::uint64_t read_raw(std::size_t n) {
    need(n);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < n; ++i) v |= std::uint64_t(bytes[offset + i]) << (8 * i);
    offset += n;
    return v;
  }

  double read_scalar(PlyScalar type) {
    switch (type) {
      case PlyScalar::i8:
        return static_cast<double>(static_cast<std::int8_t>(read_raw(1)));
      case PlyScalar::u8:
        return static_cast<double>(read_raw(1));
      case PlyScalar::i16:
        return static_cast<double>(static_cast<std::int16_t>(read_raw(2)));
      case PlyScalar::u16:
        return static_cast<double>(read_raw(2));
      case PlyScalar::i32:
        return static_cast<double>(static_cast<std::int32_t>(read_raw(4)));
      case PlyScalar::u32:
        return static_cast<double>(static_cast<std::uint32_t>(read_raw(4)));
      case PlyScalar::f32:
        return static_cast<double>(std::bit_cast<float>(static_cast<std::uint32_t>(read_raw(4))));
      case PlyScalar::f64:
        return std::bit_cast<double>(read_raw(8));
    }
    return 0.0;
  }

  std::uint64_t read_list_count(PlyScalar type) {
    const double v = read_scalar(type);
    if (v < 0)
      throw BadScalar("negative list count", offset, 0);
    return static_cast<std::uint64_t>(v);
  }

  void skip_list(const PlyProperty& prop) {
    const std::uint64_t n = read_list_count(prop.count_type);
    const std::size_t item = ply_scalar_size(prop.type);
    if (n > bytes.size())  // cannot possibly fit; also forestalls overflow below
      throw TruncatedBody("binary body ends early", bytes.size(), 0);
    need(n * item);
    offset += n * item;
  }
};

// ---- ASCII body decoding --------------------------------------------------

struct AsciiCursor {
  std::span<const std::uint8_t> bytes;
  std::size_t offset;
  std::size_t token_start = 0;  // start of the most recent token

  static bool is_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  }

  std::size_t line_of(std::size_t pos) const {
    std::size_t line = 1;
    for (std::size_t i = 0; i < pos && i < bytes.size(); ++i)
      if (bytes[i] == '\n') ++line;
    return line;
  }

  std::string_view next_token() {
    while (offset < bytes.size() && is_space(bytes[offset])) ++offset;
    if (offset == bytes.size())
      throw TruncatedBody("ascii body ends early", offset, line_of(offset));
    token_start = offset;
    while (offset < bytes.size() && !is_space(bytes[offset])) ++offset;
    return std::string_view(reinterpret_cast<const char*>(bytes.data()) + token_start,
                            offset - token_start);
  }

  double read_double() {
    const std::string_view tok = next_token();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
      throw BadScalar("unparsable value '" + std::string(tok) + "'", token_start,
                      line_of(token_start));
    return v;
  }

  std::uint64_t read_list_count() {
    const double v = read_double();
    if (v < 0 || v != std::floor(v))
      throw BadScalar("bad list count", token_start, line_of(token_start));
    return static_cast<std::uint64_t>(v);
  }
};

// Per-property action when walking vertex records.
enum class Capture : std::uint8_t { skip, x, y, z, red, green, blue };

std::vector<Capture> plan_vertex_captures(const PlyElement& vertex, bool& has_colors) {
  std::vector<Capture> plan(vertex.properties.size(), Capture::skip);
  int color_channels = 0;
  for (std::size_t i = 0; i < vertex.properties.size(); ++i) {
    const PlyProperty& p = vertex.properties[i];
    if (p.is_list) continue;
    if (p.name == "x") plan[i] = Capture::x;
    else if (p.name == "y") plan[i] = Capture::y;
    else if (p.name == "z") plan[i] = Capture::z;
    else if (p.type == PlyScalar::u8 && p.name == "red") { plan[i] = Capture::red; ++color_channels; }
    else if (p.type == PlyScalar::u8 && p.name == "green") { plan[i] = Capture::green; ++color_channels; }
    else if (p.type == PlyScalar::u8 && p.name == "blue") { plan[i] = Capture::blue; ++color_channels; }
  }
  has_colors = color_channels == 3;
  if (!has_colors) {
    for (auto& c : plan)
      if (c == Capture::red || c == Capture::green || c == Capture::blue) c = Capture::skip;
  }
  return plan;
}

}  // namespace

PointCloud parse_ply(std::span<const std::uint8_t> bytes, std::string_view source_name) {
  const PlyHeader header = parse_ply_header(bytes);
  const PlyElement& vertex = *header.find_element("vertex");

  bool has_colors = false;
  const std::vector<Capture> plan = plan_vertex_captures(vertex, has_colors);

  PointCloud cloud;
  cloud.source_name = std::string(source_name);
  cloud.points.reserve(vertex.count);
  if (has_colors) cloud.colors.reserve(vertex.count);

  if (header.format == PlyFormat::binary_little_endian) {
    BinaryCursor cur{bytes, header.body_offset};
    for (const PlyElement& elem : header.elements) {
      if (elem.name == "vertex") break;
      // skip every record of an element declared before vertex
      for (std::size_t r = 0; r < elem.count; ++r) {
        for (const PlyProperty& p : elem.properties) {
          if (p.is_list) cur.skip_list(p);
          else { cur.need(ply_scalar_size(p.type)); cur.offset += ply_scalar_size(p.type); }
        }
      }
    }
    for (std::size_t r = 0; r < vertex.count; ++r) {
      Point3 pt;
      Color8 col;
      for (std::size_t i = 0; i < vertex.properties.size(); ++i) {
        const PlyProperty& p = vertex.properties[i];
        if (p.is_list) { cur.skip_list(p); continue; }
        switch (plan[i]) {
          case Capture::x: pt.x = cur.read_scalar(p.type); break;
          case Capture::y: pt.y = cur.read_scalar(p.type); break;
          case Capture::z: pt.z = cur.read_scalar(p.type); break;
          case Capture::red: col.r = static_cast<std::uint8_t>(cur.read_raw(1)); break;
          case Capture::green: col.g = static_cast<std::uint8_t>(cur.read_raw(1)); break;
          case Capture::blue: col.b = static_cast<std::uint8_t>(cur.read_raw(1)); break;
          case Capture::skip:
            cur.need(ply_scalar_size(p.type));
            cur.offset += ply_scalar_size(p.type);
            break;
        }
      }
      cloud.points.push_back(pt);
      if (has_colors) cloud.colors.push_back(col);
    }
    return cloud;  // trailing elements/bytes intentionally never touched
  }

  AsciiCursor cur{bytes, header.body_offset};
  for (const PlyElement& elem : header.elements) {
    if (elem.name == "vertex") break;
    for (std::size_t r = 0; r < elem.count; ++r) {
      for (const PlyProperty& p : elem.properties) {
        if (p.is_list) {
          const std::uint64_t n = cur.read_list_count();
          for (std::uint64_t k = 0; k < n; ++k) cur.next_token();
        } else {
          cur.next_token();
        }
      }
    }
  }
  for (std::size_t r = 0; r < vertex.count; ++r) {
    Point3 pt;
    Color8 col;
    for (std::size_t i = 0; i < vertex.properties.size(); ++i) {
      const PlyProperty& p = vertex.properties[i];
      if (p.is_list) {
        const std::uint64_t n = cur.read_list_count();
        for (std::uint64_t k = 0; k < n; ++k) cur.next_token();
        continue;
      }
      switch (plan[i]) {
        case Capture::x: pt.x = cur.read_double(); break;
        case Capture::y: pt.y = cur.read_double(); break;
        case Capture::z: pt.z = cur.read_double(); break;
        case Capture::red:
        case Capture::green:
        case Capture::blue: {
          const double v = cur.read_double();
          if (v < 0 || v > 255 || v != std::floor(v))
            throw BadScalar("color channel out of [0,255]", cur.token_start,
                            cur.line_of(cur.token_start));
          if (plan[i] == Capture::red) col.r = static_cast<std::uint8_t>(v);
          else if (plan[i] == Capture::green) col.g = static_cast<std::uint8_t>(v);
          else col.b = static_cast<std::uint8_t>(v);
          break;
        }
        case Capture::skip: cur.next_token(); break;
      }
    }
    cloud.points.push_back(pt);
    if (has_colors) cloud.colors.push_back(col);
  }
  return cloud;
}

namespace {

void append(std::vector<std::uint8_t>& out, std::string_view text) {
  out.insert(out.end(), text.begin(), text.end());
}

std::string shortest_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

std::vector<std::uint8_t> write_ply(const PointCloud& cloud, PlyFormat format) {
  std::vector<std::uint8_t> out;
  out.reserve(64 + cloud.size() * (format == PlyFormat::ascii ? 40 : 27));

  append(out, "ply\n");
  append(out, format == PlyFormat::ascii ? "format ascii 1.0\n" : "format binary_little_endian 1.0\n");
  append(out, "element vertex " + std::to_string(cloud.size()) + "\n");
  append(out, "property double x\nproperty double y\nproperty double z\n");
  if (cloud.has_colors())
    append(out, "property uchar red\nproperty uchar green\nproperty uchar blue\n");
  append(out, "end_header\n");

  if (format == PlyFormat::ascii) {
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const Point3& p = cloud.points[i];
      std::string line = shortest_double(p.x) + " " + shortest_double(p.y) + " " + shortest_double(p.z);
      if (cloud.has_colors()) {
        const Color8& c = cloud.colors[i];
        line += " " + std::to_string(int(c.r)) + " " + std::to_string(int(c.g)) + " " +
                std::to_string(int(c.b));
      }
      line += "\n";
      append(out, line);
    }
    return out;
  }

  auto put64 = [&out](double v) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  };
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Point3& p = cloud.points[i];
    put64(p.x);
    put64(p.y);
    put64(p.z);
    if (cloud.has_colors()) {
      const Color8& c = cloud.colors[i];
      out.push_back(c.r);
      out.push_back(c.g);
      out.push_back(c.b);
    }
  }
  return out;
}

PointCloud read_ply_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for '" + path.string() + "'");
  return parse_ply(bytes, path.filename().string());
}

void write_ply_file(const PointCloud& cloud, PlyFormat format,
                    const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = write_ply(cloud, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace lyapoct
