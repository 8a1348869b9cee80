#include "egsr/ply.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace egsr {

static_assert(std::endian::native == std::endian::little, "binary PLY codec assumes a little-endian host");

namespace {

enum class ScalarType { Int8, UInt8, Int16, UInt16, Int32, UInt32, Float32, Float64 };

std::optional<ScalarType> parse_type(const std::string& s) {
  if (s == "char" || s == "int8") return ScalarType::Int8;
  if (s == "uchar" || s == "uint8") return ScalarType::UInt8;
  if (s == "short" || s == "int16") return ScalarType::Int16;
  if (s == "ushort" || s == "uint16") return ScalarType::UInt16;
  if (s == "int" || s == "int32") return ScalarType::Int32;
  if (s == "uint" || s == "uint32") return ScalarType::UInt32;
  if (s == "float" || s == "float32") return ScalarType::Float32;
  if (s == "double" || s == "float64") return ScalarType::Float64;
  return std::nullopt;
}

std::size_t type_size(ScalarType t) {
  switch (t) {
    case ScalarType::Int8:
    case ScalarType::UInt8: return 1;
    case ScalarType::Int16:
    case ScalarType::UInt16: return 2;
    case ScalarType::Int32:
    case ScalarType::UInt32:
    case ScalarType::Float32: return 4;
    case ScalarType::Float64: return 8;
  }
  return 0;
}

struct Property {
  std::string name;
  ScalarType type = ScalarType::Float32;
  bool is_list = false;
  ScalarType count_type = ScalarType::UInt8;
};

struct Element {
  std::string name;
  std::size_t count = 0;
  std::vector<Property> properties;
};

struct Header {
  PlyFormat format = PlyFormat::Ascii;
  std::vector<Element> elements;
};

Header parse_header(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || (line != "ply" && line != "ply\r")) {
    throw Error(ErrorCode::MalformedHeader, "missing 'ply' magic line");
  }
  Header h;
  bool have_format = false;
  while (true) {
    if (!std::getline(in, line)) throw Error(ErrorCode::MalformedHeader, "header ended before end_header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw.empty() || kw == "comment" || kw == "obj_info") continue;
    if (kw == "end_header") break;
    if (kw == "format") {
      std::string fmt;
      std::string version;
      ls >> fmt >> version;
      if (fmt == "ascii") {
        h.format = PlyFormat::Ascii;
      } else if (fmt == "binary_little_endian") {
        h.format = PlyFormat::BinaryLittleEndian;
      } else if (fmt == "binary_big_endian") {
        throw Error(ErrorCode::UnsupportedFormat, "big-endian PLY is not supported");
      } else {
        throw Error(ErrorCode::MalformedHeader, "unknown format '" + fmt + "'");
      }
      have_format = true;
    } else if (kw == "element") {
      Element e;
      long long count = -1;
      ls >> e.name >> count;
      if (e.name.empty() || count < 0) throw Error(ErrorCode::MalformedHeader, "bad element line: " + line);
      e.count = static_cast<std::size_t>(count);
      h.elements.push_back(std::move(e));
    } else if (kw == "property") {
      if (h.elements.empty()) throw Error(ErrorCode::MalformedHeader, "property before any element");
      Property p;
      std::string type;
      ls >> type;
      if (type == "list") {
        std::string count_type;
        std::string item_type;
        ls >> count_type >> item_type >> p.name;
        auto ct = parse_type(count_type);
        auto it = parse_type(item_type);
        if (!ct || !it) throw Error(ErrorCode::MalformedHeader, "bad list property: " + line);
        p.is_list = true;
        p.count_type = *ct;
        p.type = *it;
      } else {
        auto t = parse_type(type);
        if (!t) throw Error(ErrorCode::MalformedHeader, "unknown property type '" + type + "'");
        p.type = *t;
        ls >> p.name;
      }
      if (p.name.empty()) throw Error(ErrorCode::MalformedHeader, "property without a name");
      h.elements.back().properties.push_back(std::move(p));
    } else {
      throw Error(ErrorCode::MalformedHeader, "unexpected header keyword '" + kw + "'");
    }
  }
  if (!have_format) throw Error(ErrorCode::MalformedHeader, "missing format line");
  return h;
}

double decode(ScalarType t, const unsigned char* p) {
  switch (t) {
    case ScalarType::Int8: { std::int8_t v; std::memcpy(&v, p, 1); return v; }
    case ScalarType::UInt8: { std::uint8_t v; std::memcpy(&v, p, 1); return v; }
    case ScalarType::Int16: { std::int16_t v; std::memcpy(&v, p, 2); return v; }
    case ScalarType::UInt16: { std::uint16_t v; std::memcpy(&v, p, 2); return v; }
    case ScalarType::Int32: { std::int32_t v; std::memcpy(&v, p, 4); return v; }
    case ScalarType::UInt32: { std::uint32_t v; std::memcpy(&v, p, 4); return v; }
    case ScalarType::Float32: { float v; std::memcpy(&v, p, 4); return v; }
    case ScalarType::Float64: { double v; std::memcpy(&v, p, 8); return v; }
  }
  return 0.0;
}

double read_binary_scalar(std::istream& in, ScalarType t) {
  std::array<unsigned char, 8> buf{};
  if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(type_size(t)))) {
    throw Error(ErrorCode::TruncatedData, "binary body ended early");
  }
  return decode(t, buf.data());
}

double parse_ascii_number(const std::string& tok) {
  double v = 0.0;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc() || ptr != end) throw Error(ErrorCode::TruncatedData, "bad numeric token '" + tok + "'");
  return v;
}

class AsciiTokens {
 public:
  explicit AsciiTokens(std::istream& in) : in_(in) {}
  double next() {
    std::string tok;
    if (!(in_ >> tok)) throw Error(ErrorCode::TruncatedData, "ASCII body ended early");
    return parse_ascii_number(tok);
  }

 private:
  std::istream& in_;
};

}  // namespace

PointCloud3 read_ply(std::istream& in) {
  const Header h = parse_header(in);
  const Element* vertex = nullptr;
  for (const auto& e : h.elements) {
    if (e.name == "vertex") vertex = &e;
  }
  if (!vertex) throw Error(ErrorCode::MalformedHeader, "no vertex element");
  int ix = -1;
  int iy = -1;
  int iz = -1;
  for (std::size_t i = 0; i < vertex->properties.size(); ++i) {
    const auto& p = vertex->properties[i];
    if (p.is_list) continue;
    if (p.name == "x") ix = static_cast<int>(i);
    if (p.name == "y") iy = static_cast<int>(i);
    if (p.name == "z") iz = static_cast<int>(i);
  }
  if (ix < 0 || iy < 0 || iz < 0) throw Error(ErrorCode::MalformedHeader, "vertex element lacks x, y or z");

  AsciiTokens tokens(in);
  auto scalar = [&](ScalarType t) {
    if (h.format != PlyFormat::Ascii) return read_binary_scalar(in, t);
    // A float property holds float values even when written as text.
    const double v = tokens.next();
    return t == ScalarType::Float32 ? static_cast<double>(static_cast<float>(v)) : v;
  };

  std::vector<Point3> pts;
  for (const auto& e : h.elements) {
    const bool is_vertex = &e == vertex;
    if (is_vertex) pts.reserve(e.count);
    std::vector<double> values(e.properties.size());
    for (std::size_t r = 0; r < e.count; ++r) {
      for (std::size_t i = 0; i < e.properties.size(); ++i) {
        const auto& p = e.properties[i];
        if (p.is_list) {
          const double n = scalar(p.count_type);
          if (n < 0) throw Error(ErrorCode::TruncatedData, "negative list length");
          for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) scalar(p.type);
        } else {
          values[i] = scalar(p.type);
        }
      }
      if (is_vertex) pts.push_back({values[ix], values[iy], values[iz]});
    }
    if (is_vertex) break;
  }
  if (pts.empty()) throw Error(ErrorCode::EmptyCloud, "PLY has no vertices");
  return PointCloud3(std::move(pts));
}

PointCloud3 read_ply(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return read_ply(in);
}

void write_ply(std::ostream& out, const PointCloud3& cloud, PlyFormat format, PlyPrecision precision) {
  const bool f32 = precision == PlyPrecision::Float32;
  out << "ply\n"
      << "format " << (format == PlyFormat::Ascii ? "ascii" : "binary_little_endian") << " 1.0\n"
      << "element vertex " << cloud.size() << "\n";
  for (const char* axis : {"x", "y", "z"}) out << "property " << (f32 ? "float" : "double") << " " << axis << "\n";
  out << "end_header\n";
  if (format == PlyFormat::Ascii) {
    out << std::setprecision(f32 ? 9 : 17);
    for (const auto& p : cloud) {
      if (f32) {
        out << static_cast<float>(p.x) << ' ' << static_cast<float>(p.y) << ' ' << static_cast<float>(p.z) << '\n';
      } else {
        out << p.x << ' ' << p.y << ' ' << p.z << '\n';
      }
    }
  } else {
    for (const auto& p : cloud) {
      for (double c : {p.x, p.y, p.z}) {
        if (f32) {
          const float f = static_cast<float>(c);
          out.write(reinterpret_cast<const char*>(&f), sizeof f);
        } else {
          out.write(reinterpret_cast<const char*>(&c), sizeof c);
        }
      }
    }
  }
  if (!out) throw Error(ErrorCode::Io, "failed writing PLY");
}

void write_ply(const std::filesystem::path& path, const PointCloud3& cloud, PlyFormat format, PlyPrecision precision) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  write_ply(out, cloud, format, precision);
}

}  // namespace egsr
