#include "egsr/pixmap.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace egsr {

namespace {

/// Next whitespace-delimited header token, skipping '#' comments.
std::string header_token(std::istream& in) {
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      if (!tok.empty()) return tok;
    } else {
      tok.push_back(static_cast<char>(c));
    }
    c = in.get();
  }
  if (tok.empty()) throw Error(ErrorCode::MalformedHeader, "pixmap header ended early");
  return tok;
}

long header_int(std::istream& in, const char* what) {
  const std::string tok = header_token(in);
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::MalformedHeader, std::string("bad ") + what + " '" + tok + "'");
  }
}

}  // namespace

GrayImage read_pixmap(std::istream& in) {
  char magic[2] = {0, 0};
  if (!in.read(magic, 2) || magic[0] != 'P') throw Error(ErrorCode::UnsupportedMagic, "not a portable pixmap");
  const char kind = magic[1];
  if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
    throw Error(ErrorCode::UnsupportedMagic, std::string("unsupported magic P") + kind);
  }
  const bool color = kind == '3' || kind == '6';
  const bool raw = kind == '5' || kind == '6';
  const long width = header_int(in, "width");
  const long height = header_int(in, "height");
  const long maxval = header_int(in, "maxval");
  if (width < 1 || height < 1) throw Error(ErrorCode::MalformedHeader, "non-positive image size");
  if (maxval < 1 || maxval > 65535) throw Error(ErrorCode::MalformedHeader, "maxval outside 1..65535");
  // header_token consumed exactly one whitespace byte after maxval.

  const std::size_t channels = color ? 3 : 1;
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  const double scale = static_cast<double>(maxval);
  auto sample = [&]() -> double {
    long v = 0;
    if (raw) {
      unsigned char b[2];
      const std::streamsize bytes = maxval > 255 ? 2 : 1;
      if (!in.read(reinterpret_cast<char*>(b), bytes)) throw Error(ErrorCode::TruncatedData, "raster ended early");
      v = bytes == 2 ? (static_cast<long>(b[0]) << 8) | b[1] : b[0];
    } else {
      if (!(in >> v)) throw Error(ErrorCode::TruncatedData, "raster ended early");
    }
    if (v < 0 || v > maxval) throw Error(ErrorCode::TruncatedData, "sample exceeds maxval");
    return static_cast<double>(v) / scale;
  };

  std::vector<double> pixels(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (channels == 1) {
      pixels[i] = sample();
    } else {
      const double r = sample();
      const double g = sample();
      const double b = sample();
      pixels[i] = std::clamp(0.299 * r + 0.587 * g + 0.114 * b, 0.0, 1.0);
    }
  }
  return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

GrayImage read_pixmap(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return read_pixmap(in);
}

void write_graymap(std::ostream& out, const GrayImage& img, GraymapEncoding encoding, int maxval) {
  if (maxval < 1 || maxval > 65535) throw Error(ErrorCode::InvalidArgument, "maxval outside 1..65535");
  const bool raw = encoding == GraymapEncoding::Raw;
  out << (raw ? "P5" : "P2") << "\n" << img.width() << " " << img.height() << "\n" << maxval << "\n";
  int column = 0;
  for (double p : img.pixels()) {
    const long v = std::lround(p * maxval);
    if (raw) {
      if (maxval > 255) out.put(static_cast<char>((v >> 8) & 0xff));
      out.put(static_cast<char>(v & 0xff));
    } else {
      out << v << (++column == img.width() ? '\n' : ' ');
      if (column == img.width()) column = 0;
    }
  }
  if (!out) throw Error(ErrorCode::Io, "failed writing graymap");
}

void write_graymap(const std::filesystem::path& path, const GrayImage& img, GraymapEncoding encoding, int maxval) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  write_graymap(out, img, encoding, maxval);
}

}  // namespace egsr
