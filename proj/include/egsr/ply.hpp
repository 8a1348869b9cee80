#pragma once

#include <filesystem>
#include <iosfwd>

#include "egsr/geometry.hpp"

namespace egsr {

enum class PlyFormat { Ascii, BinaryLittleEndian };
enum class PlyPrecision { Float32, Float64 };

/// Reads the x, y, z properties of the vertex element. Other properties and
/// elements are skipped. ASCII and binary little-endian bodies are accepted.
PointCloud3 read_ply(std::istream& in);
PointCloud3 read_ply(const std::filesystem::path& path);

/// ASCII output uses 17 significant digits (9 for float32) so values
/// round-trip exactly.
void write_ply(std::ostream& out, const PointCloud3& cloud, PlyFormat format = PlyFormat::BinaryLittleEndian,
               PlyPrecision precision = PlyPrecision::Float64);
void write_ply(const std::filesystem::path& path, const PointCloud3& cloud,
               PlyFormat format = PlyFormat::BinaryLittleEndian, PlyPrecision precision = PlyPrecision::Float64);

}  // namespace egsr
