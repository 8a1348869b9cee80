#pragma once

#include <filesystem>
#include <iosfwd>

#include "egsr/image.hpp"

namespace egsr {

/// Reads P2/P5 graymaps and P3/P6 pixmaps. Color is reduced to luminance
/// with weights 0.299, 0.587, 0.114; samples are divided by maxval.
GrayImage read_pixmap(std::istream& in);
GrayImage read_pixmap(const std::filesystem::path& path);

enum class GraymapEncoding { Plain /* P2 */, Raw /* P5 */ };

/// Writes a graymap, quantizing each intensity to round(value * maxval).
void write_graymap(std::ostream& out, const GrayImage& img, GraymapEncoding encoding = GraymapEncoding::Raw,
                   int maxval = 255);
void write_graymap(const std::filesystem::path& path, const GrayImage& img,
                   GraymapEncoding encoding = GraymapEncoding::Raw, int maxval = 255);

}  // namespace egsr
