#pragma once

#include <iosfwd>
#include <string>

#include "gcpoly/contour.hpp"

namespace gcpoly::cli {

/// Reads a binary (P5) or ASCII (P2) PGM; any value > 0 is foreground.
RasterMask read_pgm(std::istream& in);
RasterMask read_pgm_file(const std::string& path);

/// Writes a P5 image with foreground 255, background 0.
void write_pgm(std::ostream& out, const RasterMask& mask);
void write_pgm_file(const std::string& path, const RasterMask& mask);

}  // namespace gcpoly::cli
