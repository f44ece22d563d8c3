#pragma once

#include "tvpwl/field.hpp"

#include <string>

namespace tvpwl {

/// Reads a grey-scale image. Supported: binary PGM (P5, 8/16-bit), PNG
/// (grey-scale, 8/16-bit) and the lossless raw format below, selected by file
/// extension. 16-bit samples are scaled to [0,255]. Throws std::runtime_error
/// on unsupported formats or corrupt headers.
ScalarField read_image(const std::string& path);

/// Writes a grey-scale image. PNG and PGM are quantised to 8 bit with
/// round-half-away-from-zero and clamped to [0,255] at write time; the raw
/// format stores the field losslessly. Writes go to a temporary file that is
/// renamed into place.
void write_image(const std::string& path, const ScalarField& img);

/// Lossless container for exact round-trips: the 8-byte magic "TVPWLRAW",
/// rows and cols as little-endian uint32, then rows*cols little-endian
/// float64 values in row-major order.
ScalarField read_raw(const std::string& path);
void write_raw(const std::string& path, const ScalarField& img);

ScalarField read_pgm(const std::string& path);
void write_pgm(const std::string& path, const ScalarField& img);

ScalarField read_png(const std::string& path);
void write_png(const std::string& path, const ScalarField& img);

} // namespace tvpwl
