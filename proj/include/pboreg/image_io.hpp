#pragma once

#include <string>

#include "pboreg/image.hpp"

namespace pboreg {

/// Loads an 8-bit grayscale image; PNG and PGM (P5/P2) are detected by
/// content. Color PNG inputs are converted with Rec. 601 luma weights.
/// Intensities are scaled to [0, 1]. Throws IoError.
GrayImage load_image(const std::string& path);

/// Writes an 8-bit grayscale image; the format is chosen by extension
/// (.png or .pgm). Throws IoError.
void save_image(const GrayImage& img, const std::string& path);

}  // namespace pboreg
