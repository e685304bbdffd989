#pragma once

#include <string>

#include "dehaze/image.hpp"

namespace dehaze {

// Reads a PNG (8/16-bit, gray/palette/rgb, alpha stripped) or a binary PPM
// (P6, 8/16-bit). Samples are scaled linearly to [0,1].
RgbImage load_image(const std::string& path);

// Writes an 8-bit RGB PNG. Samples are quantized with round-to-nearest so a
// save/load round trip stays within 1/255.
void save_image(const RgbImage& img, const std::string& path);

// Writes a single-channel map as an 8-bit grayscale PNG, value*255 rounded
// half-up. Values outside [0,1] are clamped first.
void save_gray_image(const ScalarMap& map, const std::string& path);

}  // namespace dehaze
