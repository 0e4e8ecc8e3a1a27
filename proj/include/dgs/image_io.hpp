#pragma once

#include <string>

#include "dgs/image.hpp"

namespace dgs {

// Dataset layers are stored as binary netpbm files: 8-bit P6 for color,
// 16-bit big-endian P5 for depth in millimeters, 8-bit P5 for labels and
// masks. All formats are lossless given the quantizations below.

inline uint8_t quantize8(double v) {
    const double c = std::clamp(v, 0.0, 1.0);
    return static_cast<uint8_t>(std::lround(c * 255.0));
}

/// Depth in meters to millimeter ticks; values beyond the 16-bit range clamp.
inline uint16_t quantize_depth_mm(double meters) {
    const double mm = std::clamp(meters * 1000.0, 0.0, 65535.0);
    return static_cast<uint16_t>(std::lround(mm));
}

void write_ppm(const std::string& path, const ColorImage& img);
ColorImage read_ppm(const std::string& path);

void write_pgm16(const std::string& path, const DepthImage& depth_meters);
DepthImage read_pgm16(const std::string& path);

void write_pgm8(const std::string& path, const Image<uint8_t>& img);
Image<uint8_t> read_pgm8(const std::string& path);

}  // namespace dgs
