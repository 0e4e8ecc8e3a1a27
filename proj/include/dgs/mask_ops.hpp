#pragma once

#include <vector>

#include "dgs/image.hpp"

namespace dgs {

struct MaskComponent {
    int id = 0;
    size_t area = 0;
    Vec2 centroid = Vec2::Zero();
};

struct MaskComponents {
    LabelImage labels;  // component id per pixel, -1 outside
    std::vector<MaskComponent> components;  // sorted by area, largest first
};

/// 8-connected components of a binary mask.
MaskComponents connected_components(const Mask& mask);

/// 4-neighborhood morphological erosion.
Mask erode(const Mask& mask, int iterations);

/// 4-neighborhood morphological dilation.
Mask dilate(const Mask& mask, int iterations);

/// Erodes until the area drops to at most fraction * original (at least one
/// iteration when fraction < 1); returns the original mask when it is empty.
Mask erode_to_fraction(const Mask& mask, double fraction);

/// Fills a disk of the given radius; clipped at image borders.
void stamp_disk(Mask& mask, const Vec2& center, double radius, uint8_t value = 1);

}  // namespace dgs
