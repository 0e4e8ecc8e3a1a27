#pragma once

#include <vector>

#include "dgs/image.hpp"

namespace dgs {

/// Per-cell motion evidence from rendered-vs-observed depth differences.
struct InconsistencyGrid {
    int cell_size = 16;
    int cells_x = 0, cells_y = 0;
    std::vector<double> fraction;   // inconsistent-pixel fraction per cell
    std::vector<uint8_t> dynamic;   // cell flags
    Mask inconsistent_pixels;       // per-pixel test results (only in dynamic cells counts as M_i)
    std::vector<int> component_of;  // per cell: component index or -1

    struct Component {
        int id = 0;
        std::vector<int> cells;
        Vec2 centroid = Vec2::Zero();  // over inconsistent pixels, in pixels
        size_t pixel_count = 0;
    };
    std::vector<Component> components;

    double cell_fraction(int cx, int cy) const { return fraction[cy * cells_x + cx]; }
    bool cell_dynamic(int cx, int cy) const { return dynamic[cy * cells_x + cx] != 0; }

    /// Union of inconsistent pixels lying inside dynamic cells.
    Mask dynamic_pixel_mask() const;
    /// Union of all pixels of dynamic cells.
    Mask dynamic_cell_mask() const;
};

struct DynamicsConfig {
    double t_d = 0.3;        // depth difference threshold, meters
    double t_p = 0.5;        // inconsistent-pixel fraction threshold
    int cell_size = 16;      // pixels per grid cell edge
    bool absolute_test = false;  // |diff| > t_d instead of the one-sided test
};

/// Marks grid cells whose inconsistent-pixel fraction exceeds t_p. A pixel is
/// inconsistent iff it is valid and rendered - observed > t_d (one-sided by
/// default). 4-connected components are computed over dynamic cells with
/// centroids over their inconsistent pixels.
InconsistencyGrid mark_dynamic_grids(const DepthImage& rendered, const DepthImage& observed,
                                     const Mask& validity, const DynamicsConfig& config);

/// One prompt point per connected component: the centroid of its
/// inconsistent pixels. Empty for a static frame.
std::vector<Vec2> extract_prompts(const InconsistencyGrid& grid);

struct HandProximityConfig {
    double max_boundary_distance_px = 10.0;
    double max_median_depth_gap_m = 0.15;
};

/// Dual-space adjacency test between an object mask and the hand mask:
/// boundary distance in pixels and median-depth gap in meters. Either mask
/// empty means no interaction.
bool hand_proximity_check(const Mask& object_mask, const Mask& hand_mask,
                          const DepthImage& observed_depth,
                          const HandProximityConfig& config = {});

}  // namespace dgs
