#include "dgs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace dgs {

Mask InconsistencyGrid::dynamic_pixel_mask() const {
    Mask out(inconsistent_pixels.width(), inconsistent_pixels.height(), 0);
    for (int cy = 0; cy < cells_y; ++cy) {
        for (int cx = 0; cx < cells_x; ++cx) {
            if (!cell_dynamic(cx, cy)) continue;
            const int x1 = std::min(out.width(), (cx + 1) * cell_size);
            const int y1 = std::min(out.height(), (cy + 1) * cell_size);
            for (int v = cy * cell_size; v < y1; ++v)
                for (int u = cx * cell_size; u < x1; ++u)
                    out.at(u, v) = inconsistent_pixels.at(u, v);
        }
    }
    return out;
}

Mask InconsistencyGrid::dynamic_cell_mask() const {
    Mask out(inconsistent_pixels.width(), inconsistent_pixels.height(), 0);
    for (int cy = 0; cy < cells_y; ++cy) {
        for (int cx = 0; cx < cells_x; ++cx) {
            if (!cell_dynamic(cx, cy)) continue;
            const int x1 = std::min(out.width(), (cx + 1) * cell_size);
            const int y1 = std::min(out.height(), (cy + 1) * cell_size);
            for (int v = cy * cell_size; v < y1; ++v)
                for (int u = cx * cell_size; u < x1; ++u) out.at(u, v) = 1;
        }
    }
    return out;
}

InconsistencyGrid mark_dynamic_grids(const DepthImage& rendered, const DepthImage& observed,
                                     const Mask& validity, const DynamicsConfig& config) {
    if (!rendered.same_size(observed) || !rendered.same_size(validity))
        throw std::invalid_argument("mark_dynamic_grids: image sizes do not match");
    if (config.t_d <= 0.0 || config.t_p <= 0.0 || config.t_p >= 1.0)
        throw std::invalid_argument("mark_dynamic_grids: thresholds out of range");

    const int w = rendered.width(), h = rendered.height();
    InconsistencyGrid grid;
    grid.cell_size = config.cell_size;
    grid.cells_x = (w + config.cell_size - 1) / config.cell_size;
    grid.cells_y = (h + config.cell_size - 1) / config.cell_size;
    grid.fraction.assign(static_cast<size_t>(grid.cells_x) * grid.cells_y, 0.0);
    grid.dynamic.assign(grid.fraction.size(), 0);
    grid.inconsistent_pixels = Mask(w, h, 0);

    std::vector<int> inconsistent(grid.fraction.size(), 0);
    std::vector<int> total(grid.fraction.size(), 0);
    for (int v = 0; v < h; ++v) {
        for (int u = 0; u < w; ++u) {
            const size_t cell =
                static_cast<size_t>(v / config.cell_size) * grid.cells_x + u / config.cell_size;
            ++total[cell];
            if (!validity.at(u, v)) continue;
            const double diff = rendered.at(u, v) - observed.at(u, v);
            const bool hit = config.absolute_test ? std::abs(diff) > config.t_d : diff > config.t_d;
            if (hit) {
                grid.inconsistent_pixels.at(u, v) = 1;
                ++inconsistent[cell];
            }
        }
    }
    for (size_t c = 0; c < grid.fraction.size(); ++c) {
        grid.fraction[c] = total[c] > 0 ? static_cast<double>(inconsistent[c]) / total[c] : 0.0;
        grid.dynamic[c] = grid.fraction[c] > config.t_p ? 1 : 0;
    }

    // 4-connected components over dynamic cells
    grid.component_of.assign(grid.fraction.size(), -1);
    for (int cy = 0; cy < grid.cells_y; ++cy) {
        for (int cx = 0; cx < grid.cells_x; ++cx) {
            const int start = cy * grid.cells_x + cx;
            if (!grid.dynamic[start] || grid.component_of[start] >= 0) continue;
            InconsistencyGrid::Component comp;
            comp.id = static_cast<int>(grid.components.size());
            std::deque<int> queue{start};
            grid.component_of[start] = comp.id;
            while (!queue.empty()) {
                const int cell = queue.front();
                queue.pop_front();
                comp.cells.push_back(cell);
                const int x = cell % grid.cells_x, y = cell / grid.cells_x;
                const int nbors[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
                for (const auto& nb : nbors) {
                    if (nb[0] < 0 || nb[0] >= grid.cells_x || nb[1] < 0 || nb[1] >= grid.cells_y)
                        continue;
                    const int n = nb[1] * grid.cells_x + nb[0];
                    if (grid.dynamic[n] && grid.component_of[n] < 0) {
                        grid.component_of[n] = comp.id;
                        queue.push_back(n);
                    }
                }
            }
            // centroid over the component's inconsistent pixels
            Vec2 sum = Vec2::Zero();
            size_t count = 0;
            for (int cell : comp.cells) {
                const int x = cell % grid.cells_x, y = cell / grid.cells_x;
                const int x1 = std::min(w, (x + 1) * config.cell_size);
                const int y1 = std::min(h, (y + 1) * config.cell_size);
                for (int v = y * config.cell_size; v < y1; ++v) {
                    for (int u = x * config.cell_size; u < x1; ++u) {
                        if (grid.inconsistent_pixels.at(u, v)) {
                            sum += Vec2(u, v);
                            ++count;
                        }
                    }
                }
            }
            comp.pixel_count = count;
            comp.centroid = count > 0 ? Vec2(sum / static_cast<double>(count)) : Vec2::Zero();
            grid.components.push_back(std::move(comp));
        }
    }
    return grid;
}

std::vector<Vec2> extract_prompts(const InconsistencyGrid& grid) {
    std::vector<Vec2> prompts;
    prompts.reserve(grid.components.size());
    for (const auto& comp : grid.components) prompts.push_back(comp.centroid);
    return prompts;
}

namespace {

std::vector<Vec2> boundary_pixels(const Mask& mask) {
    std::vector<Vec2> out;
    const int w = mask.width(), h = mask.height();
    for (int v = 0; v < h; ++v) {
        for (int u = 0; u < w; ++u) {
            if (!mask.at(u, v)) continue;
            const bool edge = u == 0 || u == w - 1 || v == 0 || v == h - 1 ||
                              !mask.at(u - 1, v) || !mask.at(u + 1, v) || !mask.at(u, v - 1) ||
                              !mask.at(u, v + 1);
            if (edge) out.emplace_back(u, v);
        }
    }
    return out;
}

double median_masked_depth(const Mask& mask, const DepthImage& depth) {
    std::vector<double> vals;
    for (int v = 0; v < mask.height(); ++v)
        for (int u = 0; u < mask.width(); ++u)
            if (mask.at(u, v) && depth.at(u, v) > 0.0) vals.push_back(depth.at(u, v));
    if (vals.empty()) return -1.0;
    auto mid = vals.begin() + vals.size() / 2;
    std::nth_element(vals.begin(), mid, vals.end());
    return *mid;
}

}  // namespace

bool hand_proximity_check(const Mask& object_mask, const Mask& hand_mask,
                          const DepthImage& observed_depth, const HandProximityConfig& config) {
    if (!object_mask.same_size(hand_mask))
        throw std::invalid_argument("hand_proximity_check: mask sizes do not match");
    const auto obj_b = boundary_pixels(object_mask);
    const auto hand_b = boundary_pixels(hand_mask);
    if (obj_b.empty() || hand_b.empty()) return false;

    const double limit2 = config.max_boundary_distance_px * config.max_boundary_distance_px;
    bool close = false;
    for (const auto& p : obj_b) {
        for (const auto& q : hand_b) {
            if ((p - q).squaredNorm() <= limit2) {
                close = true;
                break;
            }
        }
        if (close) break;
    }
    if (!close) return false;

    const double obj_depth = median_masked_depth(object_mask, observed_depth);
    const double hand_depth = median_masked_depth(hand_mask, observed_depth);
    if (obj_depth < 0.0 || hand_depth < 0.0) return false;
    return std::abs(obj_depth - hand_depth) <= config.max_median_depth_gap_m;
}

}  // namespace dgs
