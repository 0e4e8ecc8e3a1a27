#include "dgs/mask_ops.hpp"

#include <algorithm>
#include <deque>

namespace dgs {

MaskComponents connected_components(const Mask& mask) {
    const int w = mask.width(), h = mask.height();
    MaskComponents out;
    out.labels = LabelImage(w, h, -1);
    std::vector<Vec2> sums;
    std::vector<size_t> areas;

    for (int v0 = 0; v0 < h; ++v0) {
        for (int u0 = 0; u0 < w; ++u0) {
            if (!mask.at(u0, v0) || out.labels.at(u0, v0) >= 0) continue;
            const int id = static_cast<int>(areas.size());
            sums.emplace_back(Vec2::Zero());
            areas.push_back(0);
            std::deque<std::pair<int, int>> queue{{u0, v0}};
            out.labels.at(u0, v0) = id;
            while (!queue.empty()) {
                const auto [u, v] = queue.front();
                queue.pop_front();
                sums[id] += Vec2(u, v);
                ++areas[id];
                for (int dv = -1; dv <= 1; ++dv) {
                    for (int du = -1; du <= 1; ++du) {
                        if (du == 0 && dv == 0) continue;
                        const int nu = u + du, nv = v + dv;
                        if (nu < 0 || nu >= w || nv < 0 || nv >= h) continue;
                        if (!mask.at(nu, nv) || out.labels.at(nu, nv) >= 0) continue;
                        out.labels.at(nu, nv) = id;
                        queue.emplace_back(nu, nv);
                    }
                }
            }
        }
    }
    for (size_t i = 0; i < areas.size(); ++i) {
        MaskComponent c;
        c.id = static_cast<int>(i);
        c.area = areas[i];
        c.centroid = sums[i] / static_cast<double>(areas[i]);
        out.components.push_back(c);
    }
    std::sort(out.components.begin(), out.components.end(),
              [](const MaskComponent& a, const MaskComponent& b) {
                  if (a.area != b.area) return a.area > b.area;
                  return a.id < b.id;
              });
    return out;
}

Mask erode(const Mask& mask, int iterations) {
    Mask cur = mask;
    const int w = mask.width(), h = mask.height();
    for (int it = 0; it < iterations; ++it) {
        Mask next(w, h, 0);
        for (int v = 0; v < h; ++v) {
            for (int u = 0; u < w; ++u) {
                if (!cur.at(u, v)) continue;
                const bool interior = u > 0 && u < w - 1 && v > 0 && v < h - 1 &&
                                      cur.at(u - 1, v) && cur.at(u + 1, v) && cur.at(u, v - 1) &&
                                      cur.at(u, v + 1);
                if (interior) next.at(u, v) = 1;
            }
        }
        cur = std::move(next);
    }
    return cur;
}

Mask dilate(const Mask& mask, int iterations) {
    Mask cur = mask;
    const int w = mask.width(), h = mask.height();
    for (int it = 0; it < iterations; ++it) {
        Mask next = cur;
        for (int v = 0; v < h; ++v) {
            for (int u = 0; u < w; ++u) {
                if (!cur.at(u, v)) continue;
                if (u > 0) next.at(u - 1, v) = 1;
                if (u < w - 1) next.at(u + 1, v) = 1;
                if (v > 0) next.at(u, v - 1) = 1;
                if (v < h - 1) next.at(u, v + 1) = 1;
            }
        }
        cur = std::move(next);
    }
    return cur;
}

Mask erode_to_fraction(const Mask& mask, double fraction) {
    const size_t original = mask_count(mask);
    if (original == 0 || fraction >= 1.0) return mask;
    Mask cur = mask;
    for (int it = 0; it < 64; ++it) {
        Mask next = erode(cur, 1);
        const size_t area = mask_count(next);
        if (area == 0) return cur;  // keep the last non-empty stage
        cur = std::move(next);
        if (static_cast<double>(area) <= fraction * original) break;
    }
    return cur;
}

void stamp_disk(Mask& mask, const Vec2& center, double radius, uint8_t value) {
    const int x0 = std::max(0, static_cast<int>(std::floor(center.x() - radius)));
    const int x1 = std::min(mask.width() - 1, static_cast<int>(std::ceil(center.x() + radius)));
    const int y0 = std::max(0, static_cast<int>(std::floor(center.y() - radius)));
    const int y1 = std::min(mask.height() - 1, static_cast<int>(std::ceil(center.y() + radius)));
    for (int v = y0; v <= y1; ++v)
        for (int u = x0; u <= x1; ++u)
            if ((Vec2(u, v) - center).squaredNorm() <= radius * radius) mask.at(u, v) = value;
}

}  // namespace dgs
