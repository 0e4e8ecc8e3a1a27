#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "dgs/renderer.hpp"

namespace dgs::testutil {

struct RandomScene {
    std::vector<GaussianPrimitive> background;
    std::vector<GaussianPrimitive> object;  // instance id 1
    RigidPose object_pose;
    RigidPose camera;  // world-to-camera
    CameraIntrinsics K;

    std::vector<RenderGroup> groups(bool optimize_object = false) const {
        std::vector<RenderGroup> g;
        g.push_back({std::span<const GaussianPrimitive>(background), RigidPose{}, 0, false});
        if (!object.empty()) {
            g.push_back({std::span<const GaussianPrimitive>(object), object_pose, 1,
                         optimize_object});
        }
        return g;
    }
};

struct SceneParams {
    int n_background = 60;
    int n_object = 20;
    int width = 64;
    int height = 48;
    double r_min = 0.02;
    double r_max = 0.25;
    // When true, depths are drawn from a 10 mm grid without replacement so
    // small parameter perturbations cannot flip the compositing order.
    bool distinct_depths = false;
};

inline GaussianPrimitive random_gaussian(std::mt19937& rng, int id, double r_min, double r_max) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> ux(-1.2, 1.2), uy(-0.9, 0.9), uz(0.6, 5.0);
    std::uniform_real_distribution<double> ur(r_min, r_max);
    GaussianPrimitive g;
    g.color = Vec3(u01(rng), u01(rng), u01(rng));
    g.center = Vec3(ux(rng), uy(rng), uz(rng));
    g.radius = ur(rng);
    g.opacity = u01(rng);
    g.instance_id = id;
    return g;
}

inline RandomScene random_scene(uint32_t seed, const SceneParams& p) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> n(0.0, 1.0);

    RandomScene s;
    s.K = CameraIntrinsics{0.8 * p.width, 0.8 * p.width, p.width / 2.0, p.height / 2.0, p.width,
                           p.height};
    for (int i = 0; i < p.n_background; ++i)
        s.background.push_back(random_gaussian(rng, 0, p.r_min, p.r_max));
    for (int i = 0; i < p.n_object; ++i) {
        GaussianPrimitive g = random_gaussian(rng, 1, p.r_min, p.r_max);
        g.center = Vec3(0.3 * n(rng), 0.3 * n(rng), 2.0 + 0.3 * n(rng));
        s.object.push_back(g);
    }
    if (p.distinct_depths) {
        std::vector<int> slots(4096);
        std::iota(slots.begin(), slots.end(), 0);
        std::shuffle(slots.begin(), slots.end(), rng);
        size_t k = 0;
        for (auto* vec : {&s.background, &s.object})
            for (auto& g : *vec) g.center.z() = 0.8 + 0.01 * slots[k++];
    }
    s.object_pose.q = Quat(1.0, 0.05 * n(rng), 0.05 * n(rng), 0.05 * n(rng));
    s.object_pose.q.normalize();
    s.object_pose.t = Vec3(0.05 * n(rng), 0.05 * n(rng), 0.05 * n(rng));
    s.camera.q = Quat(1.0, 0.03 * n(rng), 0.03 * n(rng), 0.03 * n(rng));
    s.camera.q.normalize();
    s.camera.t = Vec3(0.1 * n(rng), 0.1 * n(rng), 0.1 * n(rng));
    return s;
}

inline RandomScene random_scene(uint32_t seed, int n_background, int n_object, int width = 64,
                                int height = 48) {
    SceneParams p;
    p.n_background = n_background;
    p.n_object = n_object;
    p.width = width;
    p.height = height;
    return random_scene(seed, p);
}

/// Pixels within margin_px of any footprint cutoff circle. The hard 3-sigma
/// cutoff makes the loss discontinuous there, so a central difference across
/// such a pixel is not a valid derivative oracle; FD tests mask them out.
inline Mask cutoff_boundary_band(const std::vector<RenderGroup>& groups, const RigidPose& camera,
                                 const CameraIntrinsics& K, double margin_px,
                                 double cutoff_sigma = 3.0) {
    Mask band(K.width, K.height, 0);
    const Mat3 Rc = camera.normalized().rotation();
    for (const auto& grp : groups) {
        const Mat3 R = Rc * grp.pose.normalized().rotation();
        const Vec3 t = Rc * grp.pose.t + camera.t;
        for (const auto& g : grp.gaussians) {
            const Vec3 pc = R * g.center + t;
            if (pc.z() <= 0.01) continue;
            const double inv_z = 1.0 / pc.z();
            const double cu = K.fx * pc.x() * inv_z + K.cx;
            const double cv = K.fy * pc.y() * inv_z + K.cy;
            const double cut = cutoff_sigma * K.fx * g.radius * inv_z;
            const double lo2 = std::max(0.0, cut - margin_px) * std::max(0.0, cut - margin_px);
            const double hi = cut + margin_px;
            const int x0 = std::max(0, static_cast<int>(std::floor(cu - hi)));
            const int x1 = std::min(K.width - 1, static_cast<int>(std::ceil(cu + hi)));
            const int y0 = std::max(0, static_cast<int>(std::floor(cv - hi)));
            const int y1 = std::min(K.height - 1, static_cast<int>(std::ceil(cv + hi)));
            for (int v = y0; v <= y1; ++v) {
                for (int u = x0; u <= x1; ++u) {
                    const double dx = u - cu, dy = v - cv;
                    const double rho2 = dx * dx + dy * dy;
                    if (rho2 >= lo2 && rho2 <= hi * hi) band.at(u, v) = 1;
                }
            }
        }
    }
    return band;
}

/// Random masked-L1 targets; random targets keep the L1 kinks off the
/// evaluation points so finite differences are well defined.
struct TargetSet {
    ColorImage color;
    DepthImage depth;
    LabelImage ids;
    Mask mask;
};

inline TargetSet random_targets(uint32_t seed, const CameraIntrinsics& K) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> ud(0.5, 5.0);
    std::uniform_int_distribution<int> uid(0, 1);
    TargetSet t;
    t.color = ColorImage(K.width, K.height);
    t.depth = DepthImage(K.width, K.height);
    t.ids = LabelImage(K.width, K.height);
    t.mask = Mask(K.width, K.height);
    for (size_t i = 0; i < t.color.size(); ++i) {
        t.color[i] = Vec3(u01(rng), u01(rng), u01(rng));
        t.depth[i] = (u01(rng) < 0.1) ? 0.0 : ud(rng);  // some invalid depths
        t.ids[i] = uid(rng);
        t.mask[i] = (u01(rng) < 0.75) ? 1 : 0;
    }
    return t;
}

}  // namespace dgs::testutil
