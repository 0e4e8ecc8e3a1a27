#pragma once

#include "dgs/types.hpp"

namespace dgs {

/// One isotropic splat. Centers live in the canonical frame of the set the
/// Gaussian belongs to (world frame for background, object frame otherwise).
struct GaussianPrimitive {
    Vec3 color = Vec3::Zero();   // RGB in [0,1]
    Vec3 center = Vec3::Zero();  // meters
    double radius = 0.01;        // meters, > 0
    double opacity = 0.5;        // [0,1]
    int instance_id = 0;         // 0 = background

    /// Clamps color and opacity to [0,1] and keeps the radius positive.
    /// Applied after every optimizer step.
    void clamp_parameters() {
        for (int i = 0; i < 3; ++i) color[i] = std::clamp(color[i], 0.0, 1.0);
        opacity = std::clamp(opacity, 0.0, 1.0);
        radius = std::max(radius, 1e-6);
    }
};

}  // namespace dgs
