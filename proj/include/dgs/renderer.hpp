#pragma once

#include <span>
#include <vector>

#include "dgs/camera.hpp"
#include "dgs/gaussian.hpp"
#include "dgs/image.hpp"
#include "dgs/pose.hpp"

namespace dgs {

/// One rigidly moving set of Gaussians: the background or a single object.
/// `pose` maps the set's canonical frame to the world (identity for the
/// background). Group instance ids must be unique within a render call.
struct RenderGroup {
    std::span<const GaussianPrimitive> gaussians;
    RigidPose pose;
    int instance_id = 0;
    bool optimize_pose = false;
};

struct RenderSettings {
    double near_plane = 0.01;        // meters; splats closer than this are culled
    double cutoff_sigma = 3.0;       // hard footprint cutoff at cutoff_sigma * r_2d
    double transmittance_min = 1e-4; // early-out once accumulated transmittance drops below
    int tile_size = 32;              // pixels per tile edge in the fast path
    int threads = 0;                 // 0 = hardware concurrency
};

struct RenderOutput {
    ColorImage color;
    DepthImage depth;
    Image<double> silhouette;
    Image<double> id_scalar;
    std::vector<int> channel_ids;            // instance id per channel, ascending
    std::vector<Image<double>> id_channels;  // soft one-hot per instance

    int channel_index(int instance_id) const {
        for (size_t i = 0; i < channel_ids.size(); ++i)
            if (channel_ids[i] == instance_id) return static_cast<int>(i);
        return -1;
    }
};

/// Masked-L1 targets for the global objective. Pointed-to buffers must
/// outlive the call. A negative silhouette_validity disables the rendered
/// validity test; otherwise the effective mask is mask AND (S > threshold),
/// treated as a constant during differentiation.
struct LossSpec {
    Mask mask;
    double silhouette_validity = -1.0;

    const ColorImage* color_target = nullptr;
    double lambda_p = 0.0;

    const DepthImage* depth_target = nullptr;  // pixels with 0 depth are skipped
    double lambda_d = 0.0;

    const LabelImage* id_target = nullptr;  // instance id per pixel
    double lambda_id = 0.0;
};

struct LossBreakdown {
    double total = 0.0;
    double color = 0.0;
    double depth = 0.0;
    double id = 0.0;
    size_t pixels = 0;        // pixels in the effective mask
    size_t pixels_depth = 0;  // of those, pixels with valid observed depth
};

struct GaussGrad {
    Vec3 color = Vec3::Zero();
    Vec3 center = Vec3::Zero();
    double radius = 0.0;
    double opacity = 0.0;
};

struct PoseGrad {
    Vec4 q = Vec4::Zero();  // (w, x, y, z)
    Vec3 t = Vec3::Zero();
};

struct RenderGradients {
    LossBreakdown loss;
    std::vector<GaussGrad> gaussians;  // concatenated in group declaration order
    PoseGrad camera;
    std::vector<PoseGrad> group_poses;  // per group; nonzero only when optimize_pose
};

/// Tiled forward rasterization of Eqs-style alpha compositing.
/// Throws std::invalid_argument on an empty map or duplicate group ids.
RenderOutput render(std::span<const RenderGroup> groups, const RigidPose& camera_from_world,
                    const CameraIntrinsics& K, const RenderSettings& settings = {});

/// Naive per-pixel full-sort oracle with the identical contract; used to
/// cross-check the tiled path.
RenderOutput render_reference(std::span<const RenderGroup> groups,
                              const RigidPose& camera_from_world, const CameraIntrinsics& K,
                              const RenderSettings& settings = {});

/// Evaluates the weighted masked-L1 objective on a finished render.
LossBreakdown compute_loss(const RenderOutput& out, const LossSpec& spec);

/// Analytic gradients of the masked loss with respect to every Gaussian
/// parameter, the camera pose, and each optimizable group pose.
/// When forward_out is non-null it receives the internal forward render.
RenderGradients render_backward(std::span<const RenderGroup> groups,
                                const RigidPose& camera_from_world, const CameraIntrinsics& K,
                                const LossSpec& spec, const RenderSettings& settings = {},
                                RenderOutput* forward_out = nullptr);

/// True iff every Gaussian of the set projects in front of the near plane
/// with its whole cutoff disk inside the image rectangle.
bool is_fully_visible(std::span<const GaussianPrimitive> gaussians, const RigidPose& object_pose,
                      const RigidPose& camera_from_world, const CameraIntrinsics& K,
                      const RenderSettings& settings = {});

}  // namespace dgs
