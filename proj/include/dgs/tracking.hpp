#pragma once

#include <map>
#include <stdexcept>

#include "dgs/frame.hpp"
#include "dgs/map.hpp"
#include "dgs/renderer.hpp"

namespace dgs {

enum class LossRole { camera_track, object_track, map };

/// Weights of the photometric / depth / instance terms of the global
/// objective for one optimization role.
struct LossConfig {
    double lambda_p = 0.5;
    double lambda_d = 1.0;
    double lambda_id = 0.0;
    LossRole role = LossRole::camera_track;

    void validate() const {
        if (!(std::isfinite(lambda_p) && std::isfinite(lambda_d) && std::isfinite(lambda_id)))
            throw std::invalid_argument("loss config: weights must be finite");
        if (lambda_p < 0 || lambda_d < 0 || lambda_id < 0)
            throw std::invalid_argument("loss config: weights must be nonnegative");
        if (role == LossRole::camera_track && lambda_id != 0.0)
            throw std::invalid_argument("loss config: camera tracking uses lambda_id = 0");
    }
};

struct TrackConfig {
    int iterations = 40;
    double lr_rotation = 2e-3;
    double lr_translation = 4e-3;
    double silhouette_validity = 0.99;  // M_S threshold
    size_t min_pixels = 100;
    LossConfig weights;
};

/// Raised when too few pixels survive the masking rules; the pipeline falls
/// back to the constant-velocity pose.
class TrackingDegenerateError : public std::runtime_error {
public:
    explicit TrackingDegenerateError(size_t pixels)
        : std::runtime_error("tracking degenerate: only " + std::to_string(pixels) +
                             " masked pixels") {}
};

struct TrackResult {
    RigidPose pose;
    double loss = 0.0;
    double initial_loss = 0.0;
};

/// Camera pose by gradient descent on the masked objective. static_mask
/// carries the frame-fixed exclusions (hand, interacted-object, rendered
/// object); the silhouette validity mask is recomputed every iteration from
/// the current render. Returns the best-loss iterate.
TrackResult track_camera(const Frame& frame, const DecomposedMap& map,
                         const std::map<int, RigidPose>& object_poses, const RigidPose& init,
                         const Mask& static_mask, const CameraIntrinsics& K,
                         const TrackConfig& config, const RenderSettings& settings = {});

/// 6-DoF pose of one active object with the camera fixed; pixels restricted
/// to the silhouette-valid part of the object's refined mask. An empty mask
/// carries the init pose over unchanged.
TrackResult track_object(const Frame& frame, const DecomposedMap& map, int object_id,
                         const std::map<int, RigidPose>& object_poses, const RigidPose& camera,
                         const RigidPose& init, const Mask& refined_mask,
                         const CameraIntrinsics& K, const TrackConfig& config,
                         const RenderSettings& settings = {});

}  // namespace dgs
