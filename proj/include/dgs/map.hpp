#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "dgs/frame.hpp"
#include "dgs/gaussian.hpp"
#include "dgs/renderer.hpp"

namespace dgs {

/// Instance id reserved for the rendered hand blob in synthetic streams.
inline constexpr int kHandInstanceId = 250;

enum class InteractionState { inactive, active, released };

struct ObjectMap {
    int id = 0;
    std::vector<GaussianPrimitive> gaussians;
    std::map<int, RigidPose> trajectory;  // frame -> canonical-to-world
    InteractionState state = InteractionState::inactive;
    int created_frame = -1;
    int released_frame = -1;
    int gt_instance_id = -1;  // oracle binding, recorded for evaluation

    /// Pose at a frame; identity before creation, latest known pose after
    /// the last stored entry (frozen outside interaction periods).
    RigidPose pose_at(int frame) const {
        if (trajectory.empty()) return RigidPose::identity();
        auto it = trajectory.upper_bound(frame);
        if (it == trajectory.begin()) return RigidPose::identity();
        return std::prev(it)->second;
    }
};

/// Background plus per-object Gaussian sets with their pose trajectories.
struct DecomposedMap {
    std::vector<GaussianPrimitive> background;
    std::map<int, ObjectMap> objects;

    size_t total_gaussians() const {
        size_t n = background.size();
        for (const auto& [id, o] : objects) n += o.gaussians.size();
        return n;
    }

    ObjectMap& object(int id) {
        auto it = objects.find(id);
        if (it == objects.end())
            throw std::invalid_argument("map: unknown object id " + std::to_string(id));
        return it->second;
    }
    const ObjectMap& object(int id) const {
        auto it = objects.find(id);
        if (it == objects.end())
            throw std::invalid_argument("map: unknown object id " + std::to_string(id));
        return it->second;
    }

    /// Render groups with object poses taken from the trajectories at the
    /// given frame. Spans reference map storage; do not mutate while in use.
    std::vector<RenderGroup> render_groups_at(int frame) const {
        std::vector<RenderGroup> groups;
        groups.push_back({std::span<const GaussianPrimitive>(background), RigidPose{}, 0, false});
        for (const auto& [id, o] : objects) {
            groups.push_back({std::span<const GaussianPrimitive>(o.gaussians), o.pose_at(frame),
                              id, false});
        }
        return groups;
    }

    /// Render groups with explicit object poses; every object must have one.
    std::vector<RenderGroup> render_groups(const std::map<int, RigidPose>& object_poses) const {
        std::vector<RenderGroup> groups;
        groups.push_back({std::span<const GaussianPrimitive>(background), RigidPose{}, 0, false});
        for (const auto& [id, o] : objects) {
            auto it = object_poses.find(id);
            if (it == object_poses.end())
                throw std::invalid_argument("render: missing pose for object id " +
                                            std::to_string(id));
            groups.push_back(
                {std::span<const GaussianPrimitive>(o.gaussians), it->second, id, false});
        }
        return groups;
    }
};

struct Keyframe {
    int id = -1;  // keyframe index in insertion order
    Frame frame;
    RigidPose camera_from_world;  // estimate at insertion, refined by mapping
    std::map<int, Mask> refined_masks;  // object id -> M_r
    std::map<int, bool> complete;       // object id -> complete-observation flag
};

class KeyframeBuffer {
public:
    /// Appends a keyframe; complete-observation flags are computed for every
    /// object currently in the map via the visibility check.
    int insert(const DecomposedMap& map, Frame frame, const RigidPose& camera_from_world,
               std::map<int, Mask> refined_masks, const CameraIntrinsics& K,
               const RenderSettings& settings = {});

    std::vector<Keyframe>& all() { return keyframes_; }
    const std::vector<Keyframe>& all() const { return keyframes_; }
    size_t size() const { return keyframes_.size(); }
    bool empty() const { return keyframes_.empty(); }
    Keyframe& operator[](size_t i) { return keyframes_[i]; }
    const Keyframe& operator[](size_t i) const { return keyframes_[i]; }

private:
    std::vector<Keyframe> keyframes_;
};

struct DensifyConfig {
    int stride = 2;                  // pixel subsampling in each axis
    double silhouette_threshold = 0.5;
    double depth_error_factor = 50.0;  // times the median depth error
    double initial_opacity = 0.5;
};

/// New Gaussians for unobserved or under-reconstructed pixels of a tracked
/// frame. Pixels inside an active object's refined mask are assigned to that
/// object with their centers warped into its canonical frame; pixels of the
/// exclusion mask (hand, unexplained motion) are skipped entirely.
std::vector<GaussianPrimitive> densify(const Frame& frame, const DecomposedMap& map,
                                       const RigidPose& camera_from_world,
                                       const std::map<int, RigidPose>& object_poses,
                                       const CameraIntrinsics& K, const DensifyConfig& config,
                                       const std::map<int, Mask>& active_object_masks = {},
                                       const Mask& exclusion = {},
                                       const RenderSettings& settings = {});

/// Appends densified Gaussians to their sets.
void add_gaussians(DecomposedMap& map, const std::vector<GaussianPrimitive>& gaussians);

}  // namespace dgs
