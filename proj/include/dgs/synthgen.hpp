#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgs/camera.hpp"
#include "dgs/map.hpp"
#include "dgs/trajectory_io.hpp"

namespace dgs {

struct CompositePart {
    std::string shape;  // box | cylinder
    Vec3 size = Vec3(0.1, 0.1, 0.1);
    RigidPose offset;  // within the object frame
};

struct ObjectSpec {
    int id = 1;  // instance id >= 1
    std::string shape = "box";  // box | cylinder | composite
    Vec3 size = Vec3(0.12, 0.12, 0.12);  // box extents; cylinder: x = radius, z = height
    std::vector<CompositePart> parts;    // composite only
    int gaussian_count = 400;
    uint64_t texture_seed = 0;
    Vec3 base_color = Vec3(0.7, 0.3, 0.2);
    RigidPose initial_pose;  // placement in the world; baked into canonical centers
    double opacity = 0.95;
};

struct MotionSpec {
    std::string kind = "prismatic";  // prismatic | revolute | free
    Vec3 direction = Vec3(1, 0, 0);  // prismatic, world frame
    double distance = 0.2;           // meters
    Vec3 axis = Vec3(0, 0, 1);       // revolute, world frame
    Vec3 axis_point = Vec3(0, 0, 0); // revolute, in the object's placed frame
    double angle = M_PI / 2;         // radians
    std::vector<Vec3> waypoints;     // free: translation offsets, world frame
};

struct InteractionEvent {
    int object_id = 1;
    int grab_frame = 0;
    int release_frame = 0;
    MotionSpec motion;
};

struct HandSpec {
    double radius_m = 0.035;
    int gaussian_count = 150;
    Vec3 color = Vec3(0.85, 0.62, 0.50);
    Vec3 grip_offset = Vec3(0, -0.1, 0);  // from the object origin, object frame
};

struct CameraKey {
    int frame = 0;
    Vec3 position = Vec3(0, 0, 0);
    Vec3 look_at = Vec3(0, 0, 2);
};

/// Full description of a synthetic recording: room, objects, camera path,
/// scripted grab/move/release events, and sensor model.
struct SceneScript {
    uint64_t seed = 1;
    int frame_count = 60;
    CameraIntrinsics intrinsics{256.0, 256.0, 160.0, 120.0, 320, 240};

    Vec3 room_min = Vec3(-2.0, -1.5, -0.5);
    Vec3 room_max = Vec3(2.0, 1.5, 4.0);
    int room_gaussians = 4000;
    Vec3 room_base_color = Vec3(0.55, 0.55, 0.6);

    std::vector<ObjectSpec> objects;
    std::vector<CameraKey> camera_keys;
    std::vector<InteractionEvent> events;
    HandSpec hand;

    double depth_noise_sigma = 0.002;  // meters
    double depth_hole_prob = 0.0;

    /// Throws std::invalid_argument on overlapping interactions, unknown
    /// object ids, or motions leaving the room.
    void validate() const;
};

SceneScript load_script(const std::string& path);
void save_script(const std::string& path, const SceneScript& script);

/// Scripted object pose (canonical-to-world) at a frame: identity before the
/// grab, frozen at the release value afterwards, linear in time in between.
RigidPose scripted_object_pose(const SceneScript& script, int object_id, int frame);

/// Camera-to-world pose interpolated along the keyed path.
RigidPose scripted_camera_pose(const SceneScript& script, int frame);

struct GroundTruth {
    DecomposedMap map;  // ground-truth decomposition; object centers canonical
    std::vector<GaussianPrimitive> hand;  // in the grabbed object's frame
    Trajectory camera;                    // camera-to-world per frame
    std::map<int, Trajectory> objects;    // canonical-to-world per frame
};

/// Deterministic in the script seed.
GroundTruth build_scene(const SceneScript& script);

/// Render groups for ground-truth frame state, including the hand blob
/// during interactions.
std::vector<RenderGroup> ground_truth_groups(const GroundTruth& gt, const SceneScript& script,
                                             int frame);

/// One observed frame exactly as render_stream would store it (after
/// quantization), including ground-truth layers.
Frame make_frame(const GroundTruth& gt, const SceneScript& script, int frame,
                 const RenderSettings& settings = {});

/// Writes the full dataset directory: manifest, per-frame layers, and
/// ground-truth pose files.
void render_stream(const GroundTruth& gt, const SceneScript& script, const std::string& out_dir,
                   const RenderSettings& settings = {});

}  // namespace dgs
