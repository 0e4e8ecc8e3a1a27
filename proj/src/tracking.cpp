#include "dgs/tracking.hpp"

#include "dgs/adam.hpp"

namespace dgs {

namespace {

void pose_to_params(const RigidPose& pose, double q[4], double t[3]) {
    q[0] = pose.q.w();
    q[1] = pose.q.x();
    q[2] = pose.q.y();
    q[3] = pose.q.z();
    t[0] = pose.t.x();
    t[1] = pose.t.y();
    t[2] = pose.t.z();
}

RigidPose params_to_pose(const double q[4], const double t[3]) {
    RigidPose p;
    p.q = Quat(q[0], q[1], q[2], q[3]);
    p.t = Vec3(t[0], t[1], t[2]);
    p.normalize();
    return p;
}

}  // namespace

TrackResult track_camera(const Frame& frame, const DecomposedMap& map,
                         const std::map<int, RigidPose>& object_poses, const RigidPose& init,
                         const Mask& static_mask, const CameraIntrinsics& K,
                         const TrackConfig& config, const RenderSettings& settings) {
    config.weights.validate();
    const auto groups = map.render_groups(object_poses);

    LossSpec spec;
    spec.mask = static_mask;
    spec.silhouette_validity = config.silhouette_validity;
    spec.color_target = &frame.rgb;
    spec.lambda_p = config.weights.lambda_p;
    spec.depth_target = &frame.depth;
    spec.lambda_d = config.weights.lambda_d;

    RigidPose pose = init.normalized();
    double q[4], t[3];
    pose_to_params(pose, q, t);
    AdamVector adam_q(4), adam_t(3);

    TrackResult best;
    best.pose = pose;
    best.loss = std::numeric_limits<double>::infinity();

    for (int it = 0; it < config.iterations; ++it) {
        RenderGradients g = render_backward(groups, pose, K, spec, settings);
        if (g.loss.pixels < config.min_pixels) {
            if (it == 0) throw TrackingDegenerateError(g.loss.pixels);
            break;
        }
        if (it == 0) best.initial_loss = g.loss.total;
        if (g.loss.total < best.loss) {
            best.loss = g.loss.total;
            best.pose = pose;
        }
        double gq[4] = {g.camera.q[0], g.camera.q[1], g.camera.q[2], g.camera.q[3]};
        double gt[3] = {g.camera.t[0], g.camera.t[1], g.camera.t[2]};
        adam_q.step(std::span<double>(q, 4), std::span<const double>(gq, 4), config.lr_rotation);
        adam_t.step(std::span<double>(t, 3), std::span<const double>(gt, 3),
                    config.lr_translation);
        pose = params_to_pose(q, t);
    }
    // the last step produced a pose the loop never scored
    const double final_loss = compute_loss(render(groups, pose, K, settings), spec).total;
    if (final_loss < best.loss) {
        best.loss = final_loss;
        best.pose = pose;
    }
    return best;
}

TrackResult track_object(const Frame& frame, const DecomposedMap& map, int object_id,
                         const std::map<int, RigidPose>& object_poses, const RigidPose& camera,
                         const RigidPose& init, const Mask& refined_mask,
                         const CameraIntrinsics& K, const TrackConfig& config,
                         const RenderSettings& settings) {
    config.weights.validate();
    map.object(object_id);  // existence check

    TrackResult best;
    best.pose = init.normalized();
    if (refined_mask.empty() || mask_count(refined_mask) == 0) {
        return best;  // nothing to optimize against: carry the pose over
    }

    LabelImage id_target(K.width, K.height, 0);
    for (int v = 0; v < K.height; ++v)
        for (int u = 0; u < K.width; ++u)
            if (refined_mask.at(u, v)) id_target.at(u, v) = object_id;

    LossSpec spec;
    spec.mask = refined_mask;
    spec.silhouette_validity = config.silhouette_validity;
    spec.color_target = &frame.rgb;
    spec.lambda_p = config.weights.lambda_p;
    spec.depth_target = &frame.depth;
    spec.lambda_d = config.weights.lambda_d;
    spec.id_target = &id_target;
    spec.lambda_id = config.weights.lambda_id;

    RigidPose pose = best.pose;
    double q[4], t[3];
    pose_to_params(pose, q, t);
    AdamVector adam_q(4), adam_t(3);
    best.loss = std::numeric_limits<double>::infinity();

    int group_index = -1;
    auto make_groups = [&](const RigidPose& object_pose) {
        std::map<int, RigidPose> poses = object_poses;
        poses[object_id] = object_pose;
        auto groups = map.render_groups(poses);
        for (size_t i = 0; i < groups.size(); ++i) {
            if (groups[i].instance_id == object_id) {
                groups[i].optimize_pose = true;
                group_index = static_cast<int>(i);
            }
        }
        return groups;
    };

    for (int it = 0; it < config.iterations; ++it) {
        const auto groups = make_groups(pose);
        RenderGradients g = render_backward(groups, camera, K, spec, settings);
        if (g.loss.pixels == 0) break;
        if (it == 0) best.initial_loss = g.loss.total;
        if (g.loss.total < best.loss) {
            best.loss = g.loss.total;
            best.pose = pose;
        }
        const PoseGrad& pg = g.group_poses[group_index];
        double gq[4] = {pg.q[0], pg.q[1], pg.q[2], pg.q[3]};
        double gt[3] = {pg.t[0], pg.t[1], pg.t[2]};
        adam_q.step(std::span<double>(q, 4), std::span<const double>(gq, 4), config.lr_rotation);
        adam_t.step(std::span<double>(t, 3), std::span<const double>(gt, 3),
                    config.lr_translation);
        pose = params_to_pose(q, t);
    }
    const auto groups = make_groups(pose);
    const double final_loss = compute_loss(render(groups, camera, K, settings), spec).total;
    if (final_loss < best.loss) {
        best.loss = final_loss;
        best.pose = pose;
    }
    return best;
}

}  // namespace dgs
