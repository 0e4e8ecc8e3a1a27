#include "dgs/map.hpp"

#include <algorithm>

#include "dgs/camera.hpp"

namespace dgs {

int KeyframeBuffer::insert(const DecomposedMap& map, Frame frame,
                           const RigidPose& camera_from_world, std::map<int, Mask> refined_masks,
                           const CameraIntrinsics& K, const RenderSettings& settings) {
    Keyframe kf;
    kf.id = static_cast<int>(keyframes_.size());
    kf.frame = std::move(frame);
    kf.camera_from_world = camera_from_world;
    kf.refined_masks = std::move(refined_masks);
    for (const auto& [id, obj] : map.objects) {
        kf.complete[id] = is_fully_visible(obj.gaussians, obj.pose_at(kf.frame.index),
                                           camera_from_world, K, settings);
    }
    keyframes_.push_back(std::move(kf));
    return keyframes_.back().id;
}

std::vector<GaussianPrimitive> densify(const Frame& frame, const DecomposedMap& map,
                                       const RigidPose& camera_from_world,
                                       const std::map<int, RigidPose>& object_poses,
                                       const CameraIntrinsics& K, const DensifyConfig& config,
                                       const std::map<int, Mask>& active_object_masks,
                                       const Mask& exclusion, const RenderSettings& settings) {
    std::vector<GaussianPrimitive> fresh;
    const bool map_empty = map.total_gaussians() == 0;

    RenderOutput out;
    double median_err = 0.0;
    if (!map_empty) {
        out = render(map.render_groups(object_poses), camera_from_world, K, settings);
        std::vector<double> errs;
        errs.reserve(out.depth.size() / 4);
        for (int v = 0; v < K.height; ++v) {
            for (int u = 0; u < K.width; ++u) {
                if (frame.depth.at(u, v) <= 0.0) continue;
                if (out.silhouette.at(u, v) < config.silhouette_threshold) continue;
                errs.push_back(std::abs(out.depth.at(u, v) - frame.depth.at(u, v)));
            }
        }
        if (!errs.empty()) {
            auto mid = errs.begin() + errs.size() / 2;
            std::nth_element(errs.begin(), mid, errs.end());
            median_err = *mid;
        }
    }

    const RigidPose cam_to_world = camera_from_world.inverse();
    std::map<int, RigidPose> inv_poses;
    for (const auto& [id, pose] : object_poses) inv_poses[id] = pose.inverse();

    for (int v = 0; v < K.height; v += config.stride) {
        for (int u = 0; u < K.width; u += config.stride) {
            const double d = frame.depth.at(u, v);
            if (d <= 0.0) continue;
            if (!exclusion.empty() && exclusion.at(u, v)) continue;

            bool trigger = map_empty;
            if (!map_empty) {
                const double sil = out.silhouette.at(u, v);
                if (sil < config.silhouette_threshold) {
                    trigger = true;  // unobserved
                } else if (median_err > 0.0 &&
                           std::abs(out.depth.at(u, v) - d) >
                               config.depth_error_factor * median_err) {
                    trigger = true;  // under-reconstructed
                }
            }
            if (!trigger) continue;

            GaussianPrimitive g;
            g.color = frame.rgb.at(u, v);
            g.radius = d / K.fx;  // one-pixel footprint
            g.opacity = config.initial_opacity;
            const Vec3 world = cam_to_world.apply(backproject(u, v, d, K));

            g.instance_id = 0;
            for (const auto& [id, mask] : active_object_masks) {
                if (!mask.empty() && mask.at(u, v)) {
                    g.instance_id = id;
                    break;
                }
            }
            if (g.instance_id == 0) {
                g.center = world;
            } else {
                auto it = inv_poses.find(g.instance_id);
                if (it == inv_poses.end())
                    throw std::invalid_argument("densify: no pose for object id " +
                                                std::to_string(g.instance_id));
                g.center = it->second.apply(world);  // warp back to canonical frame
            }
            fresh.push_back(g);
        }
    }
    return fresh;
}

void add_gaussians(DecomposedMap& map, const std::vector<GaussianPrimitive>& gaussians) {
    for (const auto& g : gaussians) {
        if (g.instance_id == 0) {
            map.background.push_back(g);
        } else {
            map.object(g.instance_id).gaussians.push_back(g);
        }
    }
}

}  // namespace dgs
