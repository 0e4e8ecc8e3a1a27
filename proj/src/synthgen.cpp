#include "dgs/synthgen.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "dgs/image_io.hpp"
#include "dgs/rng.hpp"

namespace dgs {

namespace {

using nlohmann::json;

Vec3 vec3_from(const json& j) { return Vec3(j.at(0), j.at(1), j.at(2)); }
json vec3_to(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

RigidPose pose_from(const json& j) {
    RigidPose p;
    if (j.contains("q")) {
        const auto& q = j.at("q");
        p.q = Quat(q.at(0), q.at(1), q.at(2), q.at(3));
        p.q.normalize();
    }
    if (j.contains("t")) p.t = vec3_from(j.at("t"));
    return p;
}

json pose_to(const RigidPose& p) {
    return json{{"q", {p.q.w(), p.q.x(), p.q.y(), p.q.z()}}, {"t", vec3_to(p.t)}};
}

// ---- surface sampling ----------------------------------------------------

struct Face {
    Vec3 origin;  // corner
    Vec3 eu, ev;  // edge vectors
    double area() const { return eu.cross(ev).norm(); }
};

std::vector<Face> box_faces(const Vec3& size) {
    const Vec3 h = size / 2.0;
    std::vector<Face> f;
    // +x / -x
    f.push_back({Vec3(h.x(), -h.y(), -h.z()), Vec3(0, size.y(), 0), Vec3(0, 0, size.z())});
    f.push_back({Vec3(-h.x(), -h.y(), -h.z()), Vec3(0, size.y(), 0), Vec3(0, 0, size.z())});
    // +y / -y
    f.push_back({Vec3(-h.x(), h.y(), -h.z()), Vec3(size.x(), 0, 0), Vec3(0, 0, size.z())});
    f.push_back({Vec3(-h.x(), -h.y(), -h.z()), Vec3(size.x(), 0, 0), Vec3(0, 0, size.z())});
    // +z / -z
    f.push_back({Vec3(-h.x(), -h.y(), h.z()), Vec3(size.x(), 0, 0), Vec3(0, size.y(), 0)});
    f.push_back({Vec3(-h.x(), -h.y(), -h.z()), Vec3(size.x(), 0, 0), Vec3(0, size.y(), 0)});
    return f;
}

Vec3 sample_faces(const std::vector<Face>& faces, Rng& rng, double total_area) {
    double pick = rng.uniform() * total_area;
    for (const auto& f : faces) {
        const double a = f.area();
        if (pick <= a || &f == &faces.back()) {
            return f.origin + f.eu * rng.uniform() + f.ev * rng.uniform();
        }
        pick -= a;
    }
    return faces.back().origin;
}

Vec3 sample_cylinder(double radius, double height, Rng& rng) {
    const double lateral = 2.0 * M_PI * radius * height;
    const double cap = M_PI * radius * radius;
    const double pick = rng.uniform() * (lateral + 2.0 * cap);
    if (pick < lateral) {
        const double phi = rng.uniform(0.0, 2.0 * M_PI);
        const double z = rng.uniform(-height / 2.0, height / 2.0);
        return Vec3(radius * std::cos(phi), radius * std::sin(phi), z);
    }
    const double z = pick < lateral + cap ? height / 2.0 : -height / 2.0;
    const double r = radius * std::sqrt(rng.uniform());
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    return Vec3(r * std::cos(phi), r * std::sin(phi), z);
}

double shape_area(const std::string& shape, const Vec3& size) {
    if (shape == "cylinder") {
        const double r = size.x(), h = size.z();
        return 2.0 * M_PI * r * h + 2.0 * M_PI * r * r;
    }
    return 2.0 * (size.x() * size.y() + size.y() * size.z() + size.x() * size.z());
}

Vec3 jitter_color(const Vec3& base, Rng& rng, double sigma) {
    Vec3 c = base + Vec3(rng.normal(), rng.normal(), rng.normal()) * sigma;
    for (int i = 0; i < 3; ++i) c[i] = std::clamp(c[i], 0.02, 0.98);
    return c;
}

std::vector<GaussianPrimitive> sample_object(const ObjectSpec& spec, uint64_t seed) {
    Rng rng(derive_seed(seed, 0x0B7EC7, static_cast<uint64_t>(spec.id) + spec.texture_seed));

    struct Part {
        std::string shape;
        Vec3 size;
        RigidPose offset;
        double area;
    };
    std::vector<Part> parts;
    if (spec.shape == "composite") {
        for (const auto& p : spec.parts)
            parts.push_back({p.shape, p.size, p.offset, shape_area(p.shape, p.size)});
    } else {
        parts.push_back({spec.shape, spec.size, RigidPose{}, shape_area(spec.shape, spec.size)});
    }
    double total_area = 0.0;
    for (const auto& p : parts) total_area += p.area;
    const double radius = 1.1 * std::sqrt(total_area / std::max(1, spec.gaussian_count));

    std::vector<GaussianPrimitive> out;
    out.reserve(spec.gaussian_count);
    for (int i = 0; i < spec.gaussian_count; ++i) {
        double pick = rng.uniform() * total_area;
        const Part* part = &parts.back();
        for (const auto& p : parts) {
            if (pick <= p.area) {
                part = &p;
                break;
            }
            pick -= p.area;
        }
        Vec3 local;
        if (part->shape == "cylinder") {
            local = sample_cylinder(part->size.x(), part->size.z(), rng);
        } else {
            const auto faces = box_faces(part->size);
            double fa = 0.0;
            for (const auto& f : faces) fa += f.area();
            local = sample_faces(faces, rng, fa);
        }
        GaussianPrimitive g;
        g.center = spec.initial_pose.apply(part->offset.apply(local));
        g.color = jitter_color(spec.base_color, rng, 0.10);
        g.radius = radius;
        g.opacity = spec.opacity;
        g.instance_id = spec.id;
        out.push_back(g);
    }
    return out;
}

std::vector<GaussianPrimitive> sample_room(const SceneScript& s) {
    Rng rng(derive_seed(s.seed, 0x500F));
    const Vec3 size = s.room_max - s.room_min;
    const Vec3 center = (s.room_max + s.room_min) / 2.0;
    auto faces = box_faces(size);
    double area = 0.0;
    for (const auto& f : faces) area += f.area();
    const double radius = 1.1 * std::sqrt(area / std::max(1, s.room_gaussians));

    std::vector<GaussianPrimitive> out;
    out.reserve(s.room_gaussians);
    for (int i = 0; i < s.room_gaussians; ++i) {
        GaussianPrimitive g;
        g.center = center + sample_faces(faces, rng, area);
        // per-wall tint plus per-splat texture
        g.color = jitter_color(s.room_base_color, rng, 0.08);
        g.radius = radius;
        g.opacity = 0.95;
        g.instance_id = 0;
        out.push_back(g);
    }
    return out;
}

std::vector<GaussianPrimitive> sample_hand(const SceneScript& s) {
    Rng rng(derive_seed(s.seed, 0x4A4D));
    std::vector<GaussianPrimitive> out;
    out.reserve(s.hand.gaussian_count);
    const double area = 4.0 * M_PI * s.hand.radius_m * s.hand.radius_m;
    const double radius = 1.2 * std::sqrt(area / std::max(1, s.hand.gaussian_count));
    for (int i = 0; i < s.hand.gaussian_count; ++i) {
        Vec3 dir(rng.normal(), rng.normal(), rng.normal());
        if (dir.norm() < 1e-9) dir = Vec3(0, 0, 1);
        dir.normalize();
        GaussianPrimitive g;
        g.center = dir * s.hand.radius_m;
        g.color = jitter_color(s.hand.color, rng, 0.04);
        g.radius = radius;
        g.opacity = 0.95;
        g.instance_id = kHandInstanceId;
        out.push_back(g);
    }
    return out;
}

// ---- scripted motion -----------------------------------------------------

RigidPose motion_delta(const MotionSpec& m, const RigidPose& frame_of_point, double s) {
    RigidPose delta;
    if (m.kind == "prismatic") {
        delta.t = m.direction.normalized() * (m.distance * s);
    } else if (m.kind == "revolute") {
        const Vec3 p = frame_of_point.apply(m.axis_point);
        delta.q = Quat(Eigen::AngleAxisd(m.angle * s, m.axis.normalized()));
        delta.t = p - delta.q * p;
    } else {  // free: piecewise-linear waypoint path
        std::vector<Vec3> pts;
        pts.emplace_back(Vec3::Zero());
        for (const auto& w : m.waypoints) pts.push_back(w);
        const double pos = s * (pts.size() - 1);
        const size_t seg = std::min(pts.size() - 2, static_cast<size_t>(pos));
        const double frac = pos - seg;
        delta.t = pts[seg] * (1.0 - frac) + pts[seg + 1] * frac;
    }
    return delta;
}

RigidPose look_at_pose(const Vec3& position, const Vec3& target) {
    Vec3 forward = target - position;
    if (forward.norm() < 1e-9) forward = Vec3(0, 0, 1);
    forward.normalize();
    Vec3 right = Vec3(0, 1, 0).cross(forward);  // world +y is down
    if (right.norm() < 1e-6) right = Vec3(1, 0, 0);
    right.normalize();
    const Vec3 down = forward.cross(right);
    Mat3 R;
    R.col(0) = right;
    R.col(1) = down;
    R.col(2) = forward;
    RigidPose p;
    p.q = Quat(R);
    p.q.normalize();
    p.t = position;
    return p;  // camera-to-world
}

}  // namespace

void SceneScript::validate() const {
    intrinsics.validate();
    if (frame_count < 1) throw std::invalid_argument("script: frame_count must be >= 1");
    if (camera_keys.empty()) throw std::invalid_argument("script: camera path needs >= 1 key");
    for (size_t i = 1; i < camera_keys.size(); ++i)
        if (camera_keys[i].frame <= camera_keys[i - 1].frame)
            throw std::invalid_argument("script: camera key frames must be ascending");

    std::vector<int> ids;
    for (const auto& o : objects) {
        if (o.id < 1 || o.id >= kHandInstanceId)
            throw std::invalid_argument("script: object ids must be in [1, 250)");
        if (std::find(ids.begin(), ids.end(), o.id) != ids.end())
            throw std::invalid_argument("script: duplicate object id " + std::to_string(o.id));
        ids.push_back(o.id);
        if (o.shape == "composite" && o.parts.empty())
            throw std::invalid_argument("script: composite object without parts");
    }

    std::vector<std::pair<int, int>> intervals;
    for (const auto& e : events) {
        if (std::find(ids.begin(), ids.end(), e.object_id) == ids.end())
            throw std::invalid_argument("script: event references unknown object " +
                                        std::to_string(e.object_id));
        if (e.grab_frame < 0 || e.release_frame >= frame_count || e.grab_frame >= e.release_frame)
            throw std::invalid_argument("script: bad event interval");
        if (e.motion.kind != "prismatic" && e.motion.kind != "revolute" && e.motion.kind != "free")
            throw std::invalid_argument("script: unknown motion kind " + e.motion.kind);
        if (e.motion.kind == "free" && e.motion.waypoints.empty())
            throw std::invalid_argument("script: free motion needs waypoints");
        intervals.emplace_back(e.grab_frame, e.release_frame);
    }
    std::sort(intervals.begin(), intervals.end());
    for (size_t i = 1; i < intervals.size(); ++i)
        if (intervals[i].first <= intervals[i - 1].second)
            throw std::invalid_argument("script: interaction intervals overlap");

    // object centers must stay inside the room throughout their motions
    for (const auto& o : objects) {
        const double margin = std::max({o.size.x(), o.size.y(), o.size.z()}) / 2.0;
        for (int f = 0; f < frame_count; ++f) {
            const Vec3 c = scripted_object_pose(*this, o.id, f).apply(o.initial_pose.t);
            for (int k = 0; k < 3; ++k) {
                if (c[k] < room_min[k] + margin || c[k] > room_max[k] - margin)
                    throw std::invalid_argument("script: object " + std::to_string(o.id) +
                                                " leaves the room at frame " + std::to_string(f));
            }
        }
    }
}

RigidPose scripted_object_pose(const SceneScript& script, int object_id, int frame) {
    // accumulate finished events, then the active one
    std::vector<const InteractionEvent*> history;
    for (const auto& e : script.events)
        if (e.object_id == object_id && e.grab_frame <= frame) history.push_back(&e);
    std::sort(history.begin(), history.end(),
              [](const InteractionEvent* a, const InteractionEvent* b) {
                  return a->grab_frame < b->grab_frame;
              });

    const ObjectSpec* spec = nullptr;
    for (const auto& o : script.objects)
        if (o.id == object_id) spec = &o;
    if (!spec) throw std::invalid_argument("script: unknown object id " + std::to_string(object_id));

    RigidPose pose;  // canonical-to-world, identity before first grab
    for (const InteractionEvent* e : history) {
        const double s =
            std::clamp(static_cast<double>(frame - e->grab_frame) /
                           static_cast<double>(e->release_frame - e->grab_frame),
                       0.0, 1.0);
        RigidPose frame_of_point = compose(pose, spec->initial_pose);
        pose = compose(motion_delta(e->motion, frame_of_point, s), pose);
    }
    return pose;
}

RigidPose scripted_camera_pose(const SceneScript& script, int frame) {
    const auto& keys = script.camera_keys;
    if (frame <= keys.front().frame) return look_at_pose(keys.front().position, keys.front().look_at);
    if (frame >= keys.back().frame) return look_at_pose(keys.back().position, keys.back().look_at);
    size_t hi = 1;
    while (keys[hi].frame < frame) ++hi;
    const auto& a = keys[hi - 1];
    const auto& b = keys[hi];
    const double s = static_cast<double>(frame - a.frame) / (b.frame - a.frame);
    const RigidPose pa = look_at_pose(a.position, a.look_at);
    const RigidPose pb = look_at_pose(b.position, b.look_at);
    RigidPose out;
    out.q = pa.q.slerp(s, pb.q);
    out.q.normalize();
    out.t = pa.t * (1.0 - s) + pb.t * s;
    return out;
}

GroundTruth build_scene(const SceneScript& script) {
    script.validate();
    GroundTruth gt;
    gt.map.background = sample_room(script);
    for (const auto& spec : script.objects) {
        ObjectMap obj;
        obj.id = spec.id;
        obj.gt_instance_id = spec.id;
        obj.gaussians = sample_object(spec, script.seed);
        gt.map.objects[spec.id] = std::move(obj);
    }
    gt.hand = sample_hand(script);
    for (int f = 0; f < script.frame_count; ++f) {
        gt.camera[f] = scripted_camera_pose(script, f);
        for (const auto& spec : script.objects)
            gt.objects[spec.id][f] = scripted_object_pose(script, spec.id, f);
    }
    // mirror trajectories into the ground-truth map for checkpoint exports
    for (auto& [id, obj] : gt.map.objects) obj.trajectory = gt.objects[id];
    return gt;
}

std::vector<RenderGroup> ground_truth_groups(const GroundTruth& gt, const SceneScript& script,
                                             int frame) {
    std::vector<RenderGroup> groups;
    groups.push_back(
        {std::span<const GaussianPrimitive>(gt.map.background), RigidPose{}, 0, false});
    for (const auto& [id, obj] : gt.map.objects) {
        groups.push_back({std::span<const GaussianPrimitive>(obj.gaussians),
                          gt.objects.at(id).at(frame), id, false});
    }
    for (const auto& e : script.events) {
        if (frame >= e.grab_frame && frame <= e.release_frame) {
            const ObjectSpec* spec = nullptr;
            for (const auto& o : script.objects)
                if (o.id == e.object_id) spec = &o;
            RigidPose grip;
            grip.t = spec->initial_pose.apply(script.hand.grip_offset);
            const RigidPose hand_pose = compose(gt.objects.at(e.object_id).at(frame), grip);
            groups.push_back({std::span<const GaussianPrimitive>(gt.hand), hand_pose,
                              kHandInstanceId, false});
            break;
        }
    }
    return groups;
}

Frame make_frame(const GroundTruth& gt, const SceneScript& script, int frame,
                 const RenderSettings& settings) {
    const CameraIntrinsics& K = script.intrinsics;
    const RigidPose cam_c2w = gt.camera.at(frame);
    const auto groups = ground_truth_groups(gt, script, frame);
    const RenderOutput out = render(groups, cam_c2w.inverse(), K, settings);

    Frame f;
    f.index = frame;
    f.rgb = ColorImage(K.width, K.height);
    f.depth = DepthImage(K.width, K.height, 0.0);
    f.gt_labels = LabelImage(K.width, K.height, 0);
    f.hand_mask = Mask(K.width, K.height, 0);
    f.gt_camera = cam_c2w;
    for (const auto& [id, traj] : gt.objects) f.gt_object_poses[id] = traj.at(frame);

    Rng noise(derive_seed(script.seed, 0xD417, static_cast<uint64_t>(frame)));
    for (int v = 0; v < K.height; ++v) {
        for (int u = 0; u < K.width; ++u) {
            // color quantized exactly like the stored file
            const Vec3& c = out.color.at(u, v);
            f.rgb.at(u, v) =
                Vec3(quantize8(c.x()) / 255.0, quantize8(c.y()) / 255.0, quantize8(c.z()) / 255.0);

            const double sil = out.silhouette.at(u, v);
            if (sil > 0.5) {
                // winner channel; silhouette-normalized depth as the sensor value
                int win = 0;
                double best = -1.0;
                for (size_t k = 0; k < out.id_channels.size(); ++k) {
                    const double wk = out.id_channels[k].at(u, v);
                    if (wk > best) {
                        best = wk;
                        win = static_cast<int>(k);
                    }
                }
                const int label = out.channel_ids[win];
                f.gt_labels.at(u, v) = label;
                if (label == kHandInstanceId) f.hand_mask.at(u, v) = 1;

                double depth = out.depth.at(u, v) / sil;
                if (script.depth_noise_sigma > 0.0) depth += noise.normal() * script.depth_noise_sigma;
                if (script.depth_hole_prob > 0.0 && noise.uniform() < script.depth_hole_prob)
                    depth = 0.0;
                f.depth.at(u, v) = quantize_depth_mm(std::max(0.0, depth)) / 1000.0;
            }
        }
    }
    return f;
}

void render_stream(const GroundTruth& gt, const SceneScript& script, const std::string& out_dir,
                   const RenderSettings& settings) {
    namespace fs = std::filesystem;
    std::error_code ec;
    for (const char* sub : {"", "/color", "/depth", "/labels", "/hand"}) {
        fs::create_directories(out_dir + sub, ec);
        if (ec) throw std::runtime_error("render_stream: cannot create " + out_dir + sub);
    }

    json manifest;
    manifest["width"] = script.intrinsics.width;
    manifest["height"] = script.intrinsics.height;
    manifest["fx"] = script.intrinsics.fx;
    manifest["fy"] = script.intrinsics.fy;
    manifest["cx"] = script.intrinsics.cx;
    manifest["cy"] = script.intrinsics.cy;
    manifest["frame_count"] = script.frame_count;
    manifest["layers"] = {"color", "depth", "labels", "hand"};
    manifest["depth_unit_mm"] = 1;
    manifest["hand_instance_id"] = kHandInstanceId;
    manifest["seed"] = script.seed;
    manifest["depth_noise_sigma"] = script.depth_noise_sigma;
    manifest["depth_hole_prob"] = script.depth_hole_prob;
    std::vector<int> ids;
    for (const auto& o : script.objects) ids.push_back(o.id);
    manifest["object_ids"] = ids;
    {
        std::ofstream mf(out_dir + "/dataset.json");
        mf << manifest.dump(2) << "\n";
        if (!mf) throw std::runtime_error("render_stream: cannot write manifest in " + out_dir);
    }
    save_script(out_dir + "/script.json", script);

    char name[64];
    for (int frame = 0; frame < script.frame_count; ++frame) {
        const Frame f = make_frame(gt, script, frame, settings);
        std::snprintf(name, sizeof(name), "/%05d", frame);
        write_ppm(out_dir + "/color" + name + ".ppm", f.rgb);
        write_pgm16(out_dir + "/depth" + name + ".pgm", f.depth);
        Image<uint8_t> labels8(f.gt_labels.width(), f.gt_labels.height(), 0);
        for (size_t i = 0; i < labels8.size(); ++i)
            labels8[i] = static_cast<uint8_t>(std::clamp(f.gt_labels[i], 0, 255));
        write_pgm8(out_dir + "/labels" + name + ".pgm", labels8);
        Mask hand255 = f.hand_mask;
        for (size_t i = 0; i < hand255.size(); ++i) hand255[i] = hand255[i] ? 255 : 0;
        write_pgm8(out_dir + "/hand" + name + ".pgm", hand255);
    }

    write_trajectory(out_dir + "/gt_camera.txt", gt.camera);
    for (const auto& [id, traj] : gt.objects)
        write_trajectory(out_dir + "/gt_object_" + std::to_string(id) + ".txt", traj);
}

// ---- script (de)serialization ---------------------------------------------

SceneScript load_script(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("script: cannot open " + path);
    json j;
    f >> j;

    SceneScript s;
    s.seed = j.value("seed", s.seed);
    s.frame_count = j.value("frame_count", s.frame_count);
    if (j.contains("intrinsics")) {
        const auto& k = j.at("intrinsics");
        s.intrinsics = CameraIntrinsics{k.at("fx"), k.at("fy"), k.at("cx"),
                                        k.at("cy"), k.at("width"), k.at("height")};
    }
    if (j.contains("room")) {
        const auto& r = j.at("room");
        if (r.contains("min")) s.room_min = vec3_from(r.at("min"));
        if (r.contains("max")) s.room_max = vec3_from(r.at("max"));
        s.room_gaussians = r.value("gaussians", s.room_gaussians);
        if (r.contains("base_color")) s.room_base_color = vec3_from(r.at("base_color"));
    }
    for (const auto& jo : j.value("objects", json::array())) {
        ObjectSpec o;
        o.id = jo.at("id");
        o.shape = jo.value("shape", o.shape);
        if (jo.contains("size")) o.size = vec3_from(jo.at("size"));
        o.gaussian_count = jo.value("gaussians", o.gaussian_count);
        o.texture_seed = jo.value("texture_seed", o.texture_seed);
        if (jo.contains("color")) o.base_color = vec3_from(jo.at("color"));
        if (jo.contains("pose")) o.initial_pose = pose_from(jo.at("pose"));
        o.opacity = jo.value("opacity", o.opacity);
        for (const auto& jp : jo.value("parts", json::array())) {
            CompositePart p;
            p.shape = jp.value("shape", p.shape);
            if (jp.contains("size")) p.size = vec3_from(jp.at("size"));
            if (jp.contains("offset")) p.offset = pose_from(jp.at("offset"));
            o.parts.push_back(p);
        }
        s.objects.push_back(o);
    }
    for (const auto& jk : j.value("camera_keys", json::array())) {
        CameraKey k;
        k.frame = jk.at("frame");
        k.position = vec3_from(jk.at("position"));
        k.look_at = vec3_from(jk.at("look_at"));
        s.camera_keys.push_back(k);
    }
    for (const auto& je : j.value("events", json::array())) {
        InteractionEvent e;
        e.object_id = je.at("object_id");
        e.grab_frame = je.at("grab_frame");
        e.release_frame = je.at("release_frame");
        const auto& m = je.at("motion");
        e.motion.kind = m.at("kind");
        if (m.contains("direction")) e.motion.direction = vec3_from(m.at("direction"));
        e.motion.distance = m.value("distance", e.motion.distance);
        if (m.contains("axis")) e.motion.axis = vec3_from(m.at("axis"));
        if (m.contains("axis_point")) e.motion.axis_point = vec3_from(m.at("axis_point"));
        e.motion.angle = m.value("angle", e.motion.angle);
        for (const auto& w : m.value("waypoints", json::array()))
            e.motion.waypoints.push_back(vec3_from(w));
        s.events.push_back(e);
    }
    if (j.contains("hand")) {
        const auto& h = j.at("hand");
        s.hand.radius_m = h.value("radius_m", s.hand.radius_m);
        s.hand.gaussian_count = h.value("gaussians", s.hand.gaussian_count);
        if (h.contains("color")) s.hand.color = vec3_from(h.at("color"));
        if (h.contains("grip_offset")) s.hand.grip_offset = vec3_from(h.at("grip_offset"));
    }
    s.depth_noise_sigma = j.value("depth_noise_sigma", s.depth_noise_sigma);
    s.depth_hole_prob = j.value("depth_hole_prob", s.depth_hole_prob);
    s.validate();
    return s;
}

void save_script(const std::string& path, const SceneScript& s) {
    json j;
    j["seed"] = s.seed;
    j["frame_count"] = s.frame_count;
    j["intrinsics"] = {{"fx", s.intrinsics.fx}, {"fy", s.intrinsics.fy},
                       {"cx", s.intrinsics.cx}, {"cy", s.intrinsics.cy},
                       {"width", s.intrinsics.width}, {"height", s.intrinsics.height}};
    j["room"] = {{"min", vec3_to(s.room_min)},
                 {"max", vec3_to(s.room_max)},
                 {"gaussians", s.room_gaussians},
                 {"base_color", vec3_to(s.room_base_color)}};
    j["objects"] = json::array();
    for (const auto& o : s.objects) {
        json jo = {{"id", o.id},         {"shape", o.shape},
                   {"size", vec3_to(o.size)}, {"gaussians", o.gaussian_count},
                   {"texture_seed", o.texture_seed}, {"color", vec3_to(o.base_color)},
                   {"pose", pose_to(o.initial_pose)}, {"opacity", o.opacity}};
        if (!o.parts.empty()) {
            jo["parts"] = json::array();
            for (const auto& p : o.parts)
                jo["parts"].push_back({{"shape", p.shape},
                                       {"size", vec3_to(p.size)},
                                       {"offset", pose_to(p.offset)}});
        }
        j["objects"].push_back(jo);
    }
    j["camera_keys"] = json::array();
    for (const auto& k : s.camera_keys)
        j["camera_keys"].push_back(
            {{"frame", k.frame}, {"position", vec3_to(k.position)}, {"look_at", vec3_to(k.look_at)}});
    j["events"] = json::array();
    for (const auto& e : s.events) {
        json m = {{"kind", e.motion.kind}};
        if (e.motion.kind == "prismatic") {
            m["direction"] = vec3_to(e.motion.direction);
            m["distance"] = e.motion.distance;
        } else if (e.motion.kind == "revolute") {
            m["axis"] = vec3_to(e.motion.axis);
            m["axis_point"] = vec3_to(e.motion.axis_point);
            m["angle"] = e.motion.angle;
        } else {
            m["waypoints"] = json::array();
            for (const auto& w : e.motion.waypoints) m["waypoints"].push_back(vec3_to(w));
        }
        j["events"].push_back({{"object_id", e.object_id},
                               {"grab_frame", e.grab_frame},
                               {"release_frame", e.release_frame},
                               {"motion", m}});
    }
    j["hand"] = {{"radius_m", s.hand.radius_m},
                 {"gaussians", s.hand.gaussian_count},
                 {"color", vec3_to(s.hand.color)},
                 {"grip_offset", vec3_to(s.hand.grip_offset)}};
    j["depth_noise_sigma"] = s.depth_noise_sigma;
    j["depth_hole_prob"] = s.depth_hole_prob;

    std::ofstream f(path);
    if (!f) throw std::runtime_error("script: cannot create " + path);
    f << j.dump(2) << "\n";
    if (!f) throw std::runtime_error("script: failed writing " + path);
}

}  // namespace dgs
