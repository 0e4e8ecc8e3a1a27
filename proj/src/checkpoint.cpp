#include "dgs/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace dgs {

namespace {

constexpr char kMagic[6] = {'D', 'G', 'S', 'M', 'A', 'P'};
constexpr uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& f, const T& v) {
    f.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& f, const std::string& path) {
    T v{};
    f.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!f) throw std::runtime_error("checkpoint: truncated file " + path);
    return v;
}

void put_pose(std::ofstream& f, const RigidPose& p) {
    put(f, p.q.w());
    put(f, p.q.x());
    put(f, p.q.y());
    put(f, p.q.z());
    put(f, p.t.x());
    put(f, p.t.y());
    put(f, p.t.z());
}

RigidPose get_pose(std::ifstream& f, const std::string& path) {
    const double w = get<double>(f, path), x = get<double>(f, path), y = get<double>(f, path),
                 z = get<double>(f, path);
    RigidPose p;
    p.q = Quat(w, x, y, z);
    p.t = Vec3(get<double>(f, path), get<double>(f, path), get<double>(f, path));
    return p;
}

void put_gaussians(std::ofstream& f, const std::vector<GaussianPrimitive>& gs) {
    put(f, static_cast<uint64_t>(gs.size()));
    for (const auto& g : gs) {
        put(f, g.color.x());
        put(f, g.color.y());
        put(f, g.color.z());
        put(f, g.center.x());
        put(f, g.center.y());
        put(f, g.center.z());
        put(f, g.radius);
        put(f, g.opacity);
        put(f, static_cast<int32_t>(g.instance_id));
    }
}

std::vector<GaussianPrimitive> get_gaussians(std::ifstream& f, const std::string& path) {
    const uint64_t n = get<uint64_t>(f, path);
    std::vector<GaussianPrimitive> gs(n);
    for (auto& g : gs) {
        g.color = Vec3(get<double>(f, path), get<double>(f, path), get<double>(f, path));
        g.center = Vec3(get<double>(f, path), get<double>(f, path), get<double>(f, path));
        g.radius = get<double>(f, path);
        g.opacity = get<double>(f, path);
        g.instance_id = get<int32_t>(f, path);
    }
    return gs;
}

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("checkpoint: cannot create " + path);
    f.write(kMagic, sizeof(kMagic));
    put(f, kVersion);

    put_gaussians(f, ckpt.map.background);
    put(f, static_cast<uint32_t>(ckpt.map.objects.size()));
    for (const auto& [id, obj] : ckpt.map.objects) {
        put(f, static_cast<int32_t>(id));
        put(f, static_cast<int32_t>(obj.state));
        put(f, static_cast<int32_t>(obj.created_frame));
        put(f, static_cast<int32_t>(obj.released_frame));
        put(f, static_cast<int32_t>(obj.gt_instance_id));
        put_gaussians(f, obj.gaussians);
        put(f, static_cast<uint64_t>(obj.trajectory.size()));
        for (const auto& [frame, pose] : obj.trajectory) {
            put(f, static_cast<int32_t>(frame));
            put_pose(f, pose);
        }
    }
    put(f, static_cast<uint32_t>(ckpt.keyframes.size()));
    for (const auto& kf : ckpt.keyframes) {
        put(f, static_cast<int32_t>(kf.keyframe_id));
        put(f, static_cast<int32_t>(kf.frame_index));
        put_pose(f, kf.camera_from_world);
    }
    if (!f) throw std::runtime_error("checkpoint: failed writing " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("checkpoint: cannot open " + path);
    char magic[6];
    f.read(magic, sizeof(magic));
    if (!f || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("checkpoint: bad magic in " + path);
    const uint32_t version = get<uint32_t>(f, path);
    if (version != kVersion)
        throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version) +
                                 " in " + path);

    Checkpoint ckpt;
    ckpt.map.background = get_gaussians(f, path);
    const uint32_t n_objects = get<uint32_t>(f, path);
    for (uint32_t i = 0; i < n_objects; ++i) {
        ObjectMap obj;
        obj.id = get<int32_t>(f, path);
        obj.state = static_cast<InteractionState>(get<int32_t>(f, path));
        obj.created_frame = get<int32_t>(f, path);
        obj.released_frame = get<int32_t>(f, path);
        obj.gt_instance_id = get<int32_t>(f, path);
        obj.gaussians = get_gaussians(f, path);
        const uint64_t n_traj = get<uint64_t>(f, path);
        for (uint64_t k = 0; k < n_traj; ++k) {
            const int32_t frame = get<int32_t>(f, path);
            obj.trajectory[frame] = get_pose(f, path);
        }
        ckpt.map.objects[obj.id] = std::move(obj);
    }
    const uint32_t n_kf = get<uint32_t>(f, path);
    for (uint32_t i = 0; i < n_kf; ++i) {
        KeyframeRecord kf;
        kf.keyframe_id = get<int32_t>(f, path);
        kf.frame_index = get<int32_t>(f, path);
        kf.camera_from_world = get_pose(f, path);
        ckpt.keyframes.push_back(kf);
    }
    return ckpt;
}

void export_point_cloud(const std::string& path, const DecomposedMap& map) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("checkpoint: cannot create " + path);
    auto dump = [&](const std::vector<GaussianPrimitive>& gs) {
        for (const auto& g : gs) {
            char buf[256];
            std::snprintf(buf, sizeof(buf), "%.9g %.9g %.9g %.6g %.6g %.6g %.9g %.6g %d\n",
                          g.center.x(), g.center.y(), g.center.z(), g.color.x(), g.color.y(),
                          g.color.z(), g.radius, g.opacity, g.instance_id);
            f << buf;
        }
    };
    dump(map.background);
    for (const auto& [id, obj] : map.objects) dump(obj.gaussians);
    if (!f) throw std::runtime_error("checkpoint: failed writing " + path);
}

}  // namespace dgs
