#include "dgs/renderer.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "dgs/parallel.hpp"

namespace dgs {

namespace {

struct ProjectedSplat {
    double u = 0.0, v = 0.0;  // footprint center, pixels
    double r2d = 0.0;         // footprint radius, pixels
    double cutoff2 = 0.0;     // squared cutoff distance
    double cam_x = 0.0, cam_y = 0.0, depth = 0.0;
    Vec3 color = Vec3::Zero();
    double opacity = 0.0;
    double radius = 0.0;  // meters, for the r_2d chain rule
    int channel = 0;
    uint32_t group = 0;
    uint32_t index = 0;  // concatenated gaussian index, group-major
};

struct GroupXf {
    Quat cam_q;   // normalized camera rotation
    double cam_norm = 1.0;
    Vec3 cam_t;
    Quat obj_q;   // normalized group rotation
    double obj_norm = 1.0;
    Vec3 obj_t;
    Mat3 cam_R;   // rotation matrices of the normalized quats
    Mat3 obj_R;
};

struct Prepared {
    std::vector<ProjectedSplat> splats;    // culled, in index order
    std::vector<GroupXf> xf;               // one per group
    std::vector<size_t> group_offset;      // concatenated index base per group
    std::vector<int> channel_ids;          // ascending distinct instance ids
    std::vector<int> group_channel;        // channel per group
    size_t total_gaussians = 0;
};

Mat3 skew(const Vec3& v) {
    Mat3 m;
    m << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
    return m;
}

/// d(R(q)v)/dq at a unit quaternion q, columns ordered (w, x, y, z).
Eigen::Matrix<double, 3, 4> rotation_jacobian(const Quat& q, const Vec3& v) {
    const double w = q.w();
    const Vec3 u(q.x(), q.y(), q.z());
    Eigen::Matrix<double, 3, 4> J;
    J.col(0) = 2.0 * (w * v + u.cross(v));
    J.block<3, 3>(0, 1) =
        2.0 * (u.dot(v) * Mat3::Identity() + u * v.transpose() - v * u.transpose() - w * skew(v));
    return J;
}

/// Gradient of R(q/|q|)v through the normalization, given the gradient at
/// the normalized quaternion.
Vec4 project_quat_grad(const Quat& q_normalized, double norm, const Vec4& g_hat) {
    Vec4 qh(q_normalized.w(), q_normalized.x(), q_normalized.y(), q_normalized.z());
    return (g_hat - qh * qh.dot(g_hat)) / norm;
}

Prepared prepare(std::span<const RenderGroup> groups, const RigidPose& camera_from_world,
                 const CameraIntrinsics& K, const RenderSettings& settings) {
    K.validate();
    Prepared prep;

    size_t total = 0;
    std::set<int> ids;
    for (const auto& g : groups) {
        total += g.gaussians.size();
        if (!ids.insert(g.instance_id).second) {
            throw std::invalid_argument("render: duplicate group instance id " +
                                        std::to_string(g.instance_id));
        }
    }
    if (total == 0) throw std::invalid_argument("render: map is empty");
    prep.total_gaussians = total;

    prep.channel_ids.assign(ids.begin(), ids.end());
    prep.group_channel.resize(groups.size());
    for (size_t g = 0; g < groups.size(); ++g) {
        const auto it =
            std::lower_bound(prep.channel_ids.begin(), prep.channel_ids.end(), groups[g].instance_id);
        prep.group_channel[g] = static_cast<int>(it - prep.channel_ids.begin());
    }

    const double cam_norm = camera_from_world.q.norm();
    if (cam_norm <= 0.0) throw std::invalid_argument("render: zero camera quaternion");
    Quat cam_q = camera_from_world.q;
    cam_q.normalize();
    const Mat3 cam_R = cam_q.toRotationMatrix();

    prep.xf.resize(groups.size());
    prep.group_offset.resize(groups.size());
    prep.splats.reserve(total);

    size_t offset = 0;
    for (size_t g = 0; g < groups.size(); ++g) {
        prep.group_offset[g] = offset;
        GroupXf& xf = prep.xf[g];
        xf.cam_q = cam_q;
        xf.cam_norm = cam_norm;
        xf.cam_t = camera_from_world.t;
        xf.cam_R = cam_R;
        xf.obj_norm = groups[g].pose.q.norm();
        if (xf.obj_norm <= 0.0) throw std::invalid_argument("render: zero group quaternion");
        xf.obj_q = groups[g].pose.q;
        xf.obj_q.normalize();
        xf.obj_t = groups[g].pose.t;
        xf.obj_R = xf.obj_q.toRotationMatrix();

        const Mat3 R = cam_R * xf.obj_R;
        const Vec3 t = cam_R * xf.obj_t + camera_from_world.t;
        const int channel = prep.group_channel[g];

        for (size_t i = 0; i < groups[g].gaussians.size(); ++i) {
            const GaussianPrimitive& gp = groups[g].gaussians[i];
            const Vec3 pc = R * gp.center + t;
            if (pc.z() <= settings.near_plane) {
                ++offset;
                continue;
            }
            ProjectedSplat s;
            s.depth = pc.z();
            s.cam_x = pc.x();
            s.cam_y = pc.y();
            const double inv_z = 1.0 / pc.z();
            s.u = K.fx * pc.x() * inv_z + K.cx;
            s.v = K.fy * pc.y() * inv_z + K.cy;
            s.r2d = K.fx * gp.radius * inv_z;
            const double cutoff = settings.cutoff_sigma * s.r2d;
            s.cutoff2 = cutoff * cutoff;
            s.color = gp.color;
            s.opacity = gp.opacity;
            s.radius = gp.radius;
            s.channel = channel;
            s.group = static_cast<uint32_t>(g);
            s.index = static_cast<uint32_t>(offset);
            prep.splats.push_back(s);
            ++offset;
        }
    }
    return prep;
}

void sort_front_to_back(const std::vector<ProjectedSplat>& splats, std::vector<uint32_t>& order) {
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        if (splats[a].depth != splats[b].depth) return splats[a].depth < splats[b].depth;
        return splats[a].index < splats[b].index;  // stable tie-break
    });
}

/// Visits the contributing splats of one pixel front to back.
/// vis(splat, list_slot, f, e, T) is called for every splat inside its cutoff
/// disk, including zero-opacity ones (their opacity gradient is still defined).
template <typename Visitor>
void walk_pixel(double px, double py, const std::vector<ProjectedSplat>& splats,
                const uint32_t* list, size_t n, double t_min, Visitor&& vis) {
    double T = 1.0;
    for (size_t i = 0; i < n; ++i) {
        const ProjectedSplat& s = splats[list[i]];
        const double dx = px - s.u;
        const double dy = py - s.v;
        const double rho2 = dx * dx + dy * dy;
        if (rho2 > s.cutoff2) continue;
        const double e = std::exp(-rho2 / (2.0 * s.r2d * s.r2d));
        const double f = s.opacity * e;
        vis(s, i, f, e, T);
        T *= (1.0 - f);
        if (T < t_min) break;
    }
}

RenderOutput make_output(const CameraIntrinsics& K, const std::vector<int>& channel_ids) {
    RenderOutput out;
    out.color = ColorImage(K.width, K.height, Vec3::Zero());
    out.depth = DepthImage(K.width, K.height, 0.0);
    out.silhouette = Image<double>(K.width, K.height, 0.0);
    out.id_scalar = Image<double>(K.width, K.height, 0.0);
    out.channel_ids = channel_ids;
    out.id_channels.assign(channel_ids.size(), Image<double>(K.width, K.height, 0.0));
    return out;
}

void composite_span(const Prepared& prep, const std::vector<int>& channel_ids,
                    const CameraIntrinsics& K, const RenderSettings& settings, int x0, int y0,
                    int x1, int y1, const uint32_t* list, size_t n, RenderOutput& out) {
    for (int v = y0; v < y1; ++v) {
        for (int u = x0; u < x1; ++u) {
            Vec3 c = Vec3::Zero();
            double d = 0.0, sil = 0.0, idsc = 0.0;
            walk_pixel(u, v, prep.splats, list, n, settings.transmittance_min,
                       [&](const ProjectedSplat& s, size_t, double f, double, double T) {
                           const double w = f * T;
                           c += s.color * w;
                           d += s.depth * w;
                           sil += w;
                           idsc += static_cast<double>(channel_ids[s.channel]) * w;
                           out.id_channels[s.channel].at(u, v) += w;
                       });
            out.color.at(u, v) = c;
            out.depth.at(u, v) = d;
            out.silhouette.at(u, v) = sil;
            out.id_scalar.at(u, v) = idsc;
        }
    }
}

struct TileGrid {
    int nx = 0, ny = 0, tile = 0;
    std::vector<std::vector<uint32_t>> lists;  // splat positions per tile
};

TileGrid bin_tiles(const Prepared& prep, const CameraIntrinsics& K, const RenderSettings& settings) {
    TileGrid grid;
    grid.tile = settings.tile_size;
    grid.nx = (K.width + grid.tile - 1) / grid.tile;
    grid.ny = (K.height + grid.tile - 1) / grid.tile;
    grid.lists.resize(static_cast<size_t>(grid.nx) * grid.ny);
    for (uint32_t i = 0; i < prep.splats.size(); ++i) {
        const ProjectedSplat& s = prep.splats[i];
        const double cut = std::sqrt(s.cutoff2);
        const int px0 = std::max(0, static_cast<int>(std::floor(s.u - cut)));
        const int px1 = std::min(K.width - 1, static_cast<int>(std::ceil(s.u + cut)));
        const int py0 = std::max(0, static_cast<int>(std::floor(s.v - cut)));
        const int py1 = std::min(K.height - 1, static_cast<int>(std::ceil(s.v + cut)));
        if (px0 > px1 || py0 > py1) continue;
        const int tx0 = px0 / grid.tile, tx1 = px1 / grid.tile;
        const int ty0 = py0 / grid.tile, ty1 = py1 / grid.tile;
        for (int ty = ty0; ty <= ty1; ++ty)
            for (int tx = tx0; tx <= tx1; ++tx)
                grid.lists[static_cast<size_t>(ty) * grid.nx + tx].push_back(i);
    }
    for (auto& list : grid.lists) sort_front_to_back(prep.splats, list);
    return grid;
}

struct EffectiveMask {
    Mask mask;
    size_t pixels = 0;
    size_t pixels_depth = 0;
};

EffectiveMask effective_mask(const RenderOutput& out, const LossSpec& spec) {
    if (spec.mask.width() != out.color.width() || spec.mask.height() != out.color.height()) {
        throw std::invalid_argument("loss: mask dimensions do not match the render");
    }
    EffectiveMask em;
    em.mask = spec.mask;
    for (int v = 0; v < em.mask.height(); ++v) {
        for (int u = 0; u < em.mask.width(); ++u) {
            uint8_t& m = em.mask.at(u, v);
            if (m && spec.silhouette_validity >= 0.0 &&
                out.silhouette.at(u, v) <= spec.silhouette_validity) {
                m = 0;
            }
            if (m) {
                ++em.pixels;
                if (spec.depth_target && spec.depth_target->at(u, v) > 0.0) ++em.pixels_depth;
            }
        }
    }
    return em;
}

void check_targets(const LossSpec& spec, const RenderOutput& out) {
    const int w = out.color.width(), h = out.color.height();
    if (spec.color_target && (spec.color_target->width() != w || spec.color_target->height() != h))
        throw std::invalid_argument("loss: color target dimensions mismatch");
    if (spec.depth_target && (spec.depth_target->width() != w || spec.depth_target->height() != h))
        throw std::invalid_argument("loss: depth target dimensions mismatch");
    if (spec.id_target && (spec.id_target->width() != w || spec.id_target->height() != h))
        throw std::invalid_argument("loss: id target dimensions mismatch");
}

LossBreakdown loss_on_mask(const RenderOutput& out, const LossSpec& spec, const EffectiveMask& em) {
    LossBreakdown lb;
    lb.pixels = em.pixels;
    lb.pixels_depth = em.pixels_depth;
    const size_t nch = out.id_channels.size();
    double sum_c = 0.0, sum_d = 0.0, sum_id = 0.0;
    for (int v = 0; v < em.mask.height(); ++v) {
        for (int u = 0; u < em.mask.width(); ++u) {
            if (!em.mask.at(u, v)) continue;
            if (spec.color_target) {
                const Vec3 diff = out.color.at(u, v) - spec.color_target->at(u, v);
                sum_c += diff.cwiseAbs().sum();
            }
            if (spec.depth_target && spec.depth_target->at(u, v) > 0.0) {
                sum_d += std::abs(out.depth.at(u, v) - spec.depth_target->at(u, v));
            }
            if (spec.id_target) {
                const int target_ch = out.channel_index(spec.id_target->at(u, v));
                for (size_t k = 0; k < nch; ++k) {
                    const double target = (static_cast<int>(k) == target_ch) ? 1.0 : 0.0;
                    sum_id += std::abs(out.id_channels[k].at(u, v) - target);
                }
            }
        }
    }
    if (spec.color_target && em.pixels > 0) lb.color = sum_c / (3.0 * em.pixels);
    if (spec.depth_target && em.pixels_depth > 0) lb.depth = sum_d / em.pixels_depth;
    if (spec.id_target && em.pixels > 0 && nch > 0) lb.id = sum_id / (static_cast<double>(nch) * em.pixels);
    lb.total = spec.lambda_p * lb.color + spec.lambda_d * lb.depth + spec.lambda_id * lb.id;
    return lb;
}

double sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

RenderOutput render(std::span<const RenderGroup> groups, const RigidPose& camera_from_world,
                    const CameraIntrinsics& K, const RenderSettings& settings) {
    Prepared prep = prepare(groups, camera_from_world, K, settings);
    RenderOutput out = make_output(K, prep.channel_ids);
    TileGrid grid = bin_tiles(prep, K, settings);

    parallel_for(grid.lists.size(), settings.threads, [&](size_t t) {
        const int tx = static_cast<int>(t) % grid.nx;
        const int ty = static_cast<int>(t) / grid.nx;
        const int x0 = tx * grid.tile, y0 = ty * grid.tile;
        const int x1 = std::min(K.width, x0 + grid.tile);
        const int y1 = std::min(K.height, y0 + grid.tile);
        composite_span(prep, prep.channel_ids, K, settings, x0, y0, x1, y1, grid.lists[t].data(),
                       grid.lists[t].size(), out);
    });
    return out;
}

RenderOutput render_reference(std::span<const RenderGroup> groups,
                              const RigidPose& camera_from_world, const CameraIntrinsics& K,
                              const RenderSettings& settings) {
    Prepared prep = prepare(groups, camera_from_world, K, settings);
    RenderOutput out = make_output(K, prep.channel_ids);

    std::vector<uint32_t> order(prep.splats.size());
    for (uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    sort_front_to_back(prep.splats, order);

    parallel_for(K.height, settings.threads, [&](size_t v) {
        composite_span(prep, prep.channel_ids, K, settings, 0, static_cast<int>(v), K.width,
                       static_cast<int>(v) + 1, order.data(), order.size(), out);
    });
    return out;
}

LossBreakdown compute_loss(const RenderOutput& out, const LossSpec& spec) {
    check_targets(spec, out);
    return loss_on_mask(out, spec, effective_mask(out, spec));
}

RenderGradients render_backward(std::span<const RenderGroup> groups,
                                const RigidPose& camera_from_world, const CameraIntrinsics& K,
                                const LossSpec& spec, const RenderSettings& settings,
                                RenderOutput* forward_out) {
    Prepared prep = prepare(groups, camera_from_world, K, settings);
    RenderOutput out = make_output(K, prep.channel_ids);
    TileGrid grid = bin_tiles(prep, K, settings);

    parallel_for(grid.lists.size(), settings.threads, [&](size_t t) {
        const int tx = static_cast<int>(t) % grid.nx;
        const int ty = static_cast<int>(t) / grid.nx;
        const int x0 = tx * grid.tile, y0 = ty * grid.tile;
        const int x1 = std::min(K.width, x0 + grid.tile);
        const int y1 = std::min(K.height, y0 + grid.tile);
        composite_span(prep, prep.channel_ids, K, settings, x0, y0, x1, y1, grid.lists[t].data(),
                       grid.lists[t].size(), out);
    });

    check_targets(spec, out);
    const EffectiveMask em = effective_mask(out, spec);

    RenderGradients grads;
    grads.loss = loss_on_mask(out, spec, em);
    grads.gaussians.assign(prep.total_gaussians, GaussGrad{});
    grads.group_poses.assign(groups.size(), PoseGrad{});

    const size_t nch = prep.channel_ids.size();
    const double cp = (spec.color_target && em.pixels > 0) ? spec.lambda_p / (3.0 * em.pixels) : 0.0;
    const double cd =
        (spec.depth_target && em.pixels_depth > 0) ? spec.lambda_d / em.pixels_depth : 0.0;
    const double cid =
        (spec.id_target && em.pixels > 0) ? spec.lambda_id / (static_cast<double>(nch) * em.pixels) : 0.0;

    if (cp == 0.0 && cd == 0.0 && cid == 0.0) {
        if (forward_out) *forward_out = std::move(out);
        return grads;  // zero-weight loss: all gradients exactly zero
    }

    struct TileGrads {
        std::vector<GaussGrad> local;     // per tile-list slot (center in camera coords)
        std::vector<Vec3> mucam;          // accumulated d loss / d mu_cam per slot
        PoseGrad camera;
        std::vector<PoseGrad> groups;
    };
    std::vector<TileGrads> tile_grads(grid.lists.size());

    struct Contrib {
        uint32_t slot;  // position in the tile's sorted list
        double f, e, T;
    };

    parallel_for(grid.lists.size(), settings.threads, [&](size_t t) {
        const auto& list = grid.lists[t];
        if (list.empty()) return;
        TileGrads& tg = tile_grads[t];
        tg.local.assign(list.size(), GaussGrad{});
        tg.mucam.assign(list.size(), Vec3::Zero());
        tg.groups.assign(groups.size(), PoseGrad{});

        const int tx = static_cast<int>(t) % grid.nx;
        const int ty = static_cast<int>(t) / grid.nx;
        const int x0 = tx * grid.tile, y0 = ty * grid.tile;
        const int x1 = std::min(K.width, x0 + grid.tile);
        const int y1 = std::min(K.height, y0 + grid.tile);

        std::vector<Contrib> contribs;
        contribs.reserve(128);

        for (int v = y0; v < y1; ++v) {
            for (int u = x0; u < x1; ++u) {
                if (!em.mask.at(u, v)) continue;
                contribs.clear();
                walk_pixel(u, v, prep.splats, list.data(), list.size(), settings.transmittance_min,
                           [&](const ProjectedSplat&, size_t slot, double f, double e, double T) {
                               contribs.push_back({static_cast<uint32_t>(slot), f, e, T});
                           });
                if (contribs.empty()) continue;

                Vec3 gC = Vec3::Zero();
                if (cp > 0.0) {
                    const Vec3 diff = out.color.at(u, v) - spec.color_target->at(u, v);
                    gC = Vec3(sign_of(diff.x()), sign_of(diff.y()), sign_of(diff.z())) * cp;
                }
                double gD = 0.0;
                if (cd > 0.0 && spec.depth_target->at(u, v) > 0.0) {
                    gD = cd * sign_of(out.depth.at(u, v) - spec.depth_target->at(u, v));
                }
                int target_ch = -1;
                if (cid > 0.0) target_ch = out.channel_index(spec.id_target->at(u, v));
                auto gid = [&](int ch) {
                    if (cid == 0.0) return 0.0;
                    const double target = (ch == target_ch) ? 1.0 : 0.0;
                    return cid * sign_of(out.id_channels[ch].at(u, v) - target);
                };

                double VC = 0.0, VD = 0.0, VID = 0.0;
                for (size_t i = contribs.size(); i-- > 0;) {
                    const Contrib& c = contribs[i];
                    const ProjectedSplat& s = prep.splats[list[c.slot]];
                    const double gid_i = gid(s.channel);
                    const double dldf =
                        c.T * ((gC.dot(s.color) - VC) + (gD * s.depth - VD) + (gid_i - VID));
                    const double w = c.f * c.T;

                    GaussGrad& gg = tg.local[c.slot];
                    gg.color += gC * w;
                    gg.opacity += dldf * c.e;

                    const double inv_r2 = 1.0 / (s.r2d * s.r2d);
                    const double dx = u - s.u, dy = v - s.v;
                    const double pu = dldf * c.f * dx * inv_r2;   // d loss / d mu2d.x
                    const double pv = dldf * c.f * dy * inv_r2;   // d loss / d mu2d.y
                    const double rho2 = dx * dx + dy * dy;
                    const double pr = dldf * c.f * rho2 * inv_r2 / s.r2d;  // d loss / d r2d

                    const double inv_z = 1.0 / s.depth;
                    const double gX = pu * K.fx * inv_z;
                    const double gY = pv * K.fy * inv_z;
                    const double gZ =
                        -(pu * K.fx * s.cam_x + pv * K.fy * s.cam_y + pr * K.fx * s.radius) *
                            inv_z * inv_z +
                        gD * w;
                    gg.radius += pr * K.fx * inv_z;
                    tg.mucam[c.slot] += Vec3(gX, gY, gZ);

                    VC = gC.dot(s.color) * c.f + (1.0 - c.f) * VC;
                    VD = gD * s.depth * c.f + (1.0 - c.f) * VD;
                    VID = gid_i * c.f + (1.0 - c.f) * VID;
                }
            }
        }

        // chain accumulated camera-frame gradients to canonical centers and poses
        for (uint32_t slot = 0; slot < list.size(); ++slot) {
            const Vec3& g_mucam = tg.mucam[slot];
            if (g_mucam.isZero(0.0) && tg.local[slot].radius == 0.0 &&
                tg.local[slot].opacity == 0.0 && tg.local[slot].color.isZero(0.0))
                continue;
            const ProjectedSplat& s = prep.splats[list[slot]];
            const GroupXf& xf = prep.xf[s.group];
            const Vec3 mu_cam(s.cam_x, s.cam_y, s.depth);
            const Vec3 y = xf.cam_R.transpose() * (mu_cam - xf.cam_t);  // world point
            const Vec3 g_y = xf.cam_R.transpose() * g_mucam;
            tg.local[slot].center = xf.obj_R.transpose() * g_y;

            tg.camera.t += g_mucam;
            tg.camera.q += rotation_jacobian(xf.cam_q, y).transpose() * g_mucam;
            if (groups[s.group].optimize_pose) {
                const Vec3 mu = xf.obj_R.transpose() * (y - xf.obj_t);  // canonical center
                tg.groups[s.group].t += g_y;
                tg.groups[s.group].q += rotation_jacobian(xf.obj_q, mu).transpose() * g_y;
            }
        }
    });

    // deterministic reduction in tile order
    for (size_t t = 0; t < grid.lists.size(); ++t) {
        const auto& list = grid.lists[t];
        if (list.empty()) continue;
        const TileGrads& tg = tile_grads[t];
        for (uint32_t slot = 0; slot < list.size(); ++slot) {
            GaussGrad& dst = grads.gaussians[prep.splats[list[slot]].index];
            const GaussGrad& src = tg.local[slot];
            dst.color += src.color;
            dst.center += src.center;
            dst.radius += src.radius;
            dst.opacity += src.opacity;
        }
        grads.camera.q += tg.camera.q;
        grads.camera.t += tg.camera.t;
        for (size_t g = 0; g < groups.size(); ++g) {
            grads.group_poses[g].q += tg.groups[g].q;
            grads.group_poses[g].t += tg.groups[g].t;
        }
    }

    // normalization jacobian of the quaternion parameters
    if (!prep.xf.empty()) {
        grads.camera.q = project_quat_grad(prep.xf[0].cam_q, prep.xf[0].cam_norm, grads.camera.q);
    }
    for (size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].optimize_pose) {
            grads.group_poses[g].q =
                project_quat_grad(prep.xf[g].obj_q, prep.xf[g].obj_norm, grads.group_poses[g].q);
        }
    }

    if (forward_out) *forward_out = std::move(out);
    return grads;
}

bool is_fully_visible(std::span<const GaussianPrimitive> gaussians, const RigidPose& object_pose,
                      const RigidPose& camera_from_world, const CameraIntrinsics& K,
                      const RenderSettings& settings) {
    const Mat3 R = camera_from_world.normalized().rotation() * object_pose.normalized().rotation();
    const Vec3 t = camera_from_world.normalized().rotation() * object_pose.t + camera_from_world.t;
    for (const auto& g : gaussians) {
        const Vec3 pc = R * g.center + t;
        if (pc.z() <= settings.near_plane) return false;
        const double inv_z = 1.0 / pc.z();
        const double u = K.fx * pc.x() * inv_z + K.cx;
        const double v = K.fy * pc.y() * inv_z + K.cy;
        const double cut = settings.cutoff_sigma * K.fx * g.radius * inv_z;
        if (u - cut < 0.0 || u + cut > K.width - 1 || v - cut < 0.0 || v + cut > K.height - 1)
            return false;
    }
    return true;
}

}  // namespace dgs
