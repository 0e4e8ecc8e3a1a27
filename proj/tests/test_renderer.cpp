#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "dgs/renderer.hpp"
#include "test_util.hpp"

using namespace dgs;
using namespace dgs::testutil;

namespace {

CameraIntrinsics small_K() { return CameraIntrinsics{50.0, 50.0, 32.0, 24.0, 64, 48}; }

GaussianPrimitive on_axis(double depth, double opacity, int id = 0) {
    GaussianPrimitive g;
    g.color = Vec3(1.0, 0.5, 0.25);
    g.center = Vec3(0.0, 0.0, depth);
    g.radius = 0.1;
    g.opacity = opacity;
    g.instance_id = id;
    return g;
}

double max_channel_difference(const RenderOutput& a, const RenderOutput& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.color.size(); ++i) {
        m = std::max(m, (a.color[i] - b.color[i]).cwiseAbs().maxCoeff());
        m = std::max(m, std::abs(a.depth[i] - b.depth[i]));
        m = std::max(m, std::abs(a.silhouette[i] - b.silhouette[i]));
        m = std::max(m, std::abs(a.id_scalar[i] - b.id_scalar[i]));
    }
    REQUIRE(a.channel_ids == b.channel_ids);
    for (size_t c = 0; c < a.id_channels.size(); ++c)
        for (size_t i = 0; i < a.id_channels[c].size(); ++i)
            m = std::max(m, std::abs(a.id_channels[c][i] - b.id_channels[c][i]));
    return m;
}

}  // namespace

TEST_CASE("single opaque gaussian saturates the center pixel") {
    auto g = on_axis(2.0, 1.0);
    std::vector<GaussianPrimitive> gs{g};
    std::vector<RenderGroup> groups{{gs, RigidPose{}, 0, false}};
    CameraIntrinsics K = small_K();
    RenderOutput out = render(groups, RigidPose{}, K);
    CHECK(out.silhouette.at(32, 24) == doctest::Approx(1.0));
    CHECK(out.depth.at(32, 24) == doctest::Approx(2.0));
    CHECK(out.color.at(32, 24).x() == doctest::Approx(1.0));
}

TEST_CASE("two-gaussian compositing matches hand evaluation") {
    std::vector<GaussianPrimitive> gs{on_axis(1.0, 0.6, 1), on_axis(2.0, 0.8, 2)};
    CameraIntrinsics K = small_K();

    SUBCASE("front-to-back accumulation") {
        // S = 0.6 + 0.8*0.4 = 0.92 ; D = 1*0.6 + 2*0.8*0.4 = 1.24 (un-normalized)
        std::vector<GaussianPrimitive> bg{on_axis(1.0, 0.6, 0), on_axis(2.0, 0.8, 0)};
        std::vector<RenderGroup> groups{{bg, RigidPose{}, 0, false}};
        RenderOutput out = render(groups, RigidPose{}, K);
        CHECK(out.silhouette.at(32, 24) == doctest::Approx(0.92));
        CHECK(out.depth.at(32, 24) == doctest::Approx(1.24));
    }

    SUBCASE("id channels composite with the same weights") {
        std::vector<GaussianPrimitive> a{gs[0]}, b{gs[1]};
        std::vector<RenderGroup> groups{{a, RigidPose{}, 1, false}, {b, RigidPose{}, 2, false}};
        RenderOutput out = render(groups, RigidPose{}, K);
        const int c1 = out.channel_index(1), c2 = out.channel_index(2);
        REQUIRE(c1 >= 0);
        REQUIRE(c2 >= 0);
        CHECK(out.id_channels[c1].at(32, 24) == doctest::Approx(0.6));
        CHECK(out.id_channels[c2].at(32, 24) == doctest::Approx(0.32));
        CHECK(out.id_scalar.at(32, 24) == doctest::Approx(1.0 * 0.6 + 2.0 * 0.32));
    }
}

TEST_CASE("render rejects empty maps and duplicate ids") {
    CameraIntrinsics K = small_K();
    std::vector<GaussianPrimitive> empty;
    std::vector<RenderGroup> none{{empty, RigidPose{}, 0, false}};
    CHECK_THROWS_AS(render(none, RigidPose{}, K), std::invalid_argument);

    std::vector<GaussianPrimitive> gs{on_axis(1.0, 0.5)};
    std::vector<RenderGroup> dup{{gs, RigidPose{}, 3, false}, {gs, RigidPose{}, 3, false}};
    CHECK_THROWS_AS(render(dup, RigidPose{}, K), std::invalid_argument);
}

TEST_CASE("single gaussian matches the closed-form footprint") {
    GaussianPrimitive g = on_axis(2.0, 0.7);
    std::vector<GaussianPrimitive> gs{g};
    std::vector<RenderGroup> groups{{gs, RigidPose{}, 0, false}};
    CameraIntrinsics K = small_K();
    RenderOutput out = render(groups, RigidPose{}, K);

    const double r2d = K.fx * g.radius / 2.0;
    for (int v = 0; v < K.height; ++v) {
        for (int u = 0; u < K.width; ++u) {
            const double dx = u - K.cx, dy = v - K.cy;
            const double rho2 = dx * dx + dy * dy;
            double expected = 0.0;
            if (rho2 <= 9.0 * r2d * r2d)
                expected = g.opacity * std::exp(-rho2 / (2.0 * r2d * r2d));
            CHECK(out.silhouette.at(u, v) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("fast path matches the reference renderer on random scenes") {
    for (uint32_t seed = 0; seed < 25; ++seed) {
        RandomScene s = random_scene(seed, 60, 20);
        auto groups = s.groups();
        RenderOutput fast = render(groups, s.camera, s.K);
        RenderOutput ref = render_reference(groups, s.camera, s.K);
        CHECK(max_channel_difference(fast, ref) <= 1e-6);
    }
}

TEST_CASE("silhouette stays in range and id channels sum to it") {
    for (uint32_t seed = 100; seed < 110; ++seed) {
        RandomScene s = random_scene(seed, 80, 30);
        RenderOutput out = render(s.groups(), s.camera, s.K);
        for (int v = 0; v < s.K.height; ++v) {
            for (int u = 0; u < s.K.width; ++u) {
                const double sil = out.silhouette.at(u, v);
                CHECK(sil >= 0.0);
                CHECK(sil <= 1.0 + 1e-12);
                double sum = 0.0;
                for (const auto& ch : out.id_channels) sum += ch.at(u, v);
                CHECK(std::abs(sum - sil) <= 1e-6);
            }
        }
    }
}

TEST_CASE("input order does not change the output") {
    RandomScene s = random_scene(42, 70, 0);
    RenderOutput base = render(s.groups(), s.camera, s.K);

    std::mt19937 rng(9);
    std::vector<GaussianPrimitive> shuffled = s.background;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::vector<RenderGroup> groups{{shuffled, RigidPose{}, 0, false}};
    RenderOutput out = render(groups, s.camera, s.K);
    CHECK(max_channel_difference(base, out) <= 1e-9);
}

TEST_CASE("adding a gaussian never decreases the silhouette") {
    RandomScene s = random_scene(7, 50, 0);
    RenderOutput before = render(s.groups(), s.camera, s.K);

    std::mt19937 rng(123);
    std::vector<GaussianPrimitive> more = s.background;
    more.push_back(random_gaussian(rng, 0, 0.02, 0.25));
    std::vector<RenderGroup> groups{{more, RigidPose{}, 0, false}};
    RenderOutput after = render(groups, s.camera, s.K);
    for (size_t i = 0; i < before.silhouette.size(); ++i) {
        CHECK(after.silhouette[i] >= before.silhouette[i] - 1e-12);
    }
}

TEST_CASE("empty-footprint pixels render to zero in both paths") {
    std::vector<GaussianPrimitive> gs{on_axis(2.0, 0.9)};
    std::vector<RenderGroup> groups{{gs, RigidPose{}, 0, false}};
    CameraIntrinsics K = small_K();
    RenderOutput fast = render(groups, RigidPose{}, K);
    RenderOutput ref = render_reference(groups, RigidPose{}, K);
    CHECK(fast.silhouette.at(0, 0) == 0.0);
    CHECK(ref.silhouette.at(0, 0) == 0.0);
    CHECK(fast.color.at(0, 0).norm() == 0.0);
}

TEST_CASE("is_fully_visible") {
    CameraIntrinsics K = small_K();
    std::vector<GaussianPrimitive> mid{on_axis(2.0, 0.9)};
    CHECK(is_fully_visible(mid, RigidPose{}, RigidPose{}, K));

    // one gaussian projecting out of frame
    GaussianPrimitive out_of_frame = on_axis(2.0, 0.9);
    out_of_frame.center = Vec3(-3.0, 0.0, 2.0);
    std::vector<GaussianPrimitive> part{on_axis(2.0, 0.9), out_of_frame};
    CHECK_FALSE(is_fully_visible(part, RigidPose{}, RigidPose{}, K));

    // behind the camera
    std::vector<GaussianPrimitive> behind{on_axis(-1.0, 0.9)};
    CHECK_FALSE(is_fully_visible(behind, RigidPose{}, RigidPose{}, K));
}

TEST_CASE("zero-weight loss yields exactly zero gradients") {
    RandomScene s = random_scene(55, 40, 10);
    TargetSet t = random_targets(56, s.K);
    LossSpec spec;
    spec.mask = t.mask;
    spec.color_target = &t.color;
    spec.lambda_p = 0.0;
    spec.depth_target = &t.depth;
    spec.lambda_d = 0.0;
    spec.id_target = &t.ids;
    spec.lambda_id = 0.0;

    RenderGradients g = render_backward(s.groups(true), s.camera, s.K, spec);
    CHECK(g.loss.total == 0.0);
    for (const auto& gg : g.gaussians) {
        CHECK(gg.color.norm() == 0.0);
        CHECK(gg.center.norm() == 0.0);
        CHECK(gg.radius == 0.0);
        CHECK(gg.opacity == 0.0);
    }
    CHECK(g.camera.q.norm() == 0.0);
    CHECK(g.camera.t.norm() == 0.0);
}

namespace {

struct FdProbe {
    RandomScene scene;
    TargetSet targets;

    LossSpec spec() const {
        LossSpec s;
        s.mask = targets.mask;
        s.color_target = &targets.color;
        s.lambda_p = 0.5;
        s.depth_target = &targets.depth;
        s.lambda_d = 1.0;
        s.id_target = &targets.ids;
        s.lambda_id = 2.5;
        return s;
    }

    double loss(const std::vector<RenderGroup>& groups, const RigidPose& cam) const {
        LossSpec sp = spec();
        RenderOutput out = render(groups, cam, scene.K);
        return compute_loss(out, sp).total;
    }
};

double fd_central(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("analytic gradients match central finite differences") {
    const double h = 1e-4;
    const double tol = 1e-3;
    int checked = 0;
    for (uint32_t seed = 0; seed < 4; ++seed) {
        SceneParams params;
        params.n_background = 14;
        params.n_object = 6;
        params.r_min = 0.015;
        params.r_max = 0.05;
        params.distinct_depths = true;
        FdProbe probe{random_scene(seed * 31 + 1, params), TargetSet{}};
        probe.targets = random_targets(seed * 97 + 5, probe.scene.K);
        // keep the FD oracle on the smooth part of the loss: pixels next to a
        // footprint cutoff see a jump, not a derivative
        const Mask band =
            cutoff_boundary_band(probe.scene.groups(true), probe.scene.camera, probe.scene.K, 1.0);
        probe.targets.mask = mask_minus(probe.targets.mask, band);
        REQUIRE(mask_count(probe.targets.mask) > 200);
        auto groups = probe.scene.groups(true);
        RenderGradients g = render_backward(groups, probe.scene.camera, probe.scene.K, probe.spec());

        std::mt19937 rng(seed + 1000);
        std::uniform_int_distribution<int> pick_g(0, static_cast<int>(probe.scene.background.size() +
                                                                      probe.scene.object.size()) -
                                                         1);

        // gaussian parameters
        for (int trial = 0; trial < 24; ++trial) {
            const int gi = pick_g(rng);
            const bool in_bg = gi < static_cast<int>(probe.scene.background.size());
            auto& vec = in_bg ? probe.scene.background : probe.scene.object;
            const int local = in_bg ? gi : gi - static_cast<int>(probe.scene.background.size());
            GaussianPrimitive& gp = vec[local];

            std::uniform_int_distribution<int> pick_p(0, 7);
            const int p = pick_p(rng);
            double* slot = nullptr;
            double analytic = 0.0;
            const GaussGrad& gg = g.gaussians[gi];
            if (p < 3) {
                slot = &gp.color[p];
                analytic = gg.color[p];
            } else if (p < 6) {
                slot = &gp.center[p - 3];
                analytic = gg.center[p - 3];
            } else if (p == 6) {
                slot = &gp.radius;
                analytic = gg.radius;
            } else {
                slot = &gp.opacity;
                analytic = gg.opacity;
            }

            const double x0 = *slot;
            auto eval = [&](double x) {
                *slot = x;
                auto gr = probe.scene.groups(true);
                const double L = probe.loss(gr, probe.scene.camera);
                *slot = x0;
                return L;
            };
            const double fd = fd_central(eval, x0, h);
            const double err = std::abs(analytic - fd) / std::max(1.0, std::abs(analytic));
            CHECK(err <= tol);
            ++checked;
        }

        // camera pose parameters
        for (int p = 0; p < 7; ++p) {
            RigidPose cam = probe.scene.camera;
            double analytic = (p < 4) ? g.camera.q[p] : g.camera.t[p - 4];
            auto eval = [&](double x) {
                RigidPose c = cam;
                if (p < 4) {
                    Vec4 q(c.q.w(), c.q.x(), c.q.y(), c.q.z());
                    q[p] = x;
                    c.q = Quat(q[0], q[1], q[2], q[3]);
                } else {
                    c.t[p - 4] = x;
                }
                return probe.loss(probe.scene.groups(true), c);
            };
            const double x0 = (p < 4) ? Vec4(cam.q.w(), cam.q.x(), cam.q.y(), cam.q.z())[p]
                                      : cam.t[p - 4];
            const double fd = fd_central(eval, x0, h);
            const double err = std::abs(analytic - fd) / std::max(1.0, std::abs(analytic));
            CHECK(err <= tol);
            ++checked;
        }

        // object pose parameters
        for (int p = 0; p < 7; ++p) {
            RigidPose obj = probe.scene.object_pose;
            double analytic = (p < 4) ? g.group_poses[1].q[p] : g.group_poses[1].t[p - 4];
            auto eval = [&](double x) {
                RigidPose saved = probe.scene.object_pose;
                RigidPose& o = probe.scene.object_pose;
                if (p < 4) {
                    Vec4 q(o.q.w(), o.q.x(), o.q.y(), o.q.z());
                    q[p] = x;
                    o.q = Quat(q[0], q[1], q[2], q[3]);
                } else {
                    o.t[p - 4] = x;
                }
                const double L = probe.loss(probe.scene.groups(true), probe.scene.camera);
                probe.scene.object_pose = saved;
                return L;
            };
            const double x0 = (p < 4) ? Vec4(obj.q.w(), obj.q.x(), obj.q.y(), obj.q.z())[p]
                                      : obj.t[p - 4];
            const double fd = fd_central(eval, x0, h);
            const double err = std::abs(analytic - fd) / std::max(1.0, std::abs(analytic));
            CHECK(err <= tol);
            ++checked;
        }
    }
    CHECK(checked >= 100);
}

TEST_CASE("camera translation gradient matches summed center gradients") {
    for (uint32_t seed = 60; seed < 64; ++seed) {
        RandomScene s = random_scene(seed, 40, 0);
        TargetSet t = random_targets(seed + 1, s.K);
        LossSpec spec;
        spec.mask = t.mask;
        spec.color_target = &t.color;
        spec.lambda_p = 1.0;
        spec.depth_target = &t.depth;
        spec.lambda_d = 1.0;

        RenderGradients g = render_backward(s.groups(), s.camera, s.K, spec);
        Vec3 sum = Vec3::Zero();
        for (const auto& gg : g.gaussians) sum += gg.center;
        // moving the camera by d shifts every camera-frame center the same
        // way as moving all world centers by R^T d
        const Vec3 expected = s.camera.normalized().rotation() * sum;
        CHECK((g.camera.t - expected).norm() <= 1e-6 * std::max(1.0, expected.norm()));
    }
}

TEST_CASE("renderer is deterministic across thread counts") {
    RandomScene s = random_scene(77, 120, 40);
    TargetSet t = random_targets(78, s.K);
    LossSpec spec;
    spec.mask = t.mask;
    spec.color_target = &t.color;
    spec.lambda_p = 0.5;
    spec.depth_target = &t.depth;
    spec.lambda_d = 1.0;
    spec.id_target = &t.ids;
    spec.lambda_id = 2.5;

    RenderSettings s1;
    s1.threads = 1;
    RenderSettings s4;
    s4.threads = 4;

    RenderOutput o1 = render(s.groups(true), s.camera, s.K, s1);
    RenderOutput o4 = render(s.groups(true), s.camera, s.K, s4);
    CHECK(max_channel_difference(o1, o4) == 0.0);

    RenderGradients g1 = render_backward(s.groups(true), s.camera, s.K, spec, s1);
    RenderGradients g4 = render_backward(s.groups(true), s.camera, s.K, spec, s4);
    REQUIRE(g1.gaussians.size() == g4.gaussians.size());
    for (size_t i = 0; i < g1.gaussians.size(); ++i) {
        CHECK(g1.gaussians[i].center == g4.gaussians[i].center);
        CHECK(g1.gaussians[i].color == g4.gaussians[i].color);
        CHECK(g1.gaussians[i].radius == g4.gaussians[i].radius);
        CHECK(g1.gaussians[i].opacity == g4.gaussians[i].opacity);
    }
    CHECK(g1.camera.q == g4.camera.q);
    CHECK(g1.camera.t == g4.camera.t);
}
