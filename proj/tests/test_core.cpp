#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dgs/camera.hpp"
#include "dgs/pose.hpp"

using namespace dgs;

namespace {

RigidPose random_pose(std::mt19937& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    RigidPose p;
    p.q = Quat(n(rng), n(rng), n(rng), n(rng));
    p.q.normalize();
    p.t = Vec3(n(rng), n(rng), n(rng));
    return p;
}

}  // namespace

TEST_CASE("quat_rotation_angle on canonical inputs") {
    CHECK(quat_rotation_angle(Quat(1, 0, 0, 0)) == doctest::Approx(0.0));
    const double c = std::cos(M_PI / 4), s = std::sin(M_PI / 4);
    CHECK(quat_rotation_angle(Quat(c, 0, 0, s)) == doctest::Approx(M_PI / 2));
    // double cover: -q is the same rotation
    CHECK(quat_rotation_angle(Quat(-1, 0, 0, 0)) == doctest::Approx(0.0));
}

TEST_CASE("quat_rotation_angle rejects non-unit quaternions") {
    CHECK_THROWS_AS(quat_rotation_angle(Quat(1.1, 0, 0, 0)), std::invalid_argument);
}

TEST_CASE("pose compose and inverse") {
    std::mt19937 rng(17);
    for (int i = 0; i < 50; ++i) {
        RigidPose p = random_pose(rng);

        RigidPose id = compose(p, p.inverse());
        CHECK(quat_rotation_angle(id.q) < 1e-9);
        CHECK(id.t.norm() < 1e-9);

        RigidPose same = compose(RigidPose::identity(), p);
        CHECK((same.t - p.t).norm() < 1e-12);
        CHECK(rotation_angle_between(same, p) < 1e-12);
    }
}

TEST_CASE("two quarter turns make a half turn") {
    const double c = std::cos(M_PI / 4), s = std::sin(M_PI / 4);
    RigidPose quarter;
    quarter.q = Quat(c, 0, 0, s);
    RigidPose half = compose(quarter, quarter);
    CHECK(quat_rotation_angle(half.q) == doctest::Approx(M_PI));
}

TEST_CASE("pose composition is associative") {
    std::mt19937 rng(3);
    for (int i = 0; i < 30; ++i) {
        RigidPose a = random_pose(rng), b = random_pose(rng), c = random_pose(rng);
        RigidPose ab_c = compose(compose(a, b), c);
        RigidPose a_bc = compose(a, compose(b, c));
        CHECK((ab_c.t - a_bc.t).norm() < 1e-9);
        CHECK(rotation_angle_between(ab_c, a_bc) < 1e-9);
    }
}

TEST_CASE("quaternion renormalization is idempotent") {
    std::mt19937 rng(5);
    for (int i = 0; i < 20; ++i) {
        RigidPose p = random_pose(rng);
        RigidPose once = p.normalized();
        RigidPose twice = once.normalized();
        CHECK((once.q.coeffs() - twice.q.coeffs()).norm() == 0.0);
    }
}

TEST_CASE("projection basics") {
    CameraIntrinsics K{600.0, 600.0, 320.0, 240.0, 640, 480};
    K.validate();

    Vec3 on_axis = project(Vec3(0, 0, 2), K);
    CHECK(on_axis.x() == doctest::Approx(320.0));
    CHECK(on_axis.y() == doctest::Approx(240.0));
    CHECK(on_axis.z() == doctest::Approx(2.0));

    Vec3 off = project(Vec3(1, 0, 2), K);
    CHECK(off.x() == doctest::Approx(620.0));
    CHECK(off.y() == doctest::Approx(240.0));

    CHECK_THROWS_AS(project(Vec3(0, 0, -1), K), std::domain_error);
    CHECK_THROWS_AS(backproject(10, 10, 0.0, K), std::invalid_argument);
}

TEST_CASE("project and backproject are inverses") {
    CameraIntrinsics K{520.0, 505.0, 315.5, 241.0, 640, 480};
    // axis, off-axis, corner pixel
    const Vec3 points[] = {Vec3(0, 0, 1.5), Vec3(0.3, -0.2, 2.2),
                           backproject(0.0, 0.0, 3.0, K)};
    for (const Vec3& p : points) {
        Vec3 uvd = project(p, K);
        Vec3 back = backproject(uvd.x(), uvd.y(), uvd.z(), K);
        CHECK((back - p).norm() < 1e-9);
    }
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> du(0.0, 639.0), dv(0.0, 479.0), dd(0.1, 10.0);
    for (int i = 0; i < 100; ++i) {
        const double u = du(rng), v = dv(rng), d = dd(rng);
        Vec3 p = backproject(u, v, d, K);
        Vec3 uvd = project(p, K);
        CHECK(std::abs(uvd.x() - u) < 1e-9);
        CHECK(std::abs(uvd.y() - v) < 1e-9);
        CHECK(std::abs(uvd.z() - d) < 1e-9);
    }
}

TEST_CASE("intrinsics validation") {
    CameraIntrinsics bad{0.0, 600.0, 320.0, 240.0, 640, 480};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CameraIntrinsics bad2{600.0, 600.0, 700.0, 240.0, 640, 480};
    CHECK_THROWS_AS(bad2.validate(), std::invalid_argument);
}

TEST_CASE("constant velocity prediction extrapolates a straight line") {
    RigidPose p1;  // t-2
    RigidPose p2;  // t-1
    p2.t = Vec3(0.1, 0, 0);
    RigidPose pred = constant_velocity_predict(p2, p1);
    CHECK((pred.t - Vec3(0.2, 0, 0)).norm() < 1e-12);
}
