#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "harmin/errors.hpp"
#include "harmin/harmonic.hpp"
#include "harmin/rng.hpp"
#include "oracle_helpers.hpp"

using namespace harmin;

namespace {

constexpr double kPi = 3.14159265358979323846;

MeshPtr disc_mesh(int count) { return make_boundary_mesh(make_ball(2, {0.0, 0.0}, 1.0), count); }

// Expected total-variation of an empirical multinomial around its mean:
// sum_j E|p_hat_j - p_j| / 2 under the normal approximation.
double sampling_bound(const std::vector<double>& p, double trials) {
    double s = 0.0;
    for (double q : p) s += std::sqrt(2.0 * q * (1.0 - q) / (kPi * trials));
    return 0.5 * s;
}

}  // namespace

TEST_CASE("poisson weights at the center are the arc weights") {
    const auto domain = make_ball(2, {0.0, 0.0}, 1.0);
    const auto mesh = make_boundary_mesh(domain, 256);
    const auto mu = poisson_weights(domain, {0.0, 0.0}, mesh);
    validate_measure(mu);
    for (int j = 0; j < mesh->count(); ++j)
        CHECK(std::abs(mu.weights[j] - mesh->arc_weights[j]) <= 1e-10);
}

TEST_CASE("poisson density ratios at x = (1/2, 0)") {
    const auto domain = make_ball(2, {0.0, 0.0}, 1.0);
    const auto mesh = make_boundary_mesh(domain, 256);
    const auto mu = poisson_weights(domain, {0.5, 0.0}, mesh);
    // Relative density (weight / arc weight): 0.75/0.25 = 3 at tau = (1,0)
    // and 0.75/2.25 = 1/3 at tau = (-1,0).
    CHECK(mu.weights[0] / mesh->arc_weights[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(mu.weights[128] / mesh->arc_weights[128] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)poisson_weights(domain, {1.0, 0.0}, mesh), std::invalid_argument);
    CHECK_THROWS_AS((void)poisson_weights(domain, {1.5, 0.0}, mesh), std::invalid_argument);
}

TEST_CASE("finite-difference Laplace oracle confirms arc masses") {
    const auto domain = make_ball(2, {0.0, 0.0}, 1.0);
    const int m = 256;
    const auto mesh = make_boundary_mesh(domain, m);
    const double edge = 2.0 * kPi * 23.5 / m;  // arc edges fall between nodes
    auto in_arc = [&](double theta) {
        double t = std::remainder(theta, 2.0 * kPi);
        return std::abs(t) <= edge;
    };
    const oracle::DiscLaplace fd(64, 256, [&](double theta) { return in_arc(theta) ? 1.0 : 0.0; });
    for (const Vec& x : {Vec{0.5, 0.0}, Vec{0.3, 0.2}}) {
        const auto mu = poisson_weights(domain, x, mesh);
        double arc_mass = 0.0;
        for (int j = 0; j < m; ++j) {
            const double theta = 2.0 * kPi * j / m;
            if (in_arc(theta)) arc_mass += mu.weights[j];
        }
        CHECK(arc_mass == doctest::Approx(fd.value_at(x[0], x[1])).epsilon(0.02));
        CHECK(std::abs(arc_mass - fd.value_at(x[0], x[1])) <= 5e-3);
    }
}

TEST_CASE("walk-on-spheres: uniform at the center, kernel off-center") {
    const auto domain = make_ball(2, {0.0, 0.0}, 1.0);
    const auto mesh = disc_mesh(256);
    const std::int64_t trials = 200000;
    const auto at_center = wos_measure(domain, {0.0, 0.0}, mesh, trials, 2e-4, 17);
    validate_measure(at_center);
    const std::vector<double> uniform(mesh->count(), 1.0 / mesh->count());
    CHECK(total_variation(at_center.weights, uniform) <= 4.0 / std::sqrt(static_cast<double>(trials)) + 0.02);

    const auto exact = poisson_weights(domain, {0.5, 0.0}, mesh);
    const auto walked = wos_measure(domain, {0.5, 0.0}, mesh, trials, 2e-4, 18);
    CHECK(total_variation(exact.weights, walked.weights) <= 3.0 * sampling_bound(exact.weights, trials) + 1e-3);
}

TEST_CASE("walk-on-spheres is deterministic for a fixed seed") {
    const auto domain = make_ball(2, {0.0, 0.0}, 1.0);
    const auto mesh = disc_mesh(64);
    const auto a = wos_measure(domain, {0.3, -0.2}, mesh, 5000, 2e-4, 1234);
    const auto b = wos_measure(domain, {0.3, -0.2}, mesh, 5000, 2e-4, 1234);
    for (int j = 0; j < mesh->count(); ++j) CHECK(a.weights[j] == b.weights[j]);
}

TEST_CASE("walk-on-spheres agreement under shell refinement") {
    const auto domain = make_ball(2, {0.0, 0.0}, 1.0);
    const auto mesh = disc_mesh(128);
    const std::int64_t trials = 100000;
    const auto coarse = wos_measure(domain, {0.5, 0.0}, mesh, trials, 4e-4, 5);
    const auto fine = wos_measure(domain, {0.5, 0.0}, mesh, trials, 2e-4, 6);
    const auto exact = poisson_weights(domain, {0.5, 0.0}, mesh);
    const double bound = sampling_bound(exact.weights, trials);
    CHECK(total_variation(coarse.weights, fine.weights) <= 2.0 * (3.0 * bound) + 1e-3);
}

TEST_CASE("kernel/walk agreement at 10 random interior points, 1e6 trials") {
    const auto domain = make_ball(2, {0.0, 0.0}, 1.0);
    const auto mesh = disc_mesh(256);
    Rng rng(2718);
    for (int i = 0; i < 10; ++i) {
        const double r = 0.85 * std::sqrt(rng.uniform01());
        const double a = rng.uniform(0.0, 2.0 * kPi);
        const Vec x{r * std::cos(a), r * std::sin(a)};
        const auto exact = poisson_weights(domain, x, mesh);
        const auto walked = wos_measure(domain, x, mesh, 1000000, 2e-4, 9000 + i);
        CHECK(total_variation(exact.weights, walked.weights) <=
              3.0 * sampling_bound(exact.weights, 1000000.0));
    }
}

TEST_CASE("walk budget guard identifies the trial") {
    // A fake domain whose interior distance never shrinks below the shell.
    const auto stuck = make_general_2d([](const Vec&) { return -0.5; },
                                       [](double t) {
                                           return Vec{std::cos(2.0 * kPi * t), std::sin(2.0 * kPi * t)};
                                       });
    const auto mesh = make_boundary_mesh(stuck, 16);
    try {
        (void)wos_measure(stuck, {0.0, 0.0}, mesh, 1, 1e-4, 7);
        FAIL("expected GuardError");
    } catch (const GuardError& e) {
        CHECK(std::string(e.what()).find("trial 0") != std::string::npos);
    }
}

TEST_CASE("general domain: affine data is reproduced by the walk") {
    // Star-shaped domain rho(theta) = 1 + 0.2 cos(3 theta).
    auto rho = [](double theta) { return 1.0 + 0.2 * std::cos(3.0 * theta); };
    auto param = [&](double t) {
        const double theta = 2.0 * kPi * t;
        return Vec{rho(theta) * std::cos(theta), rho(theta) * std::sin(theta)};
    };
    // Signed distance via a fine polyline.
    const int fine = 4096;
    auto polyline = std::make_shared<std::vector<Vec>>();
    for (int i = 0; i < fine; ++i) polyline->push_back(param(static_cast<double>(i) / fine));
    auto sdf = [polyline, rho](const Vec& p) {
        double best = 1e300;
        for (const auto& q : *polyline) {
            const double dx = p[0] - q[0], dy = p[1] - q[1];
            best = std::min(best, dx * dx + dy * dy);
        }
        const double r = std::hypot(p[0], p[1]);
        const double theta = std::atan2(p[1], p[0]);
        const double sign = (r < rho(theta)) ? -1.0 : 1.0;
        return sign * std::sqrt(best);
    };
    const auto domain = make_general_2d(sdf, param);
    const auto mesh = make_boundary_mesh(domain, 128);
    double wsum = 0.0;
    for (double w : mesh->arc_weights) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
    for (const Vec& node : mesh->nodes) CHECK(std::abs(sdf(node)) <= 1e-8);

    // Harmonic extension of an affine function equals the function.
    std::vector<double> data(mesh->count());
    const Vec a{0.7, -0.4};
    for (int j = 0; j < mesh->count(); ++j) data[j] = dot(a, mesh->nodes[j]) + 0.25;
    WosConfig cfg;
    cfg.trials = 60000;
    cfg.shell = 2e-4;
    cfg.seed = 31;
    const Vec x{0.2, 0.1};
    const double got = harmonic_extension(domain, mesh, data, x, cfg);
    CHECK(got == doctest::Approx(dot(a, x) + 0.25).epsilon(0.02));
    CHECK_THROWS_AS((void)measure_at(domain, x, mesh), std::invalid_argument);
}

TEST_CASE("mean value identity on the disc") {
    const auto domain = make_ball(2, {0.0, 0.0}, 1.0);
    const auto mesh = disc_mesh(256);
    CHECK(mean_value_residual(domain, {0.0, 0.0}, 0.1, mesh, 64) <= 1e-3);
    CHECK(mean_value_residual(domain, {0.3, 0.2}, 0.05, mesh, 64) <= 1e-3);

    // Residual shrinks under epsilon refinement.
    double prev = 1e9;
    for (double eps : {0.2, 0.1, 0.05}) {
        const double r = mean_value_residual(domain, {0.0, 0.0}, eps, mesh, 64);
        CHECK(r <= prev + 1e-12);
        prev = r;
    }
    CHECK_THROWS_AS((void)mean_value_residual(domain, {0.95, 0.0}, 0.1, mesh, 64), std::invalid_argument);
    CHECK_THROWS_AS((void)mean_value_residual(domain, {0.0, 0.0}, 0.1, mesh, 4), std::invalid_argument);
}

TEST_CASE("harmonic extension examples") {
    const auto domain = make_ball(2, {0.0, 0.0}, 1.0);
    const auto mesh = disc_mesh(256);
    std::vector<double> ones(mesh->count(), 1.0);
    std::vector<double> cosd(mesh->count());
    for (int j = 0; j < mesh->count(); ++j) cosd[j] = std::cos(2.0 * kPi * j / mesh->count());

    Rng rng(5);
    for (int i = 0; i < 10; ++i) {
        const double r = 0.9 * std::sqrt(rng.uniform01());
        const double a = rng.uniform(0.0, 2.0 * kPi);
        const Vec x{r * std::cos(a), r * std::sin(a)};
        CHECK(harmonic_extension(domain, mesh, ones, x) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(harmonic_extension(domain, mesh, cosd, {0.5, 0.0}) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(std::abs(harmonic_extension(domain, mesh, cosd, {0.0, 0.0}))  <= 1e-12);
}

TEST_CASE("harmonicity: discrete laplacian of extensions is tiny") {
    const auto domain = make_ball(2, {0.0, 0.0}, 1.0);
    const auto mesh = disc_mesh(256);
    std::vector<double> cosd(mesh->count()), cos3d(mesh->count());
    for (int j = 0; j < mesh->count(); ++j) {
        const double t = 2.0 * kPi * j / mesh->count();
        cosd[j] = std::cos(t);
        cos3d[j] = std::cos(3.0 * t);
    }
    auto stencil = [&](const std::vector<double>& data, const Vec& x, double h) {
        const double u0 = harmonic_extension(domain, mesh, data, x);
        const double ue = harmonic_extension(domain, mesh, data, {x[0] + h, x[1]});
        const double uw = harmonic_extension(domain, mesh, data, {x[0] - h, x[1]});
        const double un = harmonic_extension(domain, mesh, data, {x[0], x[1] + h});
        const double us = harmonic_extension(domain, mesh, data, {x[0], x[1] - h});
        return (ue + uw + un + us - 4.0 * u0) / (h * h);
    };
    Rng rng(99);
    const double h = 0.02;
    for (int i = 0; i < 50; ++i) {
        const double r = 0.9 * std::sqrt(rng.uniform01());
        const double a = rng.uniform(0.0, 2.0 * kPi);
        const Vec x{r * std::cos(a), r * std::sin(a)};
        CHECK(std::abs(stencil(cosd, x, h)) <= 1e-3);
        CHECK(std::abs(stencil(cos3d, x, h)) <= 1e-6);
    }
}

TEST_CASE("interval domain (m = 1): harmonic measure is linear interpolation") {
    const auto seg = make_ball(1, {0.5}, 0.5);  // the interval (0, 1)
    const auto mesh = make_boundary_mesh(seg, 2);
    REQUIRE(mesh->count() == 2);
    CHECK(mesh->nodes[0][0] == doctest::Approx(0.0));
    CHECK(mesh->nodes[1][0] == doctest::Approx(1.0));
    for (double t : {0.1, 0.25, 0.5, 0.9}) {
        const auto mu = poisson_weights(seg, {t}, mesh);
        CHECK(mu.weights[0] == doctest::Approx(1.0 - t).epsilon(1e-12));
        CHECK(mu.weights[1] == doctest::Approx(t).epsilon(1e-12));
    }
}

TEST_CASE("3d ball: center weights uniform, mean value at modest accuracy") {
    const auto ball = make_ball(3, {0.0, 0.0, 0.0}, 1.0);
    const auto mesh = make_boundary_mesh(ball, 512);
    const auto mu = poisson_weights(ball, {0.0, 0.0, 0.0}, mesh);
    for (int j = 0; j < mesh->count(); ++j)
        CHECK(std::abs(mu.weights[j] - mesh->arc_weights[j]) <= 1e-10);
    // Low-discrepancy sphere quadrature is not spectral; accuracy is
    // correspondingly coarser than on the disc.
    CHECK(mean_value_residual(ball, {0.0, 0.0, 0.0}, 0.1, mesh, 128) <= 0.05);
}
