#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "viscoplast/oracles.hpp"
#include "viscoplast/transport.hpp"
#include "test_helpers.hpp"

using namespace viscoplast;

TEST_CASE("advance_density: frozen field, CFL guard, exact mass conservation") {
    PeriodicGrid g(1, 64);
    Rng rng(61);
    const PeriodicField rho = test::random_smooth_scalar(rng, g, 0.3, 1.0);

    PeriodicField u0(g, Rank::vector);
    const PeriodicField same = transport::advance_density(rho, u0, 1e-2);
    CHECK(test::l2_diff(same, rho) <= 1e-14);

    auto u = make_vector(g, [](const std::array<double, 3>& x) {
        return std::array<double, 3>{0.4 * std::sin(x[0]), 0, 0};
    });
    const double dt_max = 0.5 * g.h() / 0.4;
    CHECK_THROWS_AS((void)transport::advance_density(rho, u, 2.0 * dt_max), CFLViolation);

    PeriodicField r = rho;
    const double mass0 = integral(r);
    for (int s = 0; s < 100; ++s)
        r = transport::advance_density(r, u, 0.5 * dt_max);
    CHECK(std::abs(integral(r) - mass0) <= 1e-12 * mass0);
}

TEST_CASE("constant advection translates the profile") {
    PeriodicGrid g(1, 128);
    auto rho = make_scalar(g, [](const std::array<double, 3>& x) {
        return 1.0 + std::exp(2.0 * (std::cos(x[0]) - 1.0)); // sine bump
    });
    const double c = 0.7;
    auto u = make_vector(g, [&](const std::array<double, 3>&) {
        return std::array<double, 3>{c, 0, 0};
    });
    double prev_err = 0.0;
    for (double dt : {4e-3, 2e-3}) {
        PeriodicField r = rho;
        const int steps = static_cast<int>(std::round(0.4 / dt));
        for (int s = 0; s < steps; ++s)
            r = transport::advance_density(r, u, dt);
        const double T = steps * dt;
        double err = 0.0;
        for (std::int64_t i = 0; i < g.num_nodes(); ++i) {
            const double x = g.coords(i)[0] - c * T;
            err = std::max(err, std::abs(r.at(0, i) - (1.0 + std::exp(2.0 * (std::cos(x) - 1.0)))));
        }
        if (prev_err > 0.0)
            CHECK(err <= 0.3 * prev_err); // second order: ratio ~ 1/4
        prev_err = err;
        CHECK(err <= 1e-4);
    }
}

TEST_CASE("cross-validation against the semi-Lagrangian oracle") {
    PeriodicGrid g(1, 128);
    auto rho = make_scalar(g, [](const std::array<double, 3>& x) {
        return 1.0 + 0.4 * std::sin(x[0]);
    });
    auto u = make_vector(g, [](const std::array<double, 3>& x) {
        return std::array<double, 3>{0.3 * std::sin(x[0] + 0.7), 0, 0};
    });
    const double dt = 0.2 * g.h() / 0.3;
    PeriodicField r = rho;
    std::vector<double> rs(static_cast<size_t>(g.n)), us(static_cast<size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        rs[static_cast<size_t>(i)] = rho.at(0, i);
        us[static_cast<size_t>(i)] = u.at(0, i);
    }
    for (int s = 0; s < 10; ++s) {
        r = transport::advance_density(r, u, dt);
        rs = oracles::semi_lagrangian_density_1d(rs, us, g.length, dt);
    }
    double diff = 0.0;
    for (int i = 0; i < g.n; ++i)
        diff = std::max(diff, std::abs(r.at(0, i) - rs[static_cast<size_t>(i)]));
    CHECK(diff <= 1e-3);
}

TEST_CASE("negative clipping reports removed mass") {
    PeriodicGrid g(1, 32);
    auto rho = make_scalar(g, [](const std::array<double, 3>& x) {
        return 0.1 * std::sin(x[0]); // takes both signs
    });
    PeriodicField r = rho;
    const double clipped = transport::clip_negative(r);
    CHECK(clipped > 0.0);
    double mn = 1e300;
    for (double v : r.values())
        mn = std::min(mn, v);
    CHECK(mn >= 0.0);
    // integral of the negative part of 0.1 sin = 0.2
    CHECK(clipped == doctest::Approx(0.2).epsilon(1e-3));
}

TEST_CASE("density exponential envelopes") {
    PeriodicGrid g(1, 128);
    auto rho0 = make_scalar(g, [](const std::array<double, 3>& x) {
        return 1.0 + 0.3 * std::sin(x[0]);
    });

    // u = 0: envelopes equal [min rho0, max rho0], violation 0
    transport::DensityPath path;
    std::vector<PeriodicField> u_path;
    PeriodicField u0(g, Rank::vector);
    path.snapshots = {rho0, rho0};
    path.times = {0.0, 1.0};
    u_path = {u0, u0};
    auto rep = transport::density_bounds_check(path, u_path, rho0);
    CHECK(rep.lower.back() == doctest::Approx(0.7));
    CHECK(rep.upper.back() == doctest::Approx(1.3));
    CHECK(rep.max_violation <= 1e-14);

    // generic compressive flow: envelope respected within discretization error
    auto u = make_vector(g, [](const std::array<double, 3>& x) {
        return std::array<double, 3>{0.3 * std::sin(x[0]), 0, 0};
    });
    const double dt = 0.2 * g.h() / 0.3;
    transport::DensityPath path2;
    std::vector<PeriodicField> u_path2;
    PeriodicField r = rho0;
    path2.snapshots.push_back(r);
    path2.times.push_back(0.0);
    u_path2.push_back(u);
    for (int s = 1; s <= 30; ++s) {
        r = transport::advance_density(r, u, dt);
        path2.snapshots.push_back(r);
        path2.times.push_back(s * dt);
        u_path2.push_back(u);
    }
    auto rep2 = transport::density_bounds_check(path2, u_path2, rho0);
    CHECK(rep2.max_violation <= 1e-3);
}

TEST_CASE("pressure transport residual vanishes at the discretization order") {
    PeriodicGrid g(1, 128);
    FluidParams params;
    params.a = 1.0;
    params.gamma = 1.4;
    auto rho0 = make_scalar(g, [](const std::array<double, 3>& x) {
        return 1.0 + 0.3 * std::sin(x[0]);
    });
    auto u = make_vector(g, [](const std::array<double, 3>& x) {
        return std::array<double, 3>{0.25 * std::cos(x[0]), 0, 0};
    });

    // u = 0: pressure constant in time, residual at roundoff
    {
        transport::DensityPath path;
        std::vector<PeriodicField> u_path;
        PeriodicField zero_u(g, Rank::vector);
        for (int s = 0; s < 3; ++s) {
            path.snapshots.push_back(rho0);
            path.times.push_back(s * 0.01);
            u_path.push_back(zero_u);
        }
        const auto res = transport::pressure_residual(path, u_path, params);
        CHECK(res.size() == 1);
        CHECK(res[0] <= 1e-12);
    }

    // dt-refinement: residual decays at second order
    double prev = 0.0;
    for (double dt : {2e-3, 1e-3}) {
        transport::DensityPath path;
        std::vector<PeriodicField> u_path;
        PeriodicField r = rho0;
        for (int s = 0; s <= 4; ++s) {
            path.snapshots.push_back(r);
            path.times.push_back(s * dt);
            u_path.push_back(u);
            r = transport::advance_density(r, u, dt);
        }
        const auto res = transport::pressure_residual(path, u_path, params);
        double mx = 0.0;
        for (double v : res)
            mx = std::max(mx, v);
        if (prev > 0.0)
            CHECK(mx <= 0.35 * prev);
        prev = mx;
    }
}
