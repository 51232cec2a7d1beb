#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "viscoplast/bingham.hpp"
#include "test_helpers.hpp"

using namespace viscoplast;

namespace {

FluidParams bingham_params(double mu, double tau) {
    FluidParams p;
    p.mu = mu;
    p.lambda = 0.0;
    p.tau_star = tau;
    p.q = 1.0;
    p.delta = 0.1;
    return p;
}

} // namespace

TEST_CASE("detect_plugs: whole domain, isolated zeros, empty") {
    PeriodicGrid g(1, 256);
    auto u_const = make_vector(g, [](const std::array<double, 3>&) {
        return std::array<double, 3>{1.5, 0, 0};
    });
    auto whole = bingham::detect_plugs(u_const, 0.01);
    REQUIRE(whole.intervals.size() == 1);
    CHECK(whole.intervals[0].first == doctest::Approx(0.0));
    CHECK(whole.intervals[0].second == doctest::Approx(g.length));

    // u = sin x: |cos x| < 0.01 only right at x = pi/2 and 3 pi/2
    auto u_sin = make_vector(g, [](const std::array<double, 3>& x) {
        return std::array<double, 3>{std::sin(x[0]), 0, 0};
    });
    auto two = bingham::detect_plugs(u_sin, 0.01);
    REQUIRE(two.intervals.size() == 2);
    CHECK(two.intervals[0].first == doctest::Approx(3.14159265 / 2).epsilon(1e-2));
    CHECK(two.intervals[1].first == doctest::Approx(3 * 3.14159265 / 2).epsilon(1e-2));

    // threshold below the roundoff floor: nothing qualifies
    auto none = bingham::detect_plugs(u_sin, 1e-30);
    CHECK(none.empty());
}

TEST_CASE("plug coverage is monotone in the threshold") {
    PeriodicGrid g(1, 256);
    Rng rng(89);
    const PeriodicField u = test::random_smooth_vector(rng, g, 0.5);
    auto small = bingham::detect_plugs(u, 0.02);
    auto large = bingham::detect_plugs(u, 0.1);
    for (std::int64_t i = 0; i < g.num_nodes(); ++i) {
        const double x = g.coords(i)[0];
        if (small.contains(x))
            CHECK(large.contains(x));
    }
}

TEST_CASE("verify_yield: rigid state, Taylor bound on the flow-law residual") {
    PeriodicGrid g(1, 256);
    FluidParams p = bingham_params(1.0, 2.0);
    auto u_const = make_vector(g, [](const std::array<double, 3>&) {
        return std::array<double, 3>{0.7, 0, 0};
    });
    auto plugs = bingham::detect_plugs(u_const, 0.01);
    auto rep = bingham::verify_yield(p, u_const, 0.05, plugs);
    CHECK(rep.has_plug);
    CHECK_FALSE(rep.has_flow);
    CHECK(rep.max_plug_stress_excess == doctest::Approx(0.0));

    // generic profile: residual outside plugs obeys tau delta^2 / (2 s^2)
    auto u = make_vector(g, [](const std::array<double, 3>& x) {
        return std::array<double, 3>{std::sin(x[0]) + 0.3 * std::sin(2 * x[0]), 0, 0};
    });
    const double delta = 0.02;
    auto plugs2 = bingham::detect_plugs(u, 10.0 * delta);
    auto rep2 = bingham::verify_yield(p, u, delta, plugs2);
    CHECK(rep2.has_flow);
    CHECK(rep2.min_flow_strain >= 10.0 * delta);
    const double bound =
        p.tau_star * delta * delta / (2.0 * rep2.min_flow_strain * rep2.min_flow_strain);
    CHECK(rep2.max_flow_law_residual <= bound);
}

TEST_CASE("regularized 1D stress is strongly monotone") {
    Rng rng(97);
    for (int trial = 0; trial < 2000; ++trial) {
        FluidParams p = bingham_params(rng.uniform(0.5, 2.0), rng.uniform(0.0, 3.0));
        p.delta = rng.uniform(0.01, 0.5);
        const double s1 = rng.uniform(-3.0, 3.0);
        const double s2 = rng.uniform(-3.0, 3.0);
        const double gap =
            (stress_delta_1d(p, s1) - stress_delta_1d(p, s2)) * (s1 - s2);
        CHECK(gap >= p.mu * (s1 - s2) * (s1 - s2) - 1e-12);
    }
}

TEST_CASE("W2p bound is uniform across the compat solves of a delta schedule") {
    PeriodicGrid g(1, 256);
    auto rho0 = make_scalar(g, [](const std::array<double, 3>& x) {
        return 1.0 + 0.3 * std::sin(x[0]);
    });
    auto g_f = make_vector(g, [](const std::array<double, 3>& x) {
        return std::array<double, 3>{0.5 * std::cos(x[0]), 0, 0};
    });
    for (double delta : {0.1, 0.05, 0.025}) {
        FluidParams p = bingham_params(1.0, 0.4);
        p.delta = delta;
        const PeriodicField u0 = elliptic::compat_init(p, rho0, g_f, 1e-10);
        const PeriodicField rhs = elliptic::compat_rhs(p, rho0, g_f);
        for (double pe : {2.0, 4.0, 6.0})
            CHECK(elliptic::verify_w2p_1d(p, u0, rhs, pe).satisfied);
    }
}

TEST_CASE("continuation: schedule validation, single leg, tau = 0 degeneracy") {
    PeriodicGrid g(1, 64);
    auto rho0 = make_scalar(g, [](const std::array<double, 3>& x) {
        return 1.0 + 0.2 * std::sin(x[0]);
    });
    auto g_f = make_vector(g, [](const std::array<double, 3>& x) {
        return std::array<double, 3>{0.3 * std::cos(x[0]), 0, 0};
    });
    bingham::ContinuationConfig cfg;
    cfg.run.t_end = 0.02;
    cfg.run.output_every = 1000000;

    FluidParams p = bingham_params(1.0, 0.5);
    CHECK_THROWS_AS(
        (void)bingham::continuation(p, rho0, g_f, {0.05, 0.1}, cfg), // increasing
        ConfigError);
    CHECK_THROWS_AS((void)bingham::continuation(p, rho0, g_f, {}, cfg), ConfigError);

    // single-entry schedule degenerates to one run
    auto single = bingham::continuation(p, rho0, g_f, {0.1}, cfg);
    CHECK(single.legs.size() == 1);
    CHECK(single.cauchy_gaps.empty());
    CHECK_FALSE(single.legs[0].failed);

    // tau = 0: delta is inert, all legs identical
    FluidParams pn = bingham_params(1.0, 0.0);
    auto degen = bingham::continuation(pn, rho0, g_f, {0.1, 0.05, 0.025}, cfg);
    REQUIRE(degen.cauchy_gaps.size() == 2);
    for (double gap : degen.cauchy_gaps)
        CHECK(gap <= 1e-10);

    // cold-start mode runs the legs independently (and concurrently) with the
    // same results
    bingham::ContinuationConfig cold = cfg;
    cold.warm_start = false;
    auto cold_res = bingham::continuation(pn, rho0, g_f, {0.1, 0.05, 0.025}, cold);
    REQUIRE(cold_res.legs.size() == 3);
    for (size_t k = 0; k < cold_res.legs.size(); ++k) {
        REQUIRE_FALSE(cold_res.legs[k].failed);
        CHECK(test::l2_diff(cold_res.legs[k].run.states.back().u,
                            degen.legs[k].run.states.back().u) <= 1e-10);
    }
}

TEST_CASE("continuation with yield-scale forcing produces coexisting plug and flow") {
    PeriodicGrid g(1, 64);
    auto rho0 = make_scalar(g, [](const std::array<double, 3>& x) {
        return 1.0 + 0.1 * std::sin(x[0]);
    });
    auto g_f = make_vector(g, [](const std::array<double, 3>& x) {
        return std::array<double, 3>{0.5 * std::cos(x[0]), 0, 0};
    });
    FluidParams p = bingham_params(1.0, 2.0);

    bingham::ContinuationConfig cfg;
    cfg.run.t_end = 0.15;
    cfg.run.output_every = 1000000;
    cfg.plug_threshold = 0.05; // the per-leg default 10 delta is for small deltas
    const PeriodicField force = make_vector(g, [](const std::array<double, 3>& x) {
        return std::array<double, 3>{3.0 * std::sin(x[0]), 0, 0};
    });
    cfg.f_ext = [force](double) { return force; };

    auto result = bingham::continuation(p, rho0, g_f, {0.1, 0.05}, cfg);
    REQUIRE(result.legs.size() == 2);
    for (const auto& leg : result.legs) {
        REQUIRE_FALSE(leg.failed);
        CHECK(leg.yield.has_plug);
        CHECK(leg.yield.has_flow);
        CHECK(!leg.plugs.empty());
    }
    REQUIRE(result.cauchy_gaps.size() == 1);
    CHECK(result.cauchy_gaps[0] > 0.0);
    CHECK(result.cauchy_gaps[0] < 0.1); // consecutive regularizations stay close
}
