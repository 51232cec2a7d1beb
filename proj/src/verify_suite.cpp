#include "viscoplast/verify_suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <sstream>
#include <thread>

#include "viscoplast/bingham.hpp"
#include "viscoplast/elliptic.hpp"
#include "viscoplast/oracles.hpp"
#include "viscoplast/rng.hpp"
#include "viscoplast/transport.hpp"

namespace viscoplast::cli {

namespace {

SymTensor random_sym(Rng& rng, int dim, double scale) {
    SymTensor t(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j)
            t.set(i, j, rng.uniform(-scale, scale));
    return t;
}

CheckResult check_monotonicity(std::uint64_t seed) {
    Rng rng(seed ^ 0x1111);
    const double qs[4] = {1.0, 1.25, 2.0, 3.0};
    const double deltas[2] = {0.0, 0.1};
    double worst = 0.0;
    for (int trial = 0; trial < 2000; ++trial) {
        FluidParams p;
        p.q = qs[trial % 4];
        p.delta = deltas[(trial / 4) % 2];
        if (p.q < 2.0 && p.delta == 0.0)
            p.delta = 0.1; // singular corner skipped
        const int dim = rng.uniform_int(1, 3);
        const SymTensor C = random_sym(rng, dim, 2.0);
        const SymTensor D = random_sym(rng, dim, 2.0);
        worst = std::min(worst, monotonicity_gap(p, C, D));
    }
    std::ostringstream os;
    os << "min gap " << worst;
    return {"constitutive_monotonicity", worst >= -1e-12, os.str()};
}

CheckResult check_symbol(std::uint64_t seed) {
    Rng rng(seed ^ 0x2222);
    double worst = 1e300;
    for (int trial = 0; trial < 2000; ++trial) {
        FluidParams p;
        p.mu = rng.uniform(0.1, 3.0);
        p.lambda = rng.uniform(-2.0 * p.mu + 0.05, 3.0);
        p.tau_star = rng.uniform(0.0, 3.0);
        p.delta = rng.uniform(0.01, 1.0);
        p.q = rng.uniform(1.0, 4.0);
        const int dim = rng.uniform_int(2, 3);
        const SymTensor D = random_sym(rng, dim, 2.0);
        std::array<double, 3> xi{}, er{}, ei{};
        double xn = 0.0, en = 0.0;
        for (int a = 0; a < dim; ++a) {
            xi[static_cast<size_t>(a)] = rng.uniform(-1.0, 1.0);
            er[static_cast<size_t>(a)] = rng.uniform(-1.0, 1.0);
            ei[static_cast<size_t>(a)] = rng.uniform(-1.0, 1.0);
            xn += xi[static_cast<size_t>(a)] * xi[static_cast<size_t>(a)];
            en += er[static_cast<size_t>(a)] * er[static_cast<size_t>(a)] +
                  ei[static_cast<size_t>(a)] * ei[static_cast<size_t>(a)];
        }
        xn = std::sqrt(xn);
        en = std::sqrt(en);
        for (int a = 0; a < dim; ++a) {
            xi[static_cast<size_t>(a)] /= xn;
            er[static_cast<size_t>(a)] /= en;
            ei[static_cast<size_t>(a)] /= en;
        }
        worst = std::min(worst, symbol_form(p, D, xi, er, ei));
    }
    std::ostringstream os;
    os << "min symbol value " << worst;
    return {"symbol_positivity", worst > 0.0, os.str()};
}

CheckResult check_jacobian_fd(std::uint64_t seed) {
    Rng rng(seed ^ 0x3333);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        FluidParams p;
        p.mu = rng.uniform(0.5, 2.0);
        p.lambda = rng.uniform(-0.5, 1.0);
        p.tau_star = rng.uniform(0.1, 2.0);
        p.delta = rng.uniform(0.1, 1.0);
        p.q = rng.uniform(1.0, 3.5);
        const int dim = rng.uniform_int(2, 3);
        SymTensor D = random_sym(rng, dim, 1.0);
        if (D.frobenius_sq() + p.delta * p.delta < 0.01)
            D.set(0, 0, D(0, 0) + 0.2);
        const SymTensor E = random_sym(rng, dim, 1.0);
        const double h = 1e-5;
        SymTensor Dp = D, Dm = D;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                Dp(i, j) += h * E(i, j);
                Dm(i, j) -= h * E(i, j);
            }
        const SymTensor Sp = stress_delta(p, Dp);
        const SymTensor Sm = stress_delta(p, Dm);
        // analytic derivative: 2 mu E + lambda tr(E) I + tau* dF(D)[E]
        SymTensor ref = flux_derivative(p, D, E);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                const double fd = (Sp(i, j) - Sm(i, j)) / (2.0 * h);
                double an = 2.0 * p.mu * E(i, j) + p.tau_star * ref(i, j);
                if (i == j)
                    an += p.lambda * E.trace();
                num += (fd - an) * (fd - an);
                den += an * an;
            }
        worst = std::max(worst, std::sqrt(num / std::max(den, 1e-30)));
    }
    std::ostringstream os;
    os << "max FD relative error " << worst;
    return {"stress_jacobian_fd", worst <= 1e-6, os.str()};
}

CheckResult check_field_calculus(std::uint64_t) {
    PeriodicGrid g(1, 32);
    auto f = make_scalar(g, [](const std::array<double, 3>& x) { return std::sin(x[0]); });
    const PeriodicField df = derivative(f, 0);
    double derr = 0.0;
    for (std::int64_t i = 0; i < g.num_nodes(); ++i)
        derr = std::max(derr, std::abs(df.at(0, i) - std::cos(g.coords(i)[0])));

    PeriodicGrid g2(2, 32);
    auto a = make_scalar(g2, [](const std::array<double, 3>& x) {
        return std::sin(3.0 * x[0]) * std::cos(2.0 * x[1]);
    });
    auto b = make_scalar(g2, [](const std::array<double, 3>& x) {
        return std::cos(x[0]) + 0.5 * std::sin(x[1] + 1.0);
    });
    const double ibp = std::abs(inner(derivative(a, 0), b) + inner(a, derivative(b, 0)));
    const PeriodicField mixed = derivative(derivative(a, 0), 1) -
                                derivative(derivative(a, 1), 0);
    const double mix = max_abs(mixed);

    std::ostringstream os;
    os << "d/dx err " << derr << ", IBP defect " << ibp << ", mixed partials " << mix;
    return {"spectral_calculus", derr <= 1e-12 && ibp <= 1e-10 && mix <= 1e-10, os.str()};
}

CheckResult check_newtonian_oracle(std::uint64_t seed) {
    Rng rng(seed ^ 0x4444);
    double worst = 0.0;
    for (int dim = 1; dim <= 2; ++dim) {
        PeriodicGrid g(dim, dim == 1 ? 64 : 32);
        FluidParams p;
        p.mu = 1.2;
        p.lambda = dim == 1 ? 0.0 : -0.7;
        p.tau_star = 0.0;
        // random band-limited mean-zero f
        PeriodicField f(g, Rank::vector);
        for (int c = 0; c < dim; ++c) {
            const double a1 = rng.uniform(-1.0, 1.0);
            const double a2 = rng.uniform(-1.0, 1.0);
            const double ph = rng.uniform(0.0, 6.28);
            for (std::int64_t node = 0; node < g.num_nodes(); ++node) {
                const auto x = g.coords(node);
                f.at(c, node) = a1 * std::sin(x[0] + ph) +
                                a2 * std::cos(2.0 * x[0] - 1.0) *
                                    (dim > 1 ? std::cos(x[1]) : 1.0);
            }
        }
        f = mean_zero_project(f);
        elliptic::EllipticProblem prob{p, f};
        const auto sol = elliptic::solve(prob, 1e-12, 40);
        const PeriodicField ref = oracles::lame_mode_solve(p, f);
        const PeriodicField diff = sol.u - ref;
        worst = std::max(worst, std::sqrt(inner(diff, diff)));
    }
    std::ostringstream os;
    os << "max |newton - mode solve| " << worst;
    return {"newtonian_oracle_equivalence", worst <= 1e-10, os.str()};
}

CheckResult check_w2p(std::uint64_t) {
    PeriodicGrid g(1, 256);
    FluidParams p;
    p.mu = 1.0;
    p.tau_star = 1.0;
    p.delta = 0.1;
    p.q = 1.5;
    auto u_ex = make_vector(g, [](const std::array<double, 3>& x) {
        return std::array<double, 3>{0.3 * std::sin(x[0]) + 0.1 * std::sin(2.0 * x[0]), 0, 0};
    });
    const PeriodicField f = elliptic::apply_operator(p, u_ex);
    elliptic::EllipticProblem prob{p, f};
    const auto sol = elliptic::solve(prob, 1e-10, 80);
    bool ok = true;
    std::ostringstream os;
    for (double pe : {2.0, 4.0, 6.0}) {
        const auto rep = elliptic::verify_w2p_1d(p, sol.u, f, pe);
        ok = ok && rep.satisfied;
        os << "p=" << pe << ": lhs/rhs " << rep.lhs / rep.rhs << "  ";
    }
    return {"w2p_manufactured", ok, os.str()};
}

CheckResult check_transport(std::uint64_t seed) {
    Rng rng(seed ^ 0x5555);
    PeriodicGrid g(1, 128);
    const double phase = rng.uniform(0.0, 1.0);
    auto rho = make_scalar(g, [&](const std::array<double, 3>& x) {
        return 1.0 + 0.4 * std::sin(x[0]) + 0.1 * std::cos(2.0 * x[0] + phase);
    });
    auto u = make_vector(g, [](const std::array<double, 3>& x) {
        return std::array<double, 3>{0.3 * std::sin(x[0] + 0.7), 0, 0};
    });
    const double mass0 = integral(rho);
    const double dt = 0.2 * g.h() / 0.3;
    PeriodicField r = rho;
    std::vector<double> r_sl(static_cast<size_t>(g.n));
    std::vector<double> u_std(static_cast<size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        r_sl[static_cast<size_t>(i)] = rho.at(0, i);
        u_std[static_cast<size_t>(i)] = u.at(0, i);
    }
    for (int step = 0; step < 10; ++step) {
        r = transport::advance_density(r, u, dt);
        r_sl = oracles::semi_lagrangian_density_1d(r_sl, u_std, g.length, dt);
    }
    const double drift = std::abs(integral(r) - mass0) / mass0;
    double cross = 0.0;
    for (int i = 0; i < g.n; ++i)
        cross = std::max(cross, std::abs(r.at(0, i) - r_sl[static_cast<size_t>(i)]));
    std::ostringstream os;
    os << "mass drift " << drift << ", |spectral - semi-Lagrangian| " << cross;
    return {"transport_conservation", drift <= 1e-12 && cross <= 5e-3, os.str()};
}

} // namespace

int max_workers() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1)
        hw = 1;
    if (const char* env = std::getenv("VISCOPLAST_THREADS")) {
        const int limit = std::atoi(env);
        if (limit >= 1)
            hw = std::min(hw, limit);
    }
    return hw;
}

std::vector<CheckResult> run_verify_suite(std::uint64_t seed) {
    using Check = CheckResult (*)(std::uint64_t);
    const Check checks[] = {check_monotonicity, check_symbol,       check_jacobian_fd,
                            check_field_calculus, check_newtonian_oracle, check_w2p,
                            check_transport};
    const int n = static_cast<int>(std::size(checks));
    std::vector<CheckResult> results(static_cast<size_t>(n));

    const int workers = std::min(max_workers(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i)
            results[static_cast<size_t>(i)] = checks[i](seed);
        return results;
    }
    std::vector<std::future<CheckResult>> futures;
    futures.reserve(static_cast<size_t>(n));
    int launched = 0;
    while (launched < n) {
        const int batch = std::min(workers, n - launched);
        for (int i = 0; i < batch; ++i)
            futures.push_back(
                std::async(std::launch::async, checks[launched + i], seed));
        for (int i = 0; i < batch; ++i)
            results[static_cast<size_t>(launched + i)] = futures[static_cast<size_t>(launched + i)].get();
        launched += batch;
    }
    return results;
}

} // namespace viscoplast::cli
