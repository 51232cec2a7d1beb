#include "viscoplast/oracles.hpp"

#include <cmath>
#include <complex>

namespace viscoplast::oracles {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void decompose(std::int64_t node, int dim, int n, int idx[3]) {
    idx[0] = idx[1] = idx[2] = 0;
    for (int a = dim - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(node % n);
        node /= n;
    }
}

// Gaussian elimination with partial pivoting on a small complex system.
void solve_small(std::complex<double> A[3][3], std::complex<double> b[3], int d) {
    for (int col = 0; col < d; ++col) {
        int piv = col;
        for (int r = col + 1; r < d; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col]))
                piv = r;
        if (piv != col) {
            for (int c = 0; c < d; ++c)
                std::swap(A[col][c], A[piv][c]);
            std::swap(b[col], b[piv]);
        }
        for (int r = col + 1; r < d; ++r) {
            const std::complex<double> m = A[r][col] / A[col][col];
            for (int c = col; c < d; ++c)
                A[r][c] -= m * A[col][c];
            b[r] -= m * b[col];
        }
    }
    for (int r = d - 1; r >= 0; --r) {
        std::complex<double> acc = b[r];
        for (int c = r + 1; c < d; ++c)
            acc -= A[r][c] * b[c];
        b[r] = acc / A[r][r];
    }
}

int wrap(int i, int n) { return ((i % n) + n) % n; }

} // namespace

PeriodicField lame_mode_solve(const FluidParams& p, const PeriodicField& f) {
    const PeriodicGrid& g = f.grid();
    const int d = g.dim;
    const double k_scale = 2.0 * kPi / g.length;

    std::vector<std::vector<std::complex<double>>> spec;
    spec.reserve(static_cast<size_t>(d));
    for (int c = 0; c < d; ++c)
        spec.push_back(forward_fft(g, f.component(c)));

    const std::int64_t nn = g.num_nodes();
    int idx[3];
    for (std::int64_t node = 0; node < nn; ++node) {
        decompose(node, d, g.n, idx);
        double k[3] = {0, 0, 0};
        double ksq = 0.0;
        bool nyquist = false;
        for (int a = 0; a < d; ++a) {
            const int m = mode_number(idx[a], g.n);
            if (std::abs(m) == g.n / 2 && m != 0)
                nyquist = true;
            k[a] = k_scale * m;
            ksq += k[a] * k[a];
        }
        const auto sn = static_cast<size_t>(node);
        if (nyquist || ksq == 0.0) {
            for (int c = 0; c < d; ++c)
                spec[static_cast<size_t>(c)][sn] = 0.0;
            continue;
        }
        std::complex<double> A[3][3] = {};
        std::complex<double> b[3] = {};
        for (int i = 0; i < d; ++i) {
            b[i] = spec[static_cast<size_t>(i)][sn];
            for (int j = 0; j < d; ++j) {
                A[i][j] = (d == 1) ? 0.0 : (p.mu + p.lambda) * k[i] * k[j];
                if (i == j)
                    A[i][j] += p.mu * ksq;
            }
        }
        solve_small(A, b, d);
        for (int c = 0; c < d; ++c)
            spec[static_cast<size_t>(c)][sn] = b[c];
    }

    PeriodicField u(g, Rank::vector);
    for (int c = 0; c < d; ++c)
        inverse_fft(g, spec[static_cast<size_t>(c)], u.component(c));
    return mean_zero_project(u);
}

FdState1d fd_compressible_ns_1d(const FluidParams& p, const std::vector<double>& rho0,
                                const std::vector<double>& u0, double length, double t_end,
                                double dt,
                                const std::function<double(double, double)>& f_ext) {
    const int n = static_cast<int>(rho0.size());
    const double h = length / n;

    auto rhs = [&](const std::vector<double>& rho, const std::vector<double>& m, double t,
                   std::vector<double>& drho, std::vector<double>& dm) {
        for (int i = 0; i < n; ++i) {
            const int ip = wrap(i + 1, n);
            const int im = wrap(i - 1, n);
            const double u_i = m[static_cast<size_t>(i)] / rho[static_cast<size_t>(i)];
            const double u_p = m[static_cast<size_t>(ip)] / rho[static_cast<size_t>(ip)];
            const double u_m = m[static_cast<size_t>(im)] / rho[static_cast<size_t>(im)];
            const double flux_p = m[static_cast<size_t>(ip)] * u_p;
            const double flux_m = m[static_cast<size_t>(im)] * u_m;
            const double pres_p = p.a * std::pow(rho[static_cast<size_t>(ip)], p.gamma);
            const double pres_m = p.a * std::pow(rho[static_cast<size_t>(im)], p.gamma);
            drho[static_cast<size_t>(i)] =
                -(m[static_cast<size_t>(ip)] - m[static_cast<size_t>(im)]) / (2.0 * h);
            double force = 0.0;
            if (f_ext)
                force = rho[static_cast<size_t>(i)] * f_ext(i * h, t);
            dm[static_cast<size_t>(i)] = -(flux_p - flux_m) / (2.0 * h) -
                                         (pres_p - pres_m) / (2.0 * h) +
                                         p.mu * (u_p - 2.0 * u_i + u_m) / (h * h) + force;
        }
    };

    std::vector<double> rho = rho0;
    std::vector<double> m(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        m[static_cast<size_t>(i)] =
            rho0[static_cast<size_t>(i)] * u0[static_cast<size_t>(i)];

    std::vector<double> k1r(static_cast<size_t>(n)), k1m(static_cast<size_t>(n));
    std::vector<double> k2r(static_cast<size_t>(n)), k2m(static_cast<size_t>(n));
    std::vector<double> rho1(static_cast<size_t>(n)), m1(static_cast<size_t>(n));

    double t = 0.0;
    while (t < t_end - 1e-14) {
        const double step = std::min(dt, t_end - t);
        rhs(rho, m, t, k1r, k1m);
        for (int i = 0; i < n; ++i) {
            rho1[static_cast<size_t>(i)] =
                rho[static_cast<size_t>(i)] + step * k1r[static_cast<size_t>(i)];
            m1[static_cast<size_t>(i)] =
                m[static_cast<size_t>(i)] + step * k1m[static_cast<size_t>(i)];
        }
        rhs(rho1, m1, t + step, k2r, k2m);
        for (int i = 0; i < n; ++i) {
            rho[static_cast<size_t>(i)] +=
                0.5 * step * (k1r[static_cast<size_t>(i)] + k2r[static_cast<size_t>(i)]);
            m[static_cast<size_t>(i)] +=
                0.5 * step * (k1m[static_cast<size_t>(i)] + k2m[static_cast<size_t>(i)]);
        }
        t += step;
    }

    FdState1d out;
    out.rho = rho;
    out.u.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        out.u[static_cast<size_t>(i)] =
            m[static_cast<size_t>(i)] / rho[static_cast<size_t>(i)];
    return out;
}

std::vector<double> semi_lagrangian_density_1d(const std::vector<double>& rho,
                                               const std::vector<double>& u, double length,
                                               double dt) {
    const int n = static_cast<int>(rho.size());
    const double h = length / n;

    auto interp = [&](const std::vector<double>& v, double x) {
        // periodic cubic Lagrange on the four nearest nodes
        double xn = x / h;
        xn -= std::floor(xn / n) * n;
        const int i1 = static_cast<int>(std::floor(xn));
        const double s = xn - i1;
        const double v0 = v[static_cast<size_t>(wrap(i1 - 1, n))];
        const double v1 = v[static_cast<size_t>(wrap(i1, n))];
        const double v2 = v[static_cast<size_t>(wrap(i1 + 1, n))];
        const double v3 = v[static_cast<size_t>(wrap(i1 + 2, n))];
        const double a0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
        const double a1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
        const double a2 = -(s + 1.0) * s * (s - 2.0) / 2.0;
        const double a3 = (s + 1.0) * s * (s - 1.0) / 6.0;
        return a0 * v0 + a1 * v1 + a2 * v2 + a3 * v3;
    };
    auto div_u = [&](double x) {
        // centered difference of the interpolated velocity
        const double eps = 0.5 * h;
        return (interp(u, x + eps) - interp(u, x - eps)) / (2.0 * eps);
    };

    std::vector<double> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = i * h;
        // RK2 backward characteristic
        const double x_mid = x - 0.5 * dt * interp(u, x);
        const double x_back = x - dt * interp(u, x_mid);
        // compression along the characteristic, midpoint sampling
        const double comp = std::exp(-dt * div_u(0.5 * (x + x_back)));
        out[static_cast<size_t>(i)] = interp(rho, x_back) * comp;
    }
    return out;
}

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(static_cast<size_t>(n));
    weights.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Newton on P_n with the Chebyshev-like initial guess
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        nodes[static_cast<size_t>(i)] = 0.5 * (1.0 - x); // map [-1,1] -> [0,1], reversed
        weights[static_cast<size_t>(i)] = 1.0 / ((1.0 - x * x) * pp * pp);
    }
}

} // namespace viscoplast::oracles
