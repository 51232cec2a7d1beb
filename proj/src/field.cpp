#include "viscoplast/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace viscoplast {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Upper-triangle index of symtensor component (i,j), i <= j.
int sym_index(int i, int j, int dim) {
    if (i > j)
        std::swap(i, j);
    int idx = 0;
    for (int r = 0; r < i; ++r)
        idx += dim - r;
    return idx + (j - i);
}

// Frobenius weight of each stored symtensor component (off-diagonals twice).
std::vector<double> component_weights(Rank rank, int dim) {
    const int nc = rank_components(rank, dim);
    std::vector<double> w(static_cast<size_t>(nc), 1.0);
    if (rank == Rank::symtensor) {
        int idx = 0;
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j)
                w[static_cast<size_t>(idx++)] = (i == j) ? 1.0 : 2.0;
    }
    return w;
}

void decompose(std::int64_t node, int dim, int n, int idx[3]) {
    idx[0] = idx[1] = idx[2] = 0;
    for (int a = dim - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(node % n);
        node /= n;
    }
}

// Applies op(spectrum entry, mode numbers) in place for one component.
template <typename Op>
void spectral_apply(const PeriodicGrid& grid, const double* in, double* out, Op&& op) {
    auto spectrum = forward_fft(grid, in);
    const std::int64_t nn = grid.num_nodes();
    int idx[3];
    for (std::int64_t node = 0; node < nn; ++node) {
        decompose(node, grid.dim, grid.n, idx);
        int k[3] = {0, 0, 0};
        for (int a = 0; a < grid.dim; ++a)
            k[a] = mode_number(idx[a], grid.n);
        op(spectrum[static_cast<size_t>(node)], k);
    }
    inverse_fft(grid, spectrum, out);
}

} // namespace

int rank_components(Rank rank, int dim) {
    switch (rank) {
    case Rank::scalar:
        return 1;
    case Rank::vector:
        return dim;
    case Rank::symtensor:
        return dim * (dim + 1) / 2;
    }
    return 1;
}

PeriodicField& PeriodicField::operator+=(const PeriodicField& other) {
    if (!same_layout(other))
        throw GridMismatch("field addition requires identical grid and rank");
    for (size_t i = 0; i < values_.size(); ++i)
        values_[i] += other.values_[i];
    return *this;
}

PeriodicField& PeriodicField::operator-=(const PeriodicField& other) {
    if (!same_layout(other))
        throw GridMismatch("field subtraction requires identical grid and rank");
    for (size_t i = 0; i < values_.size(); ++i)
        values_[i] -= other.values_[i];
    return *this;
}

PeriodicField& PeriodicField::operator*=(double c) {
    for (double& v : values_)
        v *= c;
    return *this;
}

void axpy(double c, const PeriodicField& x, PeriodicField& y) {
    if (!x.same_layout(y))
        throw GridMismatch("axpy requires identical grid and rank");
    for (size_t i = 0; i < y.values().size(); ++i)
        y.values()[i] += c * x.values()[i];
}

PeriodicField make_scalar(const PeriodicGrid& grid,
                          const std::function<double(const std::array<double, 3>&)>& f) {
    PeriodicField out(grid, Rank::scalar);
    const std::int64_t nn = grid.num_nodes();
    for (std::int64_t node = 0; node < nn; ++node)
        out.at(0, node) = f(grid.coords(node));
    return out;
}

PeriodicField make_vector(
    const PeriodicGrid& grid,
    const std::function<std::array<double, 3>(const std::array<double, 3>&)>& f) {
    PeriodicField out(grid, Rank::vector);
    const std::int64_t nn = grid.num_nodes();
    for (std::int64_t node = 0; node < nn; ++node) {
        const auto v = f(grid.coords(node));
        for (int c = 0; c < grid.dim; ++c)
            out.at(c, node) = v[static_cast<size_t>(c)];
    }
    return out;
}

int mode_number(int i, int n) { return (i <= n / 2) ? i : i - n; }

PeriodicField derivative(const PeriodicField& f, int axis) {
    const PeriodicGrid& g = f.grid();
    if (axis < 0 || axis >= g.dim)
        throw Error("derivative axis out of range");
    const double k_scale = 2.0 * kPi / g.length;
    PeriodicField out(g, f.rank());
    for (int c = 0; c < f.components(); ++c) {
        spectral_apply(g, f.component(c), out.component(c),
                       [&](std::complex<double>& v, const int k[3]) {
                           if (std::abs(k[axis]) == g.n / 2) {
                               v = 0.0; // Nyquist carries no odd derivative
                               return;
                           }
                           v *= std::complex<double>(0.0, k_scale * k[axis]);
                       });
    }
    return out;
}

PeriodicField dealias(const PeriodicField& f) { return project_modes(f, f.grid().n / 3); }

PeriodicField project_modes(const PeriodicField& f, int m) {
    const PeriodicGrid& g = f.grid();
    PeriodicField out(g, f.rank());
    for (int c = 0; c < f.components(); ++c) {
        spectral_apply(g, f.component(c), out.component(c),
                       [&](std::complex<double>& v, const int k[3]) {
                           for (int a = 0; a < g.dim; ++a)
                               if (std::abs(k[a]) > m) {
                                   v = 0.0;
                                   return;
                               }
                       });
    }
    return out;
}

double integral(const PeriodicField& f, int comp) {
    const std::int64_t nn = f.num_nodes();
    double acc = 0.0;
    const double* v = f.component(comp);
    for (std::int64_t i = 0; i < nn; ++i)
        acc += v[i];
    double cell = 1.0;
    for (int a = 0; a < f.grid().dim; ++a)
        cell *= f.grid().h();
    return acc * cell;
}

double mean(const PeriodicField& f, int comp) {
    double vol = 1.0;
    for (int a = 0; a < f.grid().dim; ++a)
        vol *= f.grid().length;
    return integral(f, comp) / vol;
}

std::vector<double> pointwise_modulus(const PeriodicField& f) {
    const std::int64_t nn = f.num_nodes();
    std::vector<double> m(static_cast<size_t>(nn), 0.0);
    const auto w = component_weights(f.rank(), f.grid().dim);
    for (int c = 0; c < f.components(); ++c) {
        const double* v = f.component(c);
        const double wc = w[static_cast<size_t>(c)];
        for (std::int64_t i = 0; i < nn; ++i)
            m[static_cast<size_t>(i)] += wc * v[i] * v[i];
    }
    for (double& x : m)
        x = std::sqrt(x);
    return m;
}

double lp_norm(const PeriodicField& f, double p) {
    const auto m = pointwise_modulus(f);
    if (p == kInfNorm || std::isinf(p)) {
        double mx = 0.0;
        for (double x : m)
            mx = std::max(mx, x);
        return mx;
    }
    if (!(p >= 1.0))
        throw Error("lp_norm requires 1 <= p <= inf");
    double cell = 1.0;
    for (int a = 0; a < f.grid().dim; ++a)
        cell *= f.grid().h();
    double acc = 0.0;
    for (double x : m)
        acc += std::pow(x, p);
    return std::pow(acc * cell, 1.0 / p);
}

double max_abs(const PeriodicField& f) {
    double mx = 0.0;
    for (double v : f.values())
        mx = std::max(mx, std::abs(v));
    return mx;
}

double sobolev_norm(const PeriodicField& f, int k, double p) {
    if (k < 0 || k > 2)
        throw Error("sobolev_norm supports k in {0,1,2}");
    if (p == kInfNorm || std::isinf(p))
        throw Error("sobolev_norm requires finite p");
    double acc = std::pow(lp_norm(f, p), p);
    if (k >= 1) {
        for (int a = 0; a < f.grid().dim; ++a) {
            const PeriodicField da = derivative(f, a);
            acc += std::pow(lp_norm(da, p), p);
            if (k >= 2)
                for (int b = a; b < f.grid().dim; ++b)
                    acc += std::pow(lp_norm(derivative(da, b), p), p);
        }
    }
    return std::pow(acc, 1.0 / p);
}

PeriodicField mean_zero_project(const PeriodicField& f) {
    PeriodicField out = f;
    const std::int64_t nn = f.num_nodes();
    for (int c = 0; c < f.components(); ++c) {
        const double mc = mean(f, c);
        double* v = out.component(c);
        for (std::int64_t i = 0; i < nn; ++i)
            v[i] -= mc;
    }
    return out;
}

int sym_component(int i, int j, int dim) { return sym_index(i, j, dim); }

PeriodicField divergence_sym(const PeriodicField& S) {
    if (S.rank() != Rank::symtensor)
        throw Error("divergence_sym expects a symtensor field");
    const PeriodicGrid& g = S.grid();
    const int d = g.dim;
    const std::int64_t nn = g.num_nodes();
    PeriodicField out(g, Rank::vector);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            PeriodicField comp(g, Rank::scalar);
            const double* src = S.component(sym_index(i, j, d));
            std::copy(src, src + nn, comp.component(0));
            const PeriodicField dj = derivative(comp, j);
            double* dst = out.component(i);
            for (std::int64_t nidx = 0; nidx < nn; ++nidx)
                dst[nidx] += dj.at(0, nidx);
        }
    return out;
}

PeriodicField divergence(const PeriodicField& u) {
    if (u.rank() != Rank::vector)
        throw Error("divergence expects a vector field");
    const PeriodicGrid& g = u.grid();
    PeriodicField out(g, Rank::scalar);
    for (int a = 0; a < g.dim; ++a) {
        PeriodicField single(g, Rank::scalar);
        std::copy(u.component(a), u.component(a) + g.num_nodes(), single.component(0));
        out += derivative(single, a);
    }
    return out;
}

PeriodicField rate_of_strain_field(const PeriodicField& u) {
    if (u.rank() != Rank::vector)
        throw Error("rate_of_strain_field expects a vector field");
    const PeriodicGrid& g = u.grid();
    const std::int64_t nn = g.num_nodes();
    // grad[a][b] = d_a u_b
    std::vector<PeriodicField> grad_cols;
    grad_cols.reserve(static_cast<size_t>(g.dim));
    for (int b = 0; b < g.dim; ++b) {
        PeriodicField ub(g, Rank::scalar);
        std::copy(u.component(b), u.component(b) + nn, ub.component(0));
        grad_cols.push_back(ub);
    }
    PeriodicField out(g, Rank::symtensor);
    for (int i = 0; i < g.dim; ++i)
        for (int j = i; j < g.dim; ++j) {
            const PeriodicField di_uj = derivative(grad_cols[static_cast<size_t>(j)], i);
            const PeriodicField dj_ui = derivative(grad_cols[static_cast<size_t>(i)], j);
            double* dst = out.component(sym_index(i, j, g.dim));
            for (std::int64_t nidx = 0; nidx < nn; ++nidx)
                dst[nidx] = 0.5 * (di_uj.at(0, nidx) + dj_ui.at(0, nidx));
        }
    return out;
}

PeriodicField curl(const PeriodicField& u) {
    if (u.rank() != Rank::vector)
        throw Error("curl expects a vector field");
    const PeriodicGrid& g = u.grid();
    const std::int64_t nn = g.num_nodes();
    auto comp_field = [&](int c) {
        PeriodicField s(g, Rank::scalar);
        std::copy(u.component(c), u.component(c) + nn, s.component(0));
        return s;
    };
    if (g.dim == 2) {
        PeriodicField out(g, Rank::scalar);
        const PeriodicField a = derivative(comp_field(1), 0);
        const PeriodicField b = derivative(comp_field(0), 1);
        for (std::int64_t i = 0; i < nn; ++i)
            out.at(0, i) = a.at(0, i) - b.at(0, i);
        return out;
    }
    if (g.dim == 3) {
        PeriodicField out(g, Rank::vector);
        const int pairs[3][2] = {{1, 2}, {2, 0}, {0, 1}};
        for (int c = 0; c < 3; ++c) {
            const PeriodicField a = derivative(comp_field(pairs[c][1]), pairs[c][0]);
            const PeriodicField b = derivative(comp_field(pairs[c][0]), pairs[c][1]);
            for (std::int64_t i = 0; i < nn; ++i)
                out.at(c, i) = a.at(0, i) - b.at(0, i);
        }
        return out;
    }
    throw Error("curl requires dim 2 or 3");
}

double inner(const PeriodicField& f, const PeriodicField& g) {
    if (!f.same_layout(g))
        throw GridMismatch("inner product requires identical grid and rank");
    const auto w = component_weights(f.rank(), f.grid().dim);
    const std::int64_t nn = f.num_nodes();
    double acc = 0.0;
    for (int c = 0; c < f.components(); ++c) {
        const double* a = f.component(c);
        const double* b = g.component(c);
        double s = 0.0;
        for (std::int64_t i = 0; i < nn; ++i)
            s += a[i] * b[i];
        acc += w[static_cast<size_t>(c)] * s;
    }
    double cell = 1.0;
    for (int a = 0; a < f.grid().dim; ++a)
        cell *= f.grid().h();
    return acc * cell;
}

} // namespace viscoplast
