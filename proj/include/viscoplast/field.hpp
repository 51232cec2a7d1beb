#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "viscoplast/errors.hpp"

namespace viscoplast {

/// Uniform periodic grid on [0, length)^dim, dim in {1,2,3}. Nodes at
/// x_a = i_a * h, h = length / n. n must be even and >= 8.
struct PeriodicGrid {
    int dim = 1;
    int n = 8;
    double length = 6.283185307179586476925286766559; // 2*pi

    PeriodicGrid() = default;
    PeriodicGrid(int dim_, int n_, double length_ = 6.283185307179586476925286766559)
        : dim(dim_), n(n_), length(length_) {
        validate();
    }

    void validate() const {
        if (dim < 1 || dim > 3)
            throw ConfigError("grid.dim", "dim must be 1, 2 or 3");
        if (n < 8 || n % 2 != 0)
            throw ConfigError("grid.n", "n must be even and >= 8");
        if (!(length > 0.0))
            throw ConfigError("grid.length", "length must be > 0");
    }

    double h() const { return length / n; }

    std::int64_t num_nodes() const {
        std::int64_t nn = 1;
        for (int a = 0; a < dim; ++a)
            nn *= n;
        return nn;
    }

    /// Node coordinates; axes beyond dim are zero.
    std::array<double, 3> coords(std::int64_t node) const {
        std::array<double, 3> x{0.0, 0.0, 0.0};
        for (int a = dim - 1; a >= 0; --a) {
            x[static_cast<size_t>(a)] = static_cast<double>(node % n) * h();
            node /= n;
        }
        return x;
    }

    bool operator==(const PeriodicGrid&) const = default;
};

enum class Rank { scalar, vector, symtensor };

int rank_components(Rank rank, int dim);

/// Row-major (last axis fastest) sample values on a periodic grid, stored
/// component-major: values[c * num_nodes + node]. Off-diagonal symtensor
/// components are stored once (upper triangle) and weighted twice in norms.
class PeriodicField {
  public:
    PeriodicField() = default;
    PeriodicField(const PeriodicGrid& grid, Rank rank)
        : grid_(grid), rank_(rank),
          values_(static_cast<size_t>(grid.num_nodes()) *
                      static_cast<size_t>(rank_components(rank, grid.dim)),
                  0.0) {}

    const PeriodicGrid& grid() const { return grid_; }
    Rank rank() const { return rank_; }
    int components() const { return rank_components(rank_, grid_.dim); }
    std::int64_t num_nodes() const { return grid_.num_nodes(); }

    double& at(int comp, std::int64_t node) {
        return values_[static_cast<size_t>(comp) * static_cast<size_t>(num_nodes()) +
                       static_cast<size_t>(node)];
    }
    double at(int comp, std::int64_t node) const {
        return values_[static_cast<size_t>(comp) * static_cast<size_t>(num_nodes()) +
                       static_cast<size_t>(node)];
    }

    double* component(int comp) {
        return values_.data() + static_cast<size_t>(comp) * static_cast<size_t>(num_nodes());
    }
    const double* component(int comp) const {
        return values_.data() + static_cast<size_t>(comp) * static_cast<size_t>(num_nodes());
    }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    bool same_layout(const PeriodicField& other) const {
        return grid_ == other.grid_ && rank_ == other.rank_;
    }

    PeriodicField& operator+=(const PeriodicField& other);
    PeriodicField& operator-=(const PeriodicField& other);
    PeriodicField& operator*=(double c);
    friend PeriodicField operator+(PeriodicField a, const PeriodicField& b) { return a += b; }
    friend PeriodicField operator-(PeriodicField a, const PeriodicField& b) { return a -= b; }
    friend PeriodicField operator*(double c, PeriodicField a) { return a *= c; }

  private:
    PeriodicGrid grid_{};
    Rank rank_ = Rank::scalar;
    std::vector<double> values_;
};

/// y += c * x
void axpy(double c, const PeriodicField& x, PeriodicField& y);

PeriodicField make_scalar(const PeriodicGrid& grid,
                          const std::function<double(const std::array<double, 3>&)>& f);
PeriodicField make_vector(
    const PeriodicGrid& grid,
    const std::function<std::array<double, 3>(const std::array<double, 3>&)>& f);

// --- spectral machinery -----------------------------------------------------

/// Integer wavenumber of mode index i on an n-point axis: i <= n/2 maps to i,
/// else i - n. Physical wavenumber is (2 pi / length) * that.
int mode_number(int i, int n);

/// Full complex spectrum (c2c, unnormalized forward) of one component.
std::vector<std::complex<double>> forward_fft(const PeriodicGrid& grid, const double* comp);

/// Inverse of forward_fft; writes the real part of the normalized inverse.
void inverse_fft(const PeriodicGrid& grid, std::vector<std::complex<double>>& spectrum,
                 double* out);

/// Exact derivative of the trigonometric interpolant along `axis`, applied
/// componentwise. The Nyquist mode is zeroed.
PeriodicField derivative(const PeriodicField& f, int axis);

/// Zero all modes with |k_axis| > n/3 on any axis (2/3-rule dealiasing).
PeriodicField dealias(const PeriodicField& f);

/// Zero all modes with |k_axis| > m on any axis (Galerkin projection P_m).
PeriodicField project_modes(const PeriodicField& f, int m);

// --- quadrature and norms ---------------------------------------------------

/// Rectangle-rule integral of one component (exact for trigonometric
/// polynomials below the Nyquist limit).
double integral(const PeriodicField& f, int comp = 0);

double mean(const PeriodicField& f, int comp = 0);

/// Pointwise modulus: |f| for scalars, Frobenius modulus for vector/symtensor
/// fields (off-diagonal symtensor entries counted twice).
std::vector<double> pointwise_modulus(const PeriodicField& f);

/// L^p norm by rectangle quadrature of the pointwise modulus; p = inf gives max.
double lp_norm(const PeriodicField& f, double p);

constexpr double kInfNorm = -1.0; // sentinel accepted by lp_norm for p = infinity

double max_abs(const PeriodicField& f);

/// W^{k,p} norm: ( sum_{|alpha| <= k} ||d^alpha f||_p^p )^{1/p} with spectral
/// derivatives; k in {0,1,2}.
double sobolev_norm(const PeriodicField& f, int k, double p);

/// Subtract the mean of every component.
PeriodicField mean_zero_project(const PeriodicField& f);

// --- calculus on vector fields ----------------------------------------------

/// div u (scalar) of a vector field.
PeriodicField divergence(const PeriodicField& u);

/// [div S]_i = sum_j d_j S_ij of a symtensor field.
PeriodicField divergence_sym(const PeriodicField& S);

/// Stored component index of the (i,j) entry of a symtensor field.
int sym_component(int i, int j, int dim);

/// Rate of strain D(u) as a symtensor field.
PeriodicField rate_of_strain_field(const PeriodicField& u);

/// curl u: scalar in 2D, vector in 3D.
PeriodicField curl(const PeriodicField& u);

/// L^2 inner product (componentwise, off-diagonals weighted twice).
double inner(const PeriodicField& f, const PeriodicField& g);

} // namespace viscoplast
