#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "viscoplast/bingham.hpp"
#include "viscoplast/oracles.hpp"
#include "viscoplast/transport.hpp"

namespace py = pybind11;
using namespace viscoplast;

namespace {

using CArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

SymTensor sym_from_array(const CArray& arr) {
    const auto buf = arr.unchecked<2>();
    const int d = static_cast<int>(buf.shape(0));
    if (buf.shape(1) != d || d < 1 || d > 3)
        throw Error("expected a square matrix of dimension 1..3");
    Matrix m(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            m(i, j) = buf(i, j);
    return SymTensor::symmetric_part(m);
}

py::array_t<double> sym_to_array(const SymTensor& t) {
    const int d = t.dim();
    py::array_t<double> out({d, d});
    auto buf = out.mutable_unchecked<2>();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            buf(i, j) = t(i, j);
    return out;
}

std::vector<py::ssize_t> grid_shape(const PeriodicGrid& g) {
    std::vector<py::ssize_t> shape;
    for (int a = 0; a < g.dim; ++a)
        shape.push_back(g.n);
    return shape;
}

PeriodicGrid grid_from_array(const py::array& arr, double length, bool vector) {
    const int dim = static_cast<int>(arr.ndim()) - (vector ? 1 : 0);
    PeriodicGrid g(dim, static_cast<int>(arr.shape(vector ? 1 : 0)), length);
    for (int a = 0; a < dim; ++a)
        if (arr.shape(a + (vector ? 1 : 0)) != g.n)
            throw Error("grids must be cubic (same n per axis)");
    if (vector && arr.shape(0) != dim)
        throw Error("vector arrays need shape (dim, n, ...)");
    return g;
}

PeriodicField scalar_from_array(const CArray& arr, double length) {
    const PeriodicGrid g = grid_from_array(arr, length, false);
    PeriodicField f(g, Rank::scalar);
    const double* src = arr.data();
    std::copy(src, src + g.num_nodes(), f.values().begin());
    return f;
}

PeriodicField vector_from_array(const CArray& arr, double length) {
    const PeriodicGrid g = grid_from_array(arr, length, true);
    PeriodicField f(g, Rank::vector);
    const double* src = arr.data();
    std::copy(src, src + static_cast<std::int64_t>(g.dim) * g.num_nodes(),
              f.values().begin());
    return f;
}

py::array_t<double> field_to_array(const PeriodicField& f) {
    std::vector<py::ssize_t> shape;
    if (f.rank() != Rank::scalar)
        shape.push_back(f.components());
    for (const auto s : grid_shape(f.grid()))
        shape.push_back(s);
    py::array_t<double> out(shape);
    std::copy(f.values().begin(), f.values().end(), out.mutable_data());
    return out;
}

PeriodicField field_from_any(const CArray& arr, double length, int dim) {
    return (arr.ndim() == dim) ? scalar_from_array(arr, length)
                               : vector_from_array(arr, length);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Numerical laboratory for compressible Power Law and Bingham fluids";

    py::register_exception<Error>(m, "ViscoplastError");

    py::class_<FluidParams>(m, "FluidParams")
        .def(py::init([](double mu, double lambda, double tau_star, double delta, double q,
                         double a, double gamma) {
                 FluidParams p{mu, lambda, tau_star, delta, q, a, gamma};
                 p.validate();
                 return p;
             }),
             py::arg("mu") = 1.0, py::arg("lambda_") = 0.0, py::arg("tau_star") = 0.0,
             py::arg("delta") = 0.0, py::arg("q") = 2.0, py::arg("a") = 1.0,
             py::arg("gamma") = 1.4)
        .def_readwrite("mu", &FluidParams::mu)
        .def_readwrite("lambda_", &FluidParams::lambda)
        .def_readwrite("tau_star", &FluidParams::tau_star)
        .def_readwrite("delta", &FluidParams::delta)
        .def_readwrite("q", &FluidParams::q)
        .def_readwrite("a", &FluidParams::a)
        .def_readwrite("gamma", &FluidParams::gamma)
        .def("validate", &FluidParams::validate);

    // constitutive laws
    m.def("rate_of_strain", [](const CArray& grad) {
        const auto buf = grad.unchecked<2>();
        const int d = static_cast<int>(buf.shape(0));
        Matrix g(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                g(i, j) = buf(i, j);
        return sym_to_array(rate_of_strain(g));
    });
    m.def("stress_delta", [](const FluidParams& p, const CArray& D) {
        return sym_to_array(stress_delta(p, sym_from_array(D)));
    });
    m.def("stress_delta_1d", &stress_delta_1d);
    m.def("stress_bingham_1d",
          [](const FluidParams& p, double s) -> py::object {
              const auto r = stress_bingham_1d(p, s);
              if (!r)
                  return py::none(); // unyielded: stress is set-valued there
              return py::float_(*r);
          });
    m.def("beta_fn", &beta_fn);
    m.def("beta_prime", &beta_prime);
    m.def("flux_F", [](const FluidParams& p, const CArray& A) {
        return sym_to_array(flux_F(p, sym_from_array(A)));
    });
    m.def("symbol_form",
          [](const FluidParams& p, const CArray& D,
             const std::array<double, 3>& xi, const std::array<double, 3>& eta_re,
             const std::array<double, 3>& eta_im) {
              return symbol_form(p, sym_from_array(D), xi, eta_re, eta_im);
          },
          py::arg("params"), py::arg("D"), py::arg("xi"), py::arg("eta_re"),
          py::arg("eta_im") = std::array<double, 3>{0, 0, 0});
    m.def("is_strongly_elliptic", &is_strongly_elliptic);
    m.def("has_uniform_lp_regularity", &has_uniform_lp_regularity,
          py::arg("params"), py::arg("c_min") = 1e-12);
    m.def("monotonicity_gap",
          [](const FluidParams& p, const CArray& C,
             const CArray& D) {
              return monotonicity_gap(p, sym_from_array(C), sym_from_array(D));
          });
    m.def("j_quadratic", [](const FluidParams& p, const CArray& D,
                            const CArray& E) {
        return j_quadratic(p, sym_from_array(D), sym_from_array(E));
    });

    // spectral fields
    m.def("derivative",
          [](const CArray& f, int axis, double length, int dim) {
              return field_to_array(derivative(field_from_any(f, length, dim), axis));
          },
          py::arg("f"), py::arg("axis") = 0,
          py::arg("length") = 6.283185307179586476925286766559, py::arg("dim") = 1);
    m.def("lp_norm",
          [](const CArray& f, double p, double length, int dim) {
              return lp_norm(field_from_any(f, length, dim), p);
          },
          py::arg("f"), py::arg("p") = 2.0,
          py::arg("length") = 6.283185307179586476925286766559, py::arg("dim") = 1);
    m.def("sobolev_norm",
          [](const CArray& f, int k, double p, double length, int dim) {
              return sobolev_norm(field_from_any(f, length, dim), k, p);
          },
          py::arg("f"), py::arg("k") = 1, py::arg("p") = 2.0,
          py::arg("length") = 6.283185307179586476925286766559, py::arg("dim") = 1);
    m.def("mean_zero_project",
          [](const CArray& f, double length, int dim) {
              return field_to_array(mean_zero_project(field_from_any(f, length, dim)));
          },
          py::arg("f"), py::arg("length") = 6.283185307179586476925286766559,
          py::arg("dim") = 1);

    // elliptic solver
    m.def("elliptic_apply",
          [](const FluidParams& p, const CArray& u, double length) {
              return field_to_array(
                  elliptic::apply_operator(p, vector_from_array(u, length)));
          },
          py::arg("params"), py::arg("u"),
          py::arg("length") = 6.283185307179586476925286766559);
    m.def("elliptic_solve",
          [](const FluidParams& p, const CArray& f, double length,
             double tol, int max_iter) {
              elliptic::EllipticProblem prob{p, mean_zero_project(
                                                    vector_from_array(f, length))};
              const auto sol = elliptic::solve(prob, tol, max_iter);
              return py::make_tuple(field_to_array(sol.u), sol.residual_norm,
                                    sol.newton_iters);
          },
          py::arg("params"), py::arg("f"),
          py::arg("length") = 6.283185307179586476925286766559, py::arg("tol") = 1e-10,
          py::arg("max_iter") = 80);
    m.def("verify_w2p_1d",
          [](const FluidParams& p, const CArray& u,
             const CArray& f, double p_exp, double length) {
              const auto rep = elliptic::verify_w2p_1d(p, vector_from_array(u, length),
                                                       vector_from_array(f, length),
                                                       p_exp);
              py::dict d;
              d["lhs"] = rep.lhs;
              d["rhs"] = rep.rhs;
              d["satisfied"] = rep.satisfied;
              return d;
          },
          py::arg("params"), py::arg("u"), py::arg("f"), py::arg("p_exp") = 2.0,
          py::arg("length") = 6.283185307179586476925286766559);
    m.def("verify_h2",
          [](const FluidParams& p, const CArray& u,
             const CArray& f, double length) {
              const auto rep = elliptic::verify_h2(p, vector_from_array(u, length),
                                                   vector_from_array(f, length));
              py::dict d;
              d["curl_term"] = rep.curl_term;
              d["div_term"] = rep.div_term;
              d["rhs_bound"] = rep.rhs_bound;
              d["satisfied"] = rep.satisfied;
              return d;
          },
          py::arg("params"), py::arg("u"), py::arg("f"),
          py::arg("length") = 6.283185307179586476925286766559);
    m.def("compat_init",
          [](const FluidParams& p, const CArray& rho0,
             const CArray& g, double length, double tol) {
              const PeriodicField rho = scalar_from_array(rho0, length);
              return field_to_array(elliptic::compat_init(
                  p, rho, vector_from_array(g, length), tol));
          },
          py::arg("params"), py::arg("rho0"), py::arg("g"),
          py::arg("length") = 6.283185307179586476925286766559, py::arg("tol") = 1e-10);

    // transport
    m.def("advance_density",
          [](const CArray& rho, const CArray& u, double dt,
             double length) {
              const PeriodicField r = scalar_from_array(rho, length);
              return field_to_array(
                  transport::advance_density(r, vector_from_array(u, length), dt));
          },
          py::arg("rho"), py::arg("u"), py::arg("dt"),
          py::arg("length") = 6.283185307179586476925286766559);

    // time integration
    m.def("powerlaw_run",
          [](const FluidParams& p, const CArray& rho0,
             const CArray& u0, double dt, double t_end, int output_every,
             double length, int m_modes, const py::object& f_ext) {
              const PeriodicField rho = scalar_from_array(rho0, length);
              const PeriodicField u = vector_from_array(u0, length);
              powerlaw::GalerkinSpace space(rho.grid(), m_modes);
              powerlaw::RunOptions opts;
              opts.dt = dt > 0.0 ? dt : 0.5 * powerlaw::stable_dt(p, space, rho, u);
              opts.t_end = t_end;
              opts.output_every = output_every;
              std::function<PeriodicField(double)> forcing;
              if (!f_ext.is_none()) {
                  const PeriodicField base =
                      vector_from_array(f_ext.cast<CArray>(), length);
                  forcing = [base](double) { return base; };
              }
              const auto res = powerlaw::run(p, space, rho, u, forcing, opts);
              py::dict d;
              d["status"] = res.status == powerlaw::RunStatus::completed ? "completed"
                            : res.status == powerlaw::RunStatus::blowup ? "blowup"
                                                                        : "diverged";
              d["dt"] = opts.dt;
              py::list times, rhos, us, mass, energy, psi, j_min;
              for (size_t k = 0; k < res.states.size(); ++k) {
                  times.append(res.states[k].t);
                  rhos.append(field_to_array(res.states[k].rho));
                  us.append(field_to_array(res.states[k].u));
              }
              for (const auto& r : res.records) {
                  mass.append(r.mass);
                  energy.append(r.energy);
                  psi.append(r.psi);
                  j_min.append(r.j_min);
              }
              d["t"] = times;
              d["rho"] = rhos;
              d["u"] = us;
              d["mass"] = mass;
              d["energy"] = energy;
              d["psi"] = psi;
              d["j_min"] = j_min;
              return d;
          },
          py::arg("params"), py::arg("rho0"), py::arg("u0"), py::arg("dt") = 0.0,
          py::arg("t_end") = 0.1, py::arg("output_every") = 1,
          py::arg("length") = 6.283185307179586476925286766559, py::arg("m_modes") = 0,
          py::arg("f_ext") = py::none());

    // Bingham limit
    m.def("detect_plugs",
          [](const CArray& u, double threshold, double length) {
              const auto region =
                  bingham::detect_plugs(vector_from_array(u, length), threshold);
              py::list intervals;
              for (const auto& [lo, hi] : region.intervals)
                  intervals.append(py::make_tuple(lo, hi));
              return intervals;
          },
          py::arg("u"), py::arg("threshold"),
          py::arg("length") = 6.283185307179586476925286766559);
    m.def("verify_yield",
          [](const FluidParams& p, const CArray& u, double delta_final,
             double threshold, double length) {
              const PeriodicField uf = vector_from_array(u, length);
              const auto region = bingham::detect_plugs(uf, threshold);
              const auto rep = bingham::verify_yield(p, uf, delta_final, region);
              py::dict d;
              d["max_plug_stress_excess"] = rep.max_plug_stress_excess;
              d["max_flow_law_residual"] = rep.max_flow_law_residual;
              d["min_flow_strain"] = rep.min_flow_strain;
              d["has_plug"] = rep.has_plug;
              d["has_flow"] = rep.has_flow;
              return d;
          },
          py::arg("params"), py::arg("u"), py::arg("delta_final"), py::arg("threshold"),
          py::arg("length") = 6.283185307179586476925286766559);

    m.attr("__version__") = "0.1.0";
}
