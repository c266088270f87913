// Dense density-matrix integration of the Born-Markov master equation with
// an adaptive Dormand-Prince 5(4) pair. The right-hand side is assembled
// from sparse-times-dense products; the trace is a linear invariant of every
// Runge-Kutta stage combination and survives to roundoff.

#include <algorithm>
#include <cmath>

#include "dcoupler/evolve.hpp"
#include "dcoupler/kernels.hpp"

namespace dcoupler {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33,
                 kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 35.0 / 384 - 5179.0 / 57600,
                 kE3 = 500.0 / 1113 - 7571.0 / 16695,
                 kE4 = 125.0 / 192 - 393.0 / 640,
                 kE5 = -2187.0 / 6784 + 92097.0 / 339200,
                 kE6 = 11.0 / 84 - 187.0 / 2100, kE7 = -1.0 / 40;

struct ChannelOps {
  SparseOperator l;
  SparseOperator l_dag;
  SparseOperator l_dag_l;
  double rate;
};

/// out += coef * (A rho) for CSR A and row-major dense rho.
void add_left(const SparseOperator& a, const std::vector<cplx>& rho,
              std::vector<cplx>& out, cplx coef, int dim) {
  const auto& k = kernels::active();
  const auto& rp = a.row_ptr();
  const auto& cols = a.cols();
  const auto& vals = a.vals();
  for (int r = 0; r < dim; ++r) {
    cplx* out_row = out.data() + static_cast<std::size_t>(r) * dim;
    for (int e = rp[r]; e < rp[r + 1]; ++e)
      k.zaxpy(coef * vals[e],
              rho.data() + static_cast<std::size_t>(cols[e]) * dim, out_row,
              dim);
  }
}

/// out += coef * (rho B) for CSR B.
void add_right(const std::vector<cplx>& rho, const SparseOperator& b,
               std::vector<cplx>& out, cplx coef, int dim) {
  const auto& rp = b.row_ptr();
  const auto& cols = b.cols();
  const auto& vals = b.vals();
  for (int r = 0; r < dim; ++r) {
    const cplx* rho_row = rho.data() + static_cast<std::size_t>(r) * dim;
    cplx* out_row = out.data() + static_cast<std::size_t>(r) * dim;
    for (int kk = 0; kk < dim; ++kk) {
      const cplx f = coef * rho_row[kk];
      if (f == cplx(0.0, 0.0)) continue;
      for (int e = rp[kk]; e < rp[kk + 1]; ++e)
        out_row[cols[e]] += f * vals[e];
    }
  }
}

}  // namespace

TrajectoryRecord evolve_lindblad(const EvolutionSpec& spec,
                                 const DenseMatrix& rho0) {
  const SparseOperator& h_op = spec.hamiltonian;
  const int dim = h_op.dim();
  if (rho0.dim != dim) throw std::invalid_argument("density dimension mismatch");
  if (dim > spec.density_dim_cap)
    throw NumericalError("density-matrix dimension " + std::to_string(dim) +
                         " exceeds the dense cap of " +
                         std::to_string(spec.density_dim_cap));
  if (spec.samples < 2) throw std::invalid_argument("need samples >= 2");
  if (spec.t_final <= 0.0) throw std::invalid_argument("t_final must be > 0");
  const double scale = std::max(1.0, h_op.max_abs());
  if (h_op.hermiticity_error() > 1e-9 * scale)
    throw NumericalError("Hamiltonian is not Hermitian");
  if (std::abs(rho0.trace() - cplx(1.0, 0.0)) > 1e-12)
    throw std::invalid_argument("initial density matrix is not unit trace");
  for (const auto& c : spec.channels)
    if (c.rate < 0.0)
      throw std::invalid_argument("collapse rates must be non-negative");

  std::vector<ChannelOps> channels;
  for (const auto& c : spec.channels) {
    if (!compatible(c.op.space(), h_op.space()))
      throw std::invalid_argument("collapse-operator space mismatch");
    ChannelOps ops{c.op, c.op.adjoint(), SparseOperator::zero(c.op.space()),
                   c.rate};
    ops.l_dag_l = ops.l_dag * ops.l;
    channels.push_back(std::move(ops));
  }

  const std::size_t nn = static_cast<std::size_t>(dim) * dim;
  std::vector<cplx> rho = rho0.a;
  std::vector<cplx> scratch(nn);

  auto rhs = [&](const std::vector<cplx>& y, std::vector<cplx>& dy) {
    dy.assign(nn, cplx(0.0, 0.0));
    add_left(h_op, y, dy, cplx(0.0, -1.0), dim);   // -i H rho
    add_right(y, h_op, dy, cplx(0.0, 1.0), dim);   // +i rho H
    for (const auto& c : channels) {
      if (c.rate == 0.0) continue;
      // 2 L rho L^dag
      scratch.assign(nn, cplx(0.0, 0.0));
      add_left(c.l, y, scratch, cplx(1.0, 0.0), dim);
      add_right(scratch, c.l_dag, dy, cplx(2.0 * c.rate, 0.0), dim);
      // - L^dag L rho - rho L^dag L
      add_left(c.l_dag_l, y, dy, cplx(-c.rate, 0.0), dim);
      add_right(y, c.l_dag_l, dy, cplx(-c.rate, 0.0), dim);
    }
  };

  TrajectoryRecord rec;
  for (const auto& obs : spec.observables) {
    if (!compatible(obs.op.space(), h_op.space()))
      throw std::invalid_argument("observable space mismatch");
    rec.channel_names.push_back(obs.name);
  }
  rec.channels.assign(spec.observables.size(), {});
  rec.positivity_floor = 1.0;

  DenseMatrix view;
  view.dim = dim;
  auto sample = [&](double t) {
    view.a = rho;
    rec.times.push_back(t);
    for (std::size_t i = 0; i < spec.observables.size(); ++i) {
      const cplx v = trace_product(spec.observables[i].op, view);
      rec.channels[i].push_back(spec.observables[i].imaginary_part ? v.imag()
                                                                   : v.real());
    }
    rec.norm_drift =
        std::max(rec.norm_drift, std::abs(view.trace() - cplx(1.0, 0.0)));
    if (dim <= 128) {
      rec.positivity_floor =
          std::min(rec.positivity_floor, min_eigenvalue_hermitian(view));
    } else {
      for (int i = 0; i < dim; ++i)
        rec.positivity_floor =
            std::min(rec.positivity_floor, view.at(i, i).real());
    }
  };

  const double atol = spec.tolerance * 1e-3;
  const double rtol = spec.tolerance;
  const double dt_sample = spec.t_final / (spec.samples - 1);

  std::vector<cplx> k1(nn), k2(nn), k3(nn), k4(nn), k5(nn), k6(nn), k7(nn);
  std::vector<cplx> ytmp(nn), y5(nn), err(nn);
  const auto& kr = kernels::active();
  auto daxpy = [&](double a, const std::vector<cplx>& x, std::vector<cplx>& y) {
    kr.daxpy(a, reinterpret_cast<const double*>(x.data()),
             reinterpret_cast<double*>(y.data()), 2 * nn);
  };

  rhs(rho, k1);
  rec.matvecs += 1;
  sample(0.0);

  double h = dt_sample / 16.0;
  const long long max_steps = spec.max_matvecs / 6;

  for (int s = 1; s < spec.samples; ++s) {
    const double t_target = s * dt_sample;
    double t = rec.times.back();
    while (t < t_target - 1e-15 * spec.t_final) {
      const bool clipped = t + h >= t_target;
      const double h_try = clipped ? t_target - t : h;

      ytmp = rho;
      daxpy(h_try * kA21, k1, ytmp);
      rhs(ytmp, k2);
      ytmp = rho;
      daxpy(h_try * kA31, k1, ytmp);
      daxpy(h_try * kA32, k2, ytmp);
      rhs(ytmp, k3);
      ytmp = rho;
      daxpy(h_try * kA41, k1, ytmp);
      daxpy(h_try * kA42, k2, ytmp);
      daxpy(h_try * kA43, k3, ytmp);
      rhs(ytmp, k4);
      ytmp = rho;
      daxpy(h_try * kA51, k1, ytmp);
      daxpy(h_try * kA52, k2, ytmp);
      daxpy(h_try * kA53, k3, ytmp);
      daxpy(h_try * kA54, k4, ytmp);
      rhs(ytmp, k5);
      ytmp = rho;
      daxpy(h_try * kA61, k1, ytmp);
      daxpy(h_try * kA62, k2, ytmp);
      daxpy(h_try * kA63, k3, ytmp);
      daxpy(h_try * kA64, k4, ytmp);
      daxpy(h_try * kA65, k5, ytmp);
      rhs(ytmp, k6);
      y5 = rho;
      daxpy(h_try * kB1, k1, y5);
      daxpy(h_try * kB3, k3, y5);
      daxpy(h_try * kB4, k4, y5);
      daxpy(h_try * kB5, k5, y5);
      daxpy(h_try * kB6, k6, y5);
      rhs(y5, k7);
      rec.matvecs += 6;
      ++rec.steps;
      if (rec.steps > max_steps)
        throw NumericalError(
            "master-equation step budget exhausted before reaching the "
            "tolerance");

      err.assign(nn, cplx(0.0, 0.0));
      daxpy(h_try * kE1, k1, err);
      daxpy(h_try * kE3, k3, err);
      daxpy(h_try * kE4, k4, err);
      daxpy(h_try * kE5, k5, err);
      daxpy(h_try * kE6, k6, err);
      daxpy(h_try * kE7, k7, err);
      const double err_norm = kr.werr_max(
          reinterpret_cast<const double*>(err.data()),
          reinterpret_cast<const double*>(y5.data()), atol, rtol, 2 * nn);

      const double factor =
          err_norm == 0.0
              ? 5.0
              : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
      if (err_norm <= 1.0) {
        t += h_try;
        rho.swap(y5);
        k1.swap(k7);  // FSAL: k7 = rhs at the accepted state
        h = clipped ? std::max(h, h_try * factor) : h_try * factor;
      } else {
        h = h_try * factor;
      }
    }
    sample(t_target);
  }
  rec.error_estimate = static_cast<double>(rec.steps) * spec.tolerance;
  return rec;
}

}  // namespace dcoupler
