#include "dcoupler/kernels.hpp"

#include <cmath>

namespace dcoupler::kernels {
namespace {

void daxpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void fused_triad_scalar(double alpha, const double* x, double beta,
                        const double* y, double* z, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] = alpha * x[i] + beta * y[i] - z[i];
}

void zaxpy_scalar(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
  }
}

void csr_apply_scalar(std::size_t rows, const int* row_ptr, const int* cols,
                      const cplx* vals, const cplx* x, cplx* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    double acc_re = 0.0, acc_im = 0.0;
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      const cplx v = vals[k];
      const cplx xv = x[cols[k]];
      acc_re += v.real() * xv.real() - v.imag() * xv.imag();
      acc_im += v.real() * xv.imag() + v.imag() * xv.real();
    }
    y[r] = cplx(acc_re, acc_im);
  }
}

double nrm2_sq_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

cplx zdotc_scalar(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double werr_max_scalar(const double* err, const double* y, double atol,
                       double rtol, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = std::abs(err[i]) / (atol + rtol * std::abs(y[i]));
    if (e > m) m = e;
  }
  return m;
}

const Table kScalarTable = {
    "scalar",     daxpy_scalar, fused_triad_scalar, zaxpy_scalar,
    csr_apply_scalar, nrm2_sq_scalar, zdotc_scalar,  werr_max_scalar,
};

}  // namespace

const Table& scalar_table() { return kScalarTable; }

}  // namespace dcoupler::kernels
