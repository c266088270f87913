#pragma once

#include <complex>
#include <cstddef>

namespace dcoupler::kernels {

using cplx = std::complex<double>;

/// Function table for the data-parallel inner loops of the simulator
/// (vector updates, CSR matvec, reductions). A scalar reference
/// implementation always exists; an AVX2+FMA variant is selected at runtime
/// when the CPU supports it. Selection can be forced with
/// DCOUPLER_SIMD=auto|scalar|avx2.
struct Table {
  const char* name;

  /// y[i] += a * x[i] over n doubles.
  void (*daxpy)(double a, const double* x, double* y, std::size_t n);

  /// z[i] = alpha * x[i] + beta * y[i] - z[i] over n doubles
  /// (the Chebyshev three-term recurrence update, done in place).
  void (*fused_triad)(double alpha, const double* x, double beta,
                      const double* y, double* z, std::size_t n);

  /// y[i] += a * x[i] over n complex values.
  void (*zaxpy)(cplx a, const cplx* x, cplx* y, std::size_t n);

  /// y = A x for a CSR matrix with complex entries.
  void (*csr_apply)(std::size_t rows, const int* row_ptr, const int* cols,
                    const cplx* vals, const cplx* x, cplx* y);

  /// sum of squares over n doubles.
  double (*nrm2_sq)(const double* x, std::size_t n);

  /// sum conj(x[i]) * y[i] over n complex values.
  cplx (*zdotc)(const cplx* x, const cplx* y, std::size_t n);

  /// max_i |err[i]| / (atol + rtol * |y[i]|) over n doubles.
  double (*werr_max)(const double* err, const double* y, double atol,
                     double rtol, std::size_t n);
};

const Table& scalar_table();

/// AVX2+FMA table, or nullptr when the binary was built without AVX2
/// support or the CPU lacks it.
const Table* avx2_table();

/// The table selected for this process (CPU detection + env override).
const Table& active();

}  // namespace dcoupler::kernels
