// AVX2+FMA variants of the inner-loop kernels. This translation unit is
// compiled with -mavx2 -mfma; callers reach it only through the runtime
// dispatch in kernels.cpp, so the rest of the library can be built for a
// generic x86-64 baseline.

#include "dcoupler/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>

namespace dcoupler::kernels {
namespace {

void daxpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256d y0 = _mm256_loadu_pd(y + i);
    __m256d y1 = _mm256_loadu_pd(y + i + 4);
    y0 = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), y0);
    y1 = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i + 4), y1);
    _mm256_storeu_pd(y + i, y0);
    _mm256_storeu_pd(y + i + 4, y1);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d y0 = _mm256_loadu_pd(y + i);
    y0 = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), y0);
    _mm256_storeu_pd(y + i, y0);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void fused_triad_avx2(double alpha, const double* x, double beta,
                      const double* y, double* z, std::size_t n) {
  const __m256d av = _mm256_set1_pd(alpha);
  const __m256d bv = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_fmsub_pd(bv, _mm256_loadu_pd(y + i),
                                      _mm256_loadu_pd(z + i));
    _mm256_storeu_pd(z + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), t));
  }
  for (; i < n; ++i) z[i] = alpha * x[i] + beta * y[i] - z[i];
}

void zaxpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  // two complex values per 256-bit lane: [re0 im0 re1 im1]
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0x5);  // [im0 re0 im1 re1]
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
    _mm256_storeu_pd(yd + 2 * i,
                     _mm256_add_pd(_mm256_loadu_pd(yd + 2 * i), prod));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cplx(a.real() * xr - a.imag() * xi, a.real() * xi + a.imag() * xr);
  }
}

void csr_apply_avx2(std::size_t rows, const int* row_ptr, const int* cols,
                    const cplx* vals, const cplx* x, cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* vd = reinterpret_cast<const double*>(vals);
  for (std::size_t r = 0; r < rows; ++r) {
    const int lo = row_ptr[r], hi = row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    int k = lo;
    for (; k + 2 <= hi; k += 2) {
      const __m256d v = _mm256_loadu_pd(vd + 2 * k);
      const __m128d x0 = _mm_loadu_pd(xd + 2 * cols[k]);
      const __m128d x1 = _mm_loadu_pd(xd + 2 * cols[k + 1]);
      const __m256d xv = _mm256_set_m128d(x1, x0);
      const __m256d vr = _mm256_movedup_pd(v);          // [v0r v0r v1r v1r]
      const __m256d vi = _mm256_permute_pd(v, 0xF);     // [v0i v0i v1i v1i]
      const __m256d xs = _mm256_permute_pd(xv, 0x5);    // [x0i x0r x1i x1r]
      acc = _mm256_add_pd(acc,
                          _mm256_fmaddsub_pd(vr, xv, _mm256_mul_pd(vi, xs)));
    }
    __m128d acc2 = _mm_add_pd(_mm256_castpd256_pd128(acc),
                              _mm256_extractf128_pd(acc, 1));
    double re = _mm_cvtsd_f64(acc2);
    double im = _mm_cvtsd_f64(_mm_unpackhi_pd(acc2, acc2));
    for (; k < hi; ++k) {
      const cplx v = vals[k];
      const cplx xv = x[cols[k]];
      re += v.real() * xv.real() - v.imag() * xv.imag();
      im += v.real() * xv.imag() + v.imag() * xv.real();
    }
    y[r] = cplx(re, im);
  }
}

double nrm2_sq_avx2(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d a = _mm256_loadu_pd(x + i);
    const __m256d b = _mm256_loadu_pd(x + i + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  __m128d s = _mm_add_pd(_mm256_castpd256_pd128(acc0),
                         _mm256_extractf128_pd(acc0, 1));
  double out = _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
  for (; i < n; ++i) out += x[i] * x[i];
  return out;
}

cplx zdotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0x5);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);  // [xr*yr, xi*yi, ...]
    acc_im = _mm256_fmadd_pd(xs, yv, acc_im);  // [xi*yr, xr*yi, ...]
  }
  __m128d r = _mm_add_pd(_mm256_castpd256_pd128(acc_re),
                         _mm256_extractf128_pd(acc_re, 1));
  __m128d m = _mm_add_pd(_mm256_castpd256_pd128(acc_im),
                         _mm256_extractf128_pd(acc_im, 1));
  double re = _mm_cvtsd_f64(r) + _mm_cvtsd_f64(_mm_unpackhi_pd(r, r));
  double im = _mm_cvtsd_f64(_mm_unpackhi_pd(m, m)) - _mm_cvtsd_f64(m);
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double werr_max_avx2(const double* err, const double* y, double atol,
                     double rtol, std::size_t n) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d av = _mm256_set1_pd(atol);
  const __m256d rv = _mm256_set1_pd(rtol);
  __m256d mx = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d e = _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(err + i));
    const __m256d w = _mm256_fmadd_pd(
        rv, _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(y + i)), av);
    mx = _mm256_max_pd(mx, _mm256_div_pd(e, w));
  }
  __m128d h = _mm_max_pd(_mm256_castpd256_pd128(mx),
                         _mm256_extractf128_pd(mx, 1));
  double out = std::max(_mm_cvtsd_f64(h),
                        _mm_cvtsd_f64(_mm_unpackhi_pd(h, h)));
  for (; i < n; ++i) {
    const double e = std::abs(err[i]) / (atol + rtol * std::abs(y[i]));
    if (e > out) out = e;
  }
  return out;
}

const Table kAvx2Table = {
    "avx2",         daxpy_avx2,   fused_triad_avx2, zaxpy_avx2,
    csr_apply_avx2, nrm2_sq_avx2, zdotc_avx2,       werr_max_avx2,
};

}  // namespace

const Table* avx2_table() { return &kAvx2Table; }

}  // namespace dcoupler::kernels

#else  // no AVX2 at compile time

namespace dcoupler::kernels {
const Table* avx2_table() { return nullptr; }
}  // namespace dcoupler::kernels

#endif
