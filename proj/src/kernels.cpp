#include "liesplit/kernels.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace liesplit::kernels {

namespace {

std::atomic<Exec> g_mode{Exec::Auto};
std::atomic<std::size_t> g_threshold{32768};

inline bool use_parallel(std::size_t work) {
  switch (g_mode.load(std::memory_order_relaxed)) {
    case Exec::Serial:
      return false;
    case Exec::Parallel:
      return true;
    case Exec::Auto:
    default:
      return work >= g_threshold.load(std::memory_order_relaxed);
  }
}

// Row i of C for every transpose combination. A is m x k (k x m when
// trans_a), B is k x n (n x k when trans_b), all row-major. The p-loop order
// is identical in the serial and parallel variants, so each C entry sees the
// same sequence of multiply-adds regardless of the thread count.
inline void gemm_row(const double* a, const double* b, double* c, int i, int m,
                     int k, int n, bool trans_a, bool trans_b) {
  double* crow = c + static_cast<std::size_t>(i) * n;
  for (int j = 0; j < n; ++j) crow[j] = 0.0;
  for (int p = 0; p < k; ++p) {
    const double aip = trans_a ? a[static_cast<std::size_t>(p) * m + i]
                               : a[static_cast<std::size_t>(i) * k + p];
    if (!trans_b) {
      const double* brow = b + static_cast<std::size_t>(p) * n;
      for (int j = 0; j < n; ++j) crow[j] += aip * brow[j];
    } else {
      for (int j = 0; j < n; ++j)
        crow[j] += aip * b[static_cast<std::size_t>(j) * k + p];
    }
  }
}

// Forward (unit L) then backward (U) substitution on one column of x.
inline void substitute_column(const double* lu, double* x, int n, int nrhs,
                              int col) {
  for (int i = 1; i < n; ++i) {
    const double* lrow = lu + static_cast<std::size_t>(i) * n;
    double s = x[static_cast<std::size_t>(i) * nrhs + col];
    for (int j = 0; j < i; ++j)
      s -= lrow[j] * x[static_cast<std::size_t>(j) * nrhs + col];
    x[static_cast<std::size_t>(i) * nrhs + col] = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    const double* urow = lu + static_cast<std::size_t>(i) * n;
    double s = x[static_cast<std::size_t>(i) * nrhs + col];
    for (int j = i + 1; j < n; ++j)
      s -= urow[j] * x[static_cast<std::size_t>(j) * nrhs + col];
    x[static_cast<std::size_t>(i) * nrhs + col] = s / urow[i];
  }
}

inline void eliminate_row(double* a, int n, int p, int r) {
  double* arow = a + static_cast<std::size_t>(r) * n;
  const double* prow = a + static_cast<std::size_t>(p) * n;
  const double mult = arow[p] / prow[p];
  arow[p] = mult;
  for (int j = p + 1; j < n; ++j) arow[j] -= mult * prow[j];
}

}  // namespace

Exec exec_mode() { return g_mode.load(std::memory_order_relaxed); }
void set_exec_mode(Exec mode) { g_mode.store(mode, std::memory_order_relaxed); }

std::size_t parallel_work_threshold() {
  return g_threshold.load(std::memory_order_relaxed);
}
void set_parallel_work_threshold(std::size_t flops) {
  g_threshold.store(flops, std::memory_order_relaxed);
}

bool built_with_openmp() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void matmul_serial(const double* a, const double* b, double* c, int m, int k,
                   int n, bool trans_a, bool trans_b) {
  for (int i = 0; i < m; ++i) gemm_row(a, b, c, i, m, k, n, trans_a, trans_b);
}

void matmul_parallel(const double* a, const double* b, double* c, int m, int k,
                     int n, bool trans_a, bool trans_b) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) gemm_row(a, b, c, i, m, k, n, trans_a, trans_b);
#else
  matmul_serial(a, b, c, m, k, n, trans_a, trans_b);
#endif
}

void matmul(const double* a, const double* b, double* c, int m, int k, int n,
            bool trans_a, bool trans_b) {
  const std::size_t work = static_cast<std::size_t>(m) * k * n;
  if (use_parallel(work))
    matmul_parallel(a, b, c, m, k, n, trans_a, trans_b);
  else
    matmul_serial(a, b, c, m, k, n, trans_a, trans_b);
}

void lu_substitute_serial(const double* lu, double* x, int n, int nrhs) {
  for (int col = 0; col < nrhs; ++col) substitute_column(lu, x, n, nrhs, col);
}

void lu_substitute_parallel(const double* lu, double* x, int n, int nrhs) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (int col = 0; col < nrhs; ++col) substitute_column(lu, x, n, nrhs, col);
#else
  lu_substitute_serial(lu, x, n, nrhs);
#endif
}

void lu_substitute(const double* lu, double* x, int n, int nrhs) {
  const std::size_t work = static_cast<std::size_t>(n) * n * nrhs;
  if (use_parallel(work))
    lu_substitute_parallel(lu, x, n, nrhs);
  else
    lu_substitute_serial(lu, x, n, nrhs);
}

void lu_eliminate_column_serial(double* a, int n, int p) {
  for (int r = p + 1; r < n; ++r) eliminate_row(a, n, p, r);
}

void lu_eliminate_column_parallel(double* a, int n, int p) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (int r = p + 1; r < n; ++r) eliminate_row(a, n, p, r);
#else
  lu_eliminate_column_serial(a, n, p);
#endif
}

void lu_eliminate_column(double* a, int n, int p) {
  const std::size_t rows = static_cast<std::size_t>(n - p - 1);
  const std::size_t work = rows * static_cast<std::size_t>(n - p);
  if (use_parallel(work))
    lu_eliminate_column_parallel(a, n, p);
  else
    lu_eliminate_column_serial(a, n, p);
}

}  // namespace liesplit::kernels
