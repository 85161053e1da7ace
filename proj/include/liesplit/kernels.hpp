#pragma once

#include <cstddef>

// Data-parallel inner loops, each in two variants: a serial reference and an
// OpenMP version. The OpenMP variants partition independent output rows or
// columns and keep the per-element operation order identical to the serial
// code, so the two produce bitwise-equal results; tests assert exactly that.
// Reductions (norms, dot products) are never parallelized, which keeps every
// result, including CLI report bytes, independent of the thread count.

namespace liesplit::kernels {

enum class Exec {
  Serial,    // always the reference loops
  Parallel,  // always OpenMP (falls back to serial when built without it)
  Auto       // OpenMP above a work threshold
};

Exec exec_mode();
void set_exec_mode(Exec mode);

// Auto dispatch uses OpenMP when m*k*n (or rows*cols*nrhs) is at least this.
std::size_t parallel_work_threshold();
void set_parallel_work_threshold(std::size_t flops);

bool built_with_openmp();
int max_threads();

// C(m x n) = op(A) * op(B), row-major contiguous buffers, C distinct from
// A and B. op transposes when the corresponding flag is set; A is m x k
// (k x m when trans_a), B is k x n (n x k when trans_b).
void matmul(const double* a, const double* b, double* c, int m, int k, int n,
            bool trans_a, bool trans_b);
void matmul_serial(const double* a, const double* b, double* c, int m, int k,
                   int n, bool trans_a, bool trans_b);
void matmul_parallel(const double* a, const double* b, double* c, int m, int k,
                     int n, bool trans_a, bool trans_b);

// In-place multi-RHS substitution against the packed LU factors produced by
// row-pivoted elimination: lu is n x n row-major holding L (unit diagonal,
// below) and U (on and above); x is n x nrhs with permutation already
// applied. Columns are independent, which is where the parallel variant
// splits.
void lu_substitute(const double* lu, double* x, int n, int nrhs);
void lu_substitute_serial(const double* lu, double* x, int n, int nrhs);
void lu_substitute_parallel(const double* lu, double* x, int n, int nrhs);

// Rank-1 trailing update of row-pivoted elimination: for rows r > pivot row
// p, x[r][j] -= x[r][p] * x[p][j] for j > p, after storing the multiplier in
// x[r][p]. Rows are independent.
void lu_eliminate_column(double* a, int n, int p);
void lu_eliminate_column_serial(double* a, int n, int p);
void lu_eliminate_column_parallel(double* a, int n, int p);

}  // namespace liesplit::kernels
