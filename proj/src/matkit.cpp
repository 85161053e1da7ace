#include "liesplit/matkit.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

#include "liesplit/kernels.hpp"

namespace liesplit {

namespace {

inline double sign_of(double a, double b) {
  return b >= 0.0 ? std::fabs(a) : -std::fabs(a);
}

}  // namespace

PivotedLu::PivotedLu(const Matrix& a, double pivot_rel_tol) : lu_(a) {
  lu_.require_square("PivotedLu");
  const int n = lu_.rows();
  const double scale = lu_.max_row_sum();
  perm_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm_[static_cast<std::size_t>(i)] = i;
  for (int p = 0; p < n; ++p) {
    int best = p;
    double bestval = std::fabs(lu_(p, p));
    for (int r = p + 1; r < n; ++r) {
      const double v = std::fabs(lu_(r, p));
      if (v > bestval) {
        bestval = v;
        best = r;
      }
    }
    if (bestval <= pivot_rel_tol * scale)
      throw SingularMatrix("pivoted elimination: pivot " + std::to_string(p) +
                           " below " + std::to_string(pivot_rel_tol) +
                           " * max row sum");
    if (best != p) {
      for (int j = 0; j < n; ++j) std::swap(lu_(p, j), lu_(best, j));
      std::swap(perm_[static_cast<std::size_t>(p)],
                perm_[static_cast<std::size_t>(best)]);
    }
    if (p < n - 1) kernels::lu_eliminate_column(lu_.data(), n, p);
  }
}

std::vector<double> PivotedLu::solve(const std::vector<double>& b) const {
  const int n = lu_.rows();
  if (static_cast<int>(b.size()) != n)
    throw DimensionMismatch("PivotedLu::solve: rhs length " +
                            std::to_string(b.size()) + " vs n = " +
                            std::to_string(n));
  std::vector<double> x(b.size());
  for (int i = 0; i < n; ++i)
    x[static_cast<std::size_t>(i)] =
        b[static_cast<std::size_t>(perm_[static_cast<std::size_t>(i)])];
  kernels::lu_substitute(lu_.data(), x.data(), n, 1);
  return x;
}

Matrix PivotedLu::solve(const Matrix& b) const {
  const int n = lu_.rows();
  if (b.rows() != n)
    throw DimensionMismatch("PivotedLu::solve: rhs has " +
                            std::to_string(b.rows()) + " rows vs n = " +
                            std::to_string(n));
  Matrix x(n, b.cols());
  for (int i = 0; i < n; ++i) {
    const int src = perm_[static_cast<std::size_t>(i)];
    for (int j = 0; j < b.cols(); ++j) x(i, j) = b(src, j);
  }
  kernels::lu_substitute(lu_.data(), x.data(), n, b.cols());
  return x;
}

Matrix PivotedLu::inverse() const {
  return solve(Matrix::identity(lu_.rows()));
}

Matrix solve_dense(const Matrix& a, const Matrix& b, double pivot_rel_tol) {
  return PivotedLu(a, pivot_rel_tol).solve(b);
}

std::vector<double> solve_dense(const Matrix& a, const std::vector<double>& b,
                                double pivot_rel_tol) {
  return PivotedLu(a, pivot_rel_tol).solve(b);
}

EigenReport sym_eigenvalues(const Matrix& a, double sym_rel_tol,
                            double off_rel_tol) {
  a.require_square("sym_eigenvalues");
  const int n = a.rows();
  const double anorm = a.frobenius_norm();
  const double asym = (a - a.transpose()).frobenius_norm();
  if (asym > sym_rel_tol * anorm)
    throw NotSymmetric("sym_eigenvalues: ||A - A^T||_F = " +
                       std::to_string(asym) + " exceeds " +
                       std::to_string(sym_rel_tol) + " * ||A||_F");
  Matrix w = symmetric_part(a);

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) s += w(i, j) * w(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > off_rel_tol * anorm) {
    if (++sweep > defaults::jacobi_max_sweeps)
      throw NoConvergence("cyclic Jacobi did not reach the off-diagonal "
                          "threshold within the sweep cap");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = w(p, q);
        if (apq == 0.0) continue;
        const double tau = (w(q, q) - w(p, p)) / (2.0 * apq);
        const double t =
            sign_of(1.0, tau) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        w(p, p) -= t * apq;
        w(q, q) += t * apq;
        w(p, q) = 0.0;
        w(q, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = w(i, p);
          const double aiq = w(i, q);
          w(i, p) = c * aip - s * aiq;
          w(p, i) = w(i, p);
          w(i, q) = s * aip + c * aiq;
          w(q, i) = w(i, q);
        }
      }
    }
  }

  std::vector<double> vals(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = w(i, i);
  std::sort(vals.begin(), vals.end());
  EigenReport report;
  report.symmetric_input = true;
  report.values.reserve(vals.size());
  for (double v : vals) report.values.emplace_back(v, 0.0);
  return report;
}

std::vector<double> sym_eigenvalues_real(const Matrix& a, double sym_rel_tol,
                                         double off_rel_tol) {
  EigenReport r = sym_eigenvalues(a, sym_rel_tol, off_rel_tol);
  std::vector<double> out;
  out.reserve(r.values.size());
  for (const auto& z : r.values) out.push_back(z.real());
  return out;
}

namespace {

// Householder similarity reduction to upper Hessenberg form, in place.
void hessenberg_reduce(Matrix& h) {
  const int n = h.rows();
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n - 2; ++k) {
    double colnorm = 0.0;
    for (int i = k + 1; i < n; ++i) colnorm += h(i, k) * h(i, k);
    colnorm = std::sqrt(colnorm);
    if (colnorm == 0.0) continue;
    const double alpha = -sign_of(colnorm, h(k + 1, k));
    double vnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) {
      v[static_cast<std::size_t>(i)] = h(i, k);
      if (i == k + 1) v[static_cast<std::size_t>(i)] -= alpha;
      vnorm2 += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
    }
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;
    // A <- (I - beta v v^T) A
    for (int j = k; j < n; ++j) {
      double s = 0.0;
      for (int i = k + 1; i < n; ++i) s += v[static_cast<std::size_t>(i)] * h(i, j);
      s *= beta;
      for (int i = k + 1; i < n; ++i) h(i, j) -= s * v[static_cast<std::size_t>(i)];
    }
    // A <- A (I - beta v v^T)
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = k + 1; j < n; ++j) s += h(i, j) * v[static_cast<std::size_t>(j)];
      s *= beta;
      for (int j = k + 1; j < n; ++j) h(i, j) -= s * v[static_cast<std::size_t>(j)];
    }
    h(k + 1, k) = alpha;
    for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

// Francis double-shift QR on an upper Hessenberg matrix (classic EISPACK
// hqr scheme) with exceptional shifts every ten stalled iterations. Eats h.
std::vector<std::complex<double>> hessenberg_qr(Matrix& h, int sweep_budget) {
  const int n = h.rows();
  std::vector<std::complex<double>> wri;
  wri.reserve(static_cast<std::size_t>(n));
  const double eps = DBL_EPSILON;

  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::fabs(h(i, j));

  int nn = n - 1;
  double t = 0.0;
  int total_sweeps = 0;
  while (nn >= 0) {
    int its = 0;
    int l;
    do {
      for (l = nn; l >= 1; --l) {
        double s = std::fabs(h(l - 1, l - 1)) + std::fabs(h(l, l));
        if (s == 0.0) s = anorm;
        if (std::fabs(h(l, l - 1)) <= eps * s) {
          h(l, l - 1) = 0.0;
          break;
        }
      }
      double x = h(nn, nn);
      if (l == nn) {
        wri.emplace_back(x + t, 0.0);
        --nn;
      } else {
        double y = h(nn - 1, nn - 1);
        double w = h(nn, nn - 1) * h(nn - 1, nn);
        if (l == nn - 1) {
          double p = 0.5 * (y - x);
          double q = p * p + w;
          double z = std::sqrt(std::fabs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign_of(z, p);
            double r1 = x + z;
            double r2 = (z != 0.0) ? x - w / z : r1;
            wri.emplace_back(r1, 0.0);
            wri.emplace_back(r2, 0.0);
          } else {
            wri.emplace_back(x + p, z);
            wri.emplace_back(x + p, -z);
          }
          nn -= 2;
        } else {
          if (++total_sweeps > sweep_budget)
            throw NoConvergence("Hessenberg QR: sweep budget of " +
                                std::to_string(sweep_budget) + " exhausted");
          if (its == 10 || its == 20) {
            t += x;
            for (int i = 0; i <= nn; ++i) h(i, i) -= x;
            double s = std::fabs(h(nn, nn - 1)) + std::fabs(h(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          if (its > 20) its = 0;  // re-arm the exceptional shifts
          int m;
          double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
          for (m = nn - 2; m >= l; --m) {
            z = h(m, m);
            double rr = x - z;
            double ss = y - z;
            p = (rr * ss - w) / h(m + 1, m) + h(m, m + 1);
            q = h(m + 1, m + 1) - z - rr - ss;
            r = h(m + 2, m + 1);
            double s = std::fabs(p) + std::fabs(q) + std::fabs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::fabs(h(m, m - 1)) * (std::fabs(q) + std::fabs(r));
            const double v = std::fabs(p) * (std::fabs(h(m - 1, m - 1)) +
                                             std::fabs(z) +
                                             std::fabs(h(m + 1, m + 1)));
            if (u <= eps * v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            h(i, i - 2) = 0.0;
            if (i != m + 2) h(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = h(k, k - 1);
              q = h(k + 1, k - 1);
              r = 0.0;
              if (k != nn - 1) r = h(k + 2, k - 1);
              x = std::fabs(p) + std::fabs(q) + std::fabs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) h(k, k - 1) = -h(k, k - 1);
            } else {
              h(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              p = h(k, j) + q * h(k + 1, j);
              if (k != nn - 1) {
                p += r * h(k + 2, j);
                h(k + 2, j) -= p * z;
              }
              h(k + 1, j) -= p * y;
              h(k, j) -= p * x;
            }
            const int mmin = nn < k + 3 ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {
              p = x * h(i, k) + y * h(i, k + 1);
              if (k != nn - 1) {
                p += z * h(i, k + 2);
                h(i, k + 2) -= p * r;
              }
              h(i, k + 1) -= p * q;
              h(i, k) -= p;
            }
          }
        }
      }
    } while (l < nn - 1);
  }
  return wri;
}

}  // namespace

EigenReport eigenvalues_general(const Matrix& a) {
  a.require_square("eigenvalues_general");
  const int n = a.rows();
  if (n > defaults::eig_max_n)
    throw DimensionMismatch("eigenvalues_general: n = " + std::to_string(n) +
                            " exceeds the supported cap of " +
                            std::to_string(defaults::eig_max_n));
  EigenReport report;
  const double anorm = a.frobenius_norm();
  report.symmetric_input =
      (a - a.transpose()).frobenius_norm() <= defaults::symmetry_rel_tol * anorm;
  if (n == 0) return report;
  Matrix h = a;
  hessenberg_reduce(h);
  report.values = hessenberg_qr(h, defaults::eig_sweeps_per_n * n);
  std::sort(report.values.begin(), report.values.end(),
            [](const std::complex<double>& x, const std::complex<double>& y) {
              if (x.real() != y.real()) return x.real() < y.real();
              return x.imag() < y.imag();
            });
  return report;
}

double spectral_radius(const EigenReport& r) {
  double m = 0.0;
  for (const auto& z : r.values) m = std::max(m, std::abs(z));
  return m;
}

double spectral_norm2(const Matrix& a) {
  const Matrix ata = multiply(a, a, true, false);
  const std::vector<double> ev = sym_eigenvalues_real(ata);
  const double top = ev.empty() ? 0.0 : ev.back();
  return std::sqrt(std::max(top, 0.0));
}

Matrix expm(const Matrix& a) {
  a.require_square("expm");
  const int n = a.rows();
  const double nrm = a.frobenius_norm();
  int s = 0;
  double scaled = nrm;
  while (scaled > defaults::expm_scale_norm) {
    scaled *= 0.5;
    ++s;
  }
  Matrix b = a;
  b *= std::ldexp(1.0, -s);
  // Horner form of the truncated Taylor series.
  Matrix p = Matrix::identity(n);
  for (int k = defaults::expm_series_terms; k >= 1; --k) {
    p = Matrix::identity(n) + (b * p) * (1.0 / k);
  }
  for (int i = 0; i < s; ++i) p = p * p;
  return p;
}

Matrix sqrtm_principal(const Matrix& a, double residual_rel) {
  a.require_square("sqrtm_principal");
  const int n = a.rows();
  const double anorm = a.frobenius_norm();
  const EigenReport eig = eigenvalues_general(a);
  const double scale = std::max(anorm, 1.0);
  for (const auto& z : eig.values) {
    if (std::fabs(z.imag()) <= defaults::negative_axis_rel_tol * scale &&
        z.real() <= defaults::negative_axis_rel_tol * scale)
      throw NegativeRealEigenvalue(
          "sqrtm_principal: eigenvalue " + std::to_string(z.real()) +
          " lies on the closed negative real axis");
  }

  Matrix y = a;
  Matrix z = Matrix::identity(n);
  double prev_delta = -1.0;
  bool settled = false;
  for (int it = 0; it < defaults::matrix_iteration_cap; ++it) {
    const Matrix yinv = PivotedLu(y).inverse();
    const Matrix zinv = PivotedLu(z).inverse();
    const Matrix yn = 0.5 * (y + zinv);
    const Matrix zn = 0.5 * (z + yinv);
    const double delta = (yn - y).frobenius_norm();
    y = yn;
    z = zn;
    const double ynorm = y.frobenius_norm();
    if (delta <= 5e-15 * std::max(1.0, ynorm) ||
        (prev_delta >= 0.0 && delta >= prev_delta &&
         delta <= 1e-12 * std::max(1.0, ynorm))) {
      settled = true;
      break;
    }
    prev_delta = delta;
  }
  if (!settled)
    throw NoConvergence("sqrtm_principal: Denman-Beavers did not settle "
                        "within the iteration cap");
  const double resid = (y * y - a).frobenius_norm();
  if (resid > residual_rel * std::max(anorm, 1e-300))
    throw NoConvergence("sqrtm_principal: residual " + std::to_string(resid) +
                        " above " + std::to_string(residual_rel) +
                        " * ||A||_F after stagnation");
  return y;
}

}  // namespace liesplit
