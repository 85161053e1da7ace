#include "liesplit/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace liesplit {

namespace {

void check_system(const Matrix& a, const std::vector<double>& b,
                  const char* who) {
  a.require_square(who);
  if (static_cast<int>(b.size()) != a.rows())
    throw DimensionMismatch(std::string(who) + ": rhs length " +
                            std::to_string(b.size()) + " vs n = " +
                            std::to_string(a.rows()));
}

std::vector<double> starting_point(const SolverConfig& cfg, std::size_t n,
                                   const char* who) {
  if (cfg.x0.empty()) return std::vector<double>(n, 0.0);
  if (cfg.x0.size() != n)
    throw DimensionMismatch(std::string(who) + ": x0 length " +
                            std::to_string(cfg.x0.size()) + " vs expected " +
                            std::to_string(n));
  return cfg.x0;
}

double check_alpha(const std::optional<double>& alpha, double fallback,
                   const char* who) {
  const double a = alpha.value_or(fallback);
  if (!(a > 0.0))
    throw Error(std::string(who) + ": alpha must be positive, got " +
                std::to_string(a));
  return a;
}

Matrix shifted(Matrix m, double alpha) {
  for (int i = 0; i < m.rows(); ++i) m(i, i) += alpha;
  return m;
}

PivotedLu shift_lu(const Matrix& m, double alpha, const char* which) {
  try {
    return PivotedLu(shifted(m, alpha));
  } catch (const SingularMatrix&) {
    throw SingularShift(std::string(which) + " + alpha I is numerically "
                        "singular at alpha = " + std::to_string(alpha));
  }
}

double contraction_bound(const std::vector<double>& eigenvalues, double alpha) {
  double bound = 0.0;
  for (double lam : eigenvalues)
    bound = std::max(bound, std::fabs(alpha - lam) / std::fabs(alpha + lam));
  return bound;
}

// Shared iteration bookkeeping: relative (or absolute for b = 0) residuals,
// history, iterate recording, convergence flag.
class IterationLog {
public:
  IterationLog(SolveReport& report, const SolverConfig& cfg, double bnorm)
      : report_(report), cfg_(cfg), denom_(bnorm > 0.0 ? bnorm : 1.0) {}

  void start(const std::vector<double>& x, double residual_norm) {
    report_.residual_history.push_back(residual_norm / denom_);
    if (cfg_.record_iterates) report_.iterates.push_back(x);
  }

  bool done() const {
    return report_.residual_history.back() <= cfg_.tol ||
           report_.iterations >= cfg_.max_iter;
  }

  void step(const std::vector<double>& x, double residual_norm) {
    ++report_.iterations;
    report_.residual_history.push_back(residual_norm / denom_);
    if (cfg_.record_iterates) report_.iterates.push_back(x);
  }

  void finish(std::vector<double> x) {
    report_.converged = report_.residual_history.back() <= cfg_.tol;
    report_.x = std::move(x);
  }

  double denom() const { return denom_; }

private:
  SolveReport& report_;
  const SolverConfig& cfg_;
  double denom_;
};

}  // namespace

SolveReport j_hss_solve(const Matrix& a, const std::vector<double>& b,
                        const BilinearStructure& j, const SolverConfig& cfg) {
  check_system(a, b, "j_hss_solve");
  if (a.rows() != j.n())
    throw DimensionMismatch("j_hss_solve: matrix order " +
                            std::to_string(a.rows()) + " but J has n = " +
                            std::to_string(j.n()));
  const Matrix& jm = j.matrix();
  const Splitting split = j_split(a, j);
  const Matrix hj = split.part(PartTag::Jordan) * jm;
  const Matrix sj = split.part(PartTag::Lie) * jm;

  // Convergence is guaranteed by positive definiteness of HJ (symmetric J)
  // or SJ (skew J); both products are symmetric, so Jacobi applies.
  const Matrix& factor = j.sign() > 0 ? hj : sj;
  const std::vector<double> ev = sym_eigenvalues_real(factor);
  const bool definite =
      ev.front() > defaults::definite_rel_tol * factor.frobenius_norm();
  if (!definite && !cfg.force)
    throw WellDefinednessViolated(
        "j_hss_solve: the definite factor " +
        std::string(j.sign() > 0 ? "HJ" : "SJ") +
        " is not positive definite (lambda_min = " + std::to_string(ev.front()) +
        "); pass force to iterate anyway");

  const double alpha = check_alpha(
      cfg.alpha, definite ? std::sqrt(ev.front() * ev.back()) : 1.0,
      "j_hss_solve");
  const PivotedLu lu_hj = shift_lu(hj, alpha, "HJ");
  const PivotedLu lu_sj = shift_lu(sj, alpha, "SJ");

  SolveReport report;
  report.alpha_used = alpha;
  if (definite) report.rho_bound = contraction_bound(ev, alpha);
  report.notes.push_back(std::string("definite_factor: ") +
                         (j.sign() > 0 ? "HJ" : "SJ"));
  report.notes.push_back(std::string("definite: ") +
                         (definite ? "true" : "false"));
  if (!definite) report.notes.push_back("forced: true");

  const std::vector<double> x0 = starting_point(cfg, b.size(), "j_hss_solve");
  std::vector<double> y = j.inverse() * x0;
  std::vector<double> x = jm * y;

  IterationLog log(report, cfg, norm2(b));
  log.start(x, norm2(b - a * x));
  while (!log.done()) {
    // (HJ + aI) y_half = (aI - SJ) y + b, then the mirrored half-step.
    std::vector<double> r = b;
    {
      const std::vector<double> sjy = sj * y;
      for (std::size_t i = 0; i < r.size(); ++i)
        r[i] += alpha * y[i] - sjy[i];
    }
    const std::vector<double> yh = lu_hj.solve(r);
    r = b;
    {
      const std::vector<double> hjyh = hj * yh;
      for (std::size_t i = 0; i < r.size(); ++i)
        r[i] += alpha * yh[i] - hjyh[i];
    }
    y = lu_sj.solve(r);
    x = jm * y;
    log.step(x, norm2(b - a * x));
  }
  log.finish(std::move(x));
  return report;
}

IterationAnalysis iteration_analysis(const Matrix& a,
                                     const BilinearStructure& j, double alpha) {
  a.require_square("iteration_analysis");
  if (a.rows() != j.n())
    throw DimensionMismatch("iteration_analysis: matrix order " +
                            std::to_string(a.rows()) + " but J has n = " +
                            std::to_string(j.n()));
  if (!(alpha > 0.0))
    throw Error("iteration_analysis: alpha must be positive");
  const Matrix& jm = j.matrix();
  const Splitting split = j_split(a, j);
  const Matrix js = jm * split.part(PartTag::Lie);
  const Matrix jh = jm * split.part(PartTag::Jordan);
  const int n = a.rows();
  const Matrix eye = Matrix::identity(n);

  const PivotedLu lu_jh = shift_lu(jh, alpha, "JH");
  const PivotedLu lu_js = shift_lu(js, alpha, "JS");
  const Matrix inner = lu_jh.solve(alpha * eye - js);
  IterationAnalysis out;
  out.alpha = alpha;
  out.t = lu_js.solve((alpha * eye - jh) * inner);
  out.rho = spectral_radius(eigenvalues_general(out.t));
  const Matrix factor = j.sign() > 0 ? split.part(PartTag::Jordan) * jm
                                     : split.part(PartTag::Lie) * jm;
  out.factor_eigenvalues = sym_eigenvalues_real(factor);
  out.bound = contraction_bound(out.factor_eigenvalues, alpha);
  return out;
}

double optimal_alpha(const Matrix& a, const BilinearStructure& j) {
  a.require_square("optimal_alpha");
  const Splitting split = j_split(a, j);
  const Matrix factor = j.sign() > 0 ? split.part(PartTag::Jordan) * j.matrix()
                                     : split.part(PartTag::Lie) * j.matrix();
  const std::vector<double> ev = sym_eigenvalues_real(factor);
  if (ev.front() <= defaults::definite_rel_tol * factor.frobenius_norm())
    throw NotPositiveDefinite(
        "optimal_alpha: " + std::string(j.sign() > 0 ? "HJ" : "SJ") +
        " is not positive definite (lambda_min = " + std::to_string(ev.front()) +
        ")");
  return std::sqrt(ev.front() * ev.back());
}

struct JHssPreconditioner::Prepared {
  Matrix jm;
  double alpha;
  PivotedLu lu_hj;
  PivotedLu lu_sj;
};

JHssPreconditioner::JHssPreconditioner(Prepared&& p)
    : jmat_(std::move(p.jm)),
      alpha_(p.alpha),
      lu_hj_(std::move(p.lu_hj)),
      lu_sj_(std::move(p.lu_sj)) {}

JHssPreconditioner::JHssPreconditioner(const Matrix& a,
                                       const BilinearStructure& j, double alpha)
    : JHssPreconditioner([&]() -> Prepared {
        a.require_square("JHssPreconditioner");
        if (!(alpha > 0.0))
          throw Error("JHssPreconditioner: alpha must be positive");
        const Splitting split = j_split(a, j);
        const Matrix hj = split.part(PartTag::Jordan) * j.matrix();
        const Matrix sj = split.part(PartTag::Lie) * j.matrix();
        return {j.matrix(), alpha, shift_lu(hj, alpha, "HJ"),
                shift_lu(sj, alpha, "SJ")};
      }()) {}

std::vector<double> JHssPreconditioner::apply(
    const std::vector<double>& v) const {
  // P_a^-1 v = 2a J (SJ + aI)^-1 (HJ + aI)^-1 v.
  std::vector<double> w = lu_hj_.solve(v);
  w = lu_sj_.solve(w);
  w = jmat_ * w;
  for (double& t : w) t *= 2.0 * alpha_;
  return w;
}

std::vector<double> apply_preconditioner(const Matrix& a,
                                         const BilinearStructure& j,
                                         double alpha,
                                         const std::vector<double>& v) {
  return JHssPreconditioner(a, j, alpha).apply(v);
}

SolveReport gmres_preconditioned(
    const Matrix& a, const std::vector<double>& b,
    const std::function<std::vector<double>(const std::vector<double>&)>&
        precondition,
    int restart, const SolverConfig& cfg) {
  check_system(a, b, "gmres");
  const int n = a.rows();
  if (restart < 1) throw Error("gmres: restart must be at least 1");
  restart = std::min(restart, n);
  const double anorm = a.frobenius_norm();

  SolveReport report;
  std::vector<double> x = starting_point(cfg, b.size(), "gmres");
  const double bnorm = norm2(b);
  const double denom = bnorm > 0.0 ? bnorm : 1.0;
  report.residual_history.push_back(norm2(b - a * x) / denom);
  if (cfg.record_iterates) report.iterates.push_back(x);

  while (report.residual_history.back() > cfg.tol &&
         report.iterations < cfg.max_iter) {
    std::vector<double> r = b - a * x;
    const double beta = norm2(r);
    if (beta / denom <= cfg.tol) break;

    std::vector<std::vector<double>> v(static_cast<std::size_t>(restart) + 1);
    Matrix h(restart + 1, restart);
    std::vector<double> cs(static_cast<std::size_t>(restart));
    std::vector<double> sn(static_cast<std::size_t>(restart));
    std::vector<double> g(static_cast<std::size_t>(restart) + 1, 0.0);
    v[0] = (1.0 / beta) * r;
    g[0] = beta;

    int used = 0;
    bool happy = false;
    for (int k = 0; k < restart && report.iterations < cfg.max_iter; ++k) {
      ++report.iterations;
      const std::vector<double> z =
          precondition ? precondition(v[static_cast<std::size_t>(k)])
                       : v[static_cast<std::size_t>(k)];
      std::vector<double> w = a * z;
      for (int i = 0; i <= k; ++i) {
        const double hik = dot(w, v[static_cast<std::size_t>(i)]);
        h(i, k) = hik;
        for (int t = 0; t < n; ++t)
          w[static_cast<std::size_t>(t)] -=
              hik * v[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
      }
      const double hnext = norm2(w);
      h(k + 1, k) = hnext;
      for (int i = 0; i < k; ++i) {
        const double t1 = cs[static_cast<std::size_t>(i)] * h(i, k) +
                          sn[static_cast<std::size_t>(i)] * h(i + 1, k);
        const double t2 = -sn[static_cast<std::size_t>(i)] * h(i, k) +
                          cs[static_cast<std::size_t>(i)] * h(i + 1, k);
        h(i, k) = t1;
        h(i + 1, k) = t2;
      }
      const double rr = std::hypot(h(k, k), h(k + 1, k));
      cs[static_cast<std::size_t>(k)] = rr == 0.0 ? 1.0 : h(k, k) / rr;
      sn[static_cast<std::size_t>(k)] = rr == 0.0 ? 0.0 : h(k + 1, k) / rr;
      h(k, k) = rr;
      h(k + 1, k) = 0.0;
      g[static_cast<std::size_t>(k) + 1] =
          -sn[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(k)];
      g[static_cast<std::size_t>(k)] =
          cs[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(k)];
      used = k + 1;
      report.residual_history.push_back(
          std::fabs(g[static_cast<std::size_t>(used)]) / denom);
      // Happy breakdown: the Krylov space closed, the projected solution
      // is exact.
      if (hnext <= 1e-14 * std::max(anorm, 1.0)) {
        happy = true;
        break;
      }
      if (report.residual_history.back() <= cfg.tol) break;
      v[static_cast<std::size_t>(k) + 1] = (1.0 / hnext) * w;
    }

    std::vector<double> y(static_cast<std::size_t>(used), 0.0);
    for (int i = used - 1; i >= 0; --i) {
      double s = g[static_cast<std::size_t>(i)];
      for (int j2 = i + 1; j2 < used; ++j2)
        s -= h(i, j2) * y[static_cast<std::size_t>(j2)];
      y[static_cast<std::size_t>(i)] = s / h(i, i);
    }
    std::vector<double> u(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < used; ++i)
      for (int t = 0; t < n; ++t)
        u[static_cast<std::size_t>(t)] +=
            y[static_cast<std::size_t>(i)] *
            v[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
    const std::vector<double> dx = precondition ? precondition(u) : u;
    for (int t = 0; t < n; ++t) x[static_cast<std::size_t>(t)] += dx[static_cast<std::size_t>(t)];

    // True residual replaces the last estimate at the restart boundary.
    report.residual_history.back() = norm2(b - a * x) / denom;
    if (cfg.record_iterates) report.iterates.push_back(x);
    if (happy) break;
  }
  report.converged = report.residual_history.back() <= cfg.tol;
  report.x = std::move(x);
  return report;
}

namespace {

// Solve (aI + T) x = r where T is the triangular part carried by the STS
// splitting; direction picks back or forward substitution.
std::vector<double> shifted_triangular_solve(const Matrix& t, double alpha,
                                             const std::vector<double>& r,
                                             StsDirection direction,
                                             double scale) {
  const int n = t.rows();
  std::vector<double> x(r);
  if (direction == StsDirection::Upper) {
    for (int i = n - 1; i >= 0; --i) {
      double s = x[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < n; ++j) s -= t(i, j) * x[static_cast<std::size_t>(j)];
      const double d = alpha + t(i, i);
      if (std::fabs(d) <= defaults::pivot_rel_tol * scale)
        throw SingularShift("sts: alpha + diagonal entry " + std::to_string(i) +
                            " vanishes");
      x[static_cast<std::size_t>(i)] = s / d;
    }
  } else {
    for (int i = 0; i < n; ++i) {
      double s = x[static_cast<std::size_t>(i)];
      for (int j = 0; j < i; ++j) s -= t(i, j) * x[static_cast<std::size_t>(j)];
      const double d = alpha + t(i, i);
      if (std::fabs(d) <= defaults::pivot_rel_tol * scale)
        throw SingularShift("sts: alpha + diagonal entry " + std::to_string(i) +
                            " vanishes");
      x[static_cast<std::size_t>(i)] = s / d;
    }
  }
  return x;
}

}  // namespace

SolveReport sts_solve(const Matrix& a, const std::vector<double>& b,
                      const SolverConfig& cfg, StsDirection direction) {
  check_system(a, b, "sts_solve");
  const Splitting split = triangular_split(
      a, direction == StsDirection::Upper ? TriangularMode::SkewUpper
                                          : TriangularMode::SkewLower);
  const Matrix& s = split.part(PartTag::Lie);
  const Matrix& t = direction == StsDirection::Upper
                        ? split.part(PartTag::Upper)
                        : split.part(PartTag::Lower);

  const std::vector<double> sym_ev = sym_eigenvalues_real(symmetric_part(a));
  const bool definite =
      sym_ev.front() >
      defaults::definite_rel_tol * symmetric_part(a).frobenius_norm();
  const double alpha = check_alpha(
      cfg.alpha, definite ? std::sqrt(sym_ev.front() * sym_ev.back()) : 1.0,
      "sts_solve");

  SolveReport report;
  report.alpha_used = alpha;
  report.notes.push_back(std::string("symmetric_part_definite: ") +
                         (definite ? "true" : "false"));
  if (definite) report.rho_bound = contraction_bound(sym_ev, alpha);

  const double scale = std::max(a.max_row_sum(), 1.0);
  const PivotedLu lu_s = shift_lu(s, alpha, "skew part");

  std::vector<double> x = starting_point(cfg, b.size(), "sts_solve");
  IterationLog log(report, cfg, norm2(b));
  log.start(x, norm2(b - a * x));
  while (!log.done()) {
    std::vector<double> r = b;
    {
      const std::vector<double> sx = s * x;
      for (std::size_t i = 0; i < r.size(); ++i) r[i] += alpha * x[i] - sx[i];
    }
    const std::vector<double> xh =
        shifted_triangular_solve(t, alpha, r, direction, scale);
    r = b;
    {
      const std::vector<double> txh = t * xh;
      for (std::size_t i = 0; i < r.size(); ++i) r[i] += alpha * xh[i] - txh[i];
    }
    x = lu_s.solve(r);
    log.step(x, norm2(b - a * x));
  }
  log.finish(std::move(x));
  return report;
}

SolveReport adi_solve(const Matrix& a, const Matrix& b,
                      const std::vector<double>& rhs, const SolverConfig& cfg) {
  a.require_square("adi_solve");
  b.require_square("adi_solve");
  if (a.rows() != b.rows())
    throw DimensionMismatch("adi_solve: factors have orders " +
                            std::to_string(a.rows()) + " and " +
                            std::to_string(b.rows()));
  const int n = a.rows();
  if (n > defaults::adi_max_n)
    throw DimensionMismatch("adi_solve: n = " + std::to_string(n) +
                            " exceeds the supported cap of " +
                            std::to_string(defaults::adi_max_n));
  if (static_cast<int>(rhs.size()) != n * n)
    throw DimensionMismatch("adi_solve: rhs length " +
                            std::to_string(rhs.size()) + " vs n^2 = " +
                            std::to_string(n * n));

  // Auto shift: when both factors are symmetric and the extreme eigenvalue
  // sums are positive, balance the two contraction factors; otherwise 1.0.
  double fallback = 1.0;
  std::string alpha_note = "alpha_policy: default 1.0";
  const double asym = (a - a.transpose()).frobenius_norm();
  const double bsym = (b - b.transpose()).frobenius_norm();
  if (asym <= defaults::symmetry_rel_tol * std::max(a.frobenius_norm(), 1.0) &&
      bsym <= defaults::symmetry_rel_tol * std::max(b.frobenius_norm(), 1.0)) {
    const std::vector<double> eva = sym_eigenvalues_real(a);
    const std::vector<double> evb = sym_eigenvalues_real(b);
    const double lo = eva.front() + evb.front();
    const double hi = eva.back() + evb.back();
    if (lo > 0.0) {
      fallback = std::sqrt(lo * hi);
      alpha_note = "alpha_policy: sqrt of extreme eigenvalue sums";
    }
  }
  const double alpha = check_alpha(cfg.alpha, fallback, "adi_solve");

  const PivotedLu lu_a = shift_lu(a, alpha, "A factor");
  const PivotedLu lu_b = shift_lu(b, alpha, "B factor");

  SolveReport report;
  report.alpha_used = alpha;
  if (!cfg.alpha.has_value()) report.notes.push_back(alpha_note);

  std::vector<double> x = starting_point(cfg, rhs.size(), "adi_solve");
  const Matrix nrhs = reshape_to_matrix(rhs, n, n);
  Matrix xm = reshape_to_matrix(x, n, n);

  IterationLog log(report, cfg, norm2(rhs));
  log.start(x, norm2(rhs - kron_sum_apply(a, b, x)));
  while (!log.done()) {
    // (aI + A (x) I) x_half = (aI - I (x) B) x + rhs, one factored solve
    // against the n columns of the reshape.
    Matrix r1 = alpha * xm - multiply(xm, b, false, true) + nrhs;
    const Matrix xh = lu_a.solve(r1);
    Matrix r2 = alpha * xh - a * xh + nrhs;
    xm = lu_b.solve(r2.transpose()).transpose();
    x = reshape_to_vector(xm);
    log.step(x, norm2(rhs - kron_sum_apply(a, b, x)));
  }
  log.finish(std::move(x));
  return report;
}

SolveReport classical_solve(const Matrix& a, const std::vector<double>& b,
                            ClassicalMethod method, const SolverConfig& cfg) {
  check_system(a, b, "classical_solve");
  const int n = a.rows();
  const double scale = a.max_row_sum();
  for (int i = 0; i < n; ++i)
    if (std::fabs(a(i, i)) <= defaults::pivot_rel_tol * scale)
      throw ZeroDiagonal("classical_solve: diagonal entry " +
                         std::to_string(i) + " vanishes");

  SolveReport report;
  if (n <= defaults::eig_max_n) {
    Matrix t(n, n);
    switch (method) {
      case ClassicalMethod::Jacobi: {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            t(i, j) = i == j ? 0.0 : -a(i, j) / a(i, i);
        break;
      }
      case ClassicalMethod::GaussSeidelForward: {
        Matrix m(n, n), u0(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            (j <= i ? m(i, j) : u0(i, j)) = a(i, j);
        t = solve_dense(m, -1.0 * u0);
        break;
      }
      case ClassicalMethod::GaussSeidelBackward: {
        Matrix m(n, n), l0(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            (j >= i ? m(i, j) : l0(i, j)) = a(i, j);
        t = solve_dense(m, -1.0 * l0);
        break;
      }
    }
    report.rho_estimate = spectral_radius(eigenvalues_general(t));
  }

  std::vector<double> x = starting_point(cfg, b.size(), "classical_solve");
  IterationLog log(report, cfg, norm2(b));
  log.start(x, norm2(b - a * x));
  while (!log.done()) {
    switch (method) {
      case ClassicalMethod::Jacobi: {
        const std::vector<double> r = b - a * x;
        for (int i = 0; i < n; ++i)
          x[static_cast<std::size_t>(i)] += r[static_cast<std::size_t>(i)] / a(i, i);
        break;
      }
      case ClassicalMethod::GaussSeidelForward: {
        for (int i = 0; i < n; ++i) {
          double s = b[static_cast<std::size_t>(i)];
          for (int j = 0; j < n; ++j)
            if (j != i) s -= a(i, j) * x[static_cast<std::size_t>(j)];
          x[static_cast<std::size_t>(i)] = s / a(i, i);
        }
        break;
      }
      case ClassicalMethod::GaussSeidelBackward: {
        for (int i = n - 1; i >= 0; --i) {
          double s = b[static_cast<std::size_t>(i)];
          for (int j = 0; j < n; ++j)
            if (j != i) s -= a(i, j) * x[static_cast<std::size_t>(j)];
          x[static_cast<std::size_t>(i)] = s / a(i, i);
        }
        break;
      }
    }
    log.step(x, norm2(b - a * x));
  }
  log.finish(std::move(x));
  return report;
}

}  // namespace liesplit
