#include "liesplit/factorizations.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "liesplit/matkit.hpp"

namespace liesplit {

std::string to_string(FactorScheme scheme) {
  switch (scheme) {
    case FactorScheme::LuDoolittle: return "lu";
    case FactorScheme::LuCrout: return "crout";
    case FactorScheme::Ldu: return "ldu";
    case FactorScheme::Qr: return "qr";
    case FactorScheme::Lq: return "lq";
    case FactorScheme::Qdr: return "qdr";
    case FactorScheme::Polar: return "polar";
    case FactorScheme::JPolar: return "jpolar";
  }
  return "?";
}

std::string to_string(LinearizationScheme scheme) {
  switch (scheme) {
    case LinearizationScheme::Polar: return "polar";
    case LinearizationScheme::JPolar: return "jpolar";
    case LinearizationScheme::Qr: return "qr";
    case LinearizationScheme::Lq: return "lq";
    case LinearizationScheme::Qdr: return "qdr";
    case LinearizationScheme::Ldu: return "ldu";
  }
  return "?";
}

Matrix FactorizationResult::product() const {
  Matrix p = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) p = p * factors[i];
  return p;
}

const Matrix& FactorizationResult::factor(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return factors[i];
  throw Error("factorization has no factor named " + name);
}

namespace {

enum class Shape { UnitLower, Lower, UnitUpper, Upper, Diagonal };

// Deviation of a factor from its advertised triangular shape. The
// factorizations below write the off-pattern entries as exact zeros, so this
// comes back 0.0 and serves as a recorded guarantee rather than a tolerance.
double shape_residual(const Matrix& f, Shape shape) {
  double s = 0.0;
  for (int i = 0; i < f.rows(); ++i) {
    for (int j = 0; j < f.cols(); ++j) {
      double dev = 0.0;
      const bool diag = i == j;
      const bool lower = i > j;
      const bool upper = i < j;
      switch (shape) {
        case Shape::UnitLower:
          if (diag) dev = f(i, j) - 1.0;
          else if (upper) dev = f(i, j);
          break;
        case Shape::Lower:
          if (upper) dev = f(i, j);
          break;
        case Shape::UnitUpper:
          if (diag) dev = f(i, j) - 1.0;
          else if (lower) dev = f(i, j);
          break;
        case Shape::Upper:
          if (lower) dev = f(i, j);
          break;
        case Shape::Diagonal:
          if (!diag) dev = f(i, j);
          break;
      }
      s += dev * dev;
    }
  }
  return std::sqrt(s);
}

double orthogonality_residual(const Matrix& q) {
  return (multiply(q, q, true, false) - Matrix::identity(q.rows()))
      .frobenius_norm();
}

}  // namespace

FactorizationResult lu_ldu(const Matrix& a, LuForm form, double pivot_rel_tol) {
  a.require_square("lu_ldu");
  const int n = a.rows();
  const double scale = a.max_row_sum();
  Matrix u = a;
  Matrix l = Matrix::identity(n);
  for (int k = 0; k < n; ++k) {
    if (std::fabs(u(k, k)) <= pivot_rel_tol * scale)
      throw ZeroLeadingMinor(
          k + 1, "lu_ldu: leading principal minor " + std::to_string(k + 1) +
                     " vanishes; pivot-free elimination cannot continue");
    for (int r = k + 1; r < n; ++r) {
      const double m = u(r, k) / u(k, k);
      l(r, k) = m;
      u(r, k) = 0.0;
      for (int j = k + 1; j < n; ++j) u(r, j) -= m * u(k, j);
    }
  }

  FactorizationResult out;
  switch (form) {
    case LuForm::Doolittle: {
      out.scheme = FactorScheme::LuDoolittle;
      out.names = {"L", "U"};
      out.factors = {l, u};
      out.structural_residuals = {shape_residual(l, Shape::UnitLower),
                                  shape_residual(u, Shape::Upper)};
      break;
    }
    case LuForm::Crout: {
      out.scheme = FactorScheme::LuCrout;
      // A = (L D)(D^-1 U): push the pivots into the left factor.
      Matrix lc = l;
      Matrix uc = u;
      for (int j = 0; j < n; ++j) {
        const double d = u(j, j);
        for (int i = 0; i < n; ++i) lc(i, j) *= d;
        for (int i = 0; i < n; ++i) uc(j, i) = u(j, i) / d;
        uc(j, j) = 1.0;
      }
      out.names = {"L", "U"};
      out.factors = {lc, uc};
      out.structural_residuals = {shape_residual(lc, Shape::Lower),
                                  shape_residual(uc, Shape::UnitUpper)};
      break;
    }
    case LuForm::Ldu: {
      out.scheme = FactorScheme::Ldu;
      Matrix d(n, n);
      Matrix u1 = u;
      for (int j = 0; j < n; ++j) {
        d(j, j) = u(j, j);
        for (int i = 0; i < n; ++i) u1(j, i) = u(j, i) / u(j, j);
        u1(j, j) = 1.0;
      }
      out.names = {"L", "D", "U"};
      out.factors = {l, d, u1};
      out.structural_residuals = {shape_residual(l, Shape::UnitLower),
                                  shape_residual(d, Shape::Diagonal),
                                  shape_residual(u1, Shape::UnitUpper)};
      break;
    }
  }
  out.product_residual = (out.product() - a).frobenius_norm();
  return out;
}

namespace {

// Householder QR of a square matrix with diag(R) made positive. Q is formed
// explicitly; desk scale keeps that cheap.
void householder_qr(const Matrix& a, Matrix& q, Matrix& r) {
  const int n = a.rows();
  r = a;
  q = Matrix::identity(n);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n - 1; ++k) {
    double colnorm = 0.0;
    for (int i = k; i < n; ++i) colnorm += r(i, k) * r(i, k);
    colnorm = std::sqrt(colnorm);
    if (colnorm == 0.0) continue;
    const double alpha = r(k, k) >= 0.0 ? -colnorm : colnorm;
    double vnorm2 = 0.0;
    for (int i = k; i < n; ++i) {
      v[static_cast<std::size_t>(i)] = r(i, k);
      if (i == k) v[static_cast<std::size_t>(i)] -= alpha;
      vnorm2 += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
    }
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;
    for (int j = k; j < n; ++j) {
      double s = 0.0;
      for (int i = k; i < n; ++i) s += v[static_cast<std::size_t>(i)] * r(i, j);
      s *= beta;
      for (int i = k; i < n; ++i) r(i, j) -= s * v[static_cast<std::size_t>(i)];
    }
    r(k, k) = alpha;
    for (int i = k + 1; i < n; ++i) r(i, k) = 0.0;
    // Q accumulates the reflectors on the right: Q <- Q H_k.
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = k; j < n; ++j) s += q(i, j) * v[static_cast<std::size_t>(j)];
      s *= beta;
      for (int j = k; j < n; ++j) q(i, j) -= s * v[static_cast<std::size_t>(j)];
    }
  }
  for (int i = 0; i < n; ++i) {
    if (r(i, i) < 0.0) {
      for (int j = i; j < n; ++j) r(i, j) = -r(i, j);
      for (int k2 = 0; k2 < n; ++k2) q(k2, i) = -q(k2, i);
    }
  }
}

}  // namespace

FactorizationResult qr_qdr(const Matrix& a, QrForm form,
                           double singular_rel_tol) {
  a.require_square("qr_qdr");
  const int n = a.rows();
  const double scale = a.max_row_sum();

  FactorizationResult out;
  if (form == QrForm::Lq) {
    Matrix qt, rt;
    householder_qr(a.transpose(), qt, rt);
    for (int i = 0; i < n; ++i)
      if (rt(i, i) <= singular_rel_tol * scale)
        throw NumericallySingular("lq: diagonal entry " + std::to_string(i) +
                                  " of the triangular factor is below " +
                                  std::to_string(singular_rel_tol) +
                                  " * max row sum");
    out.scheme = FactorScheme::Lq;
    out.names = {"L", "Q"};
    out.factors = {rt.transpose(), qt.transpose()};
    out.structural_residuals = {shape_residual(out.factors[0], Shape::Lower),
                                orthogonality_residual(out.factors[1])};
    out.product_residual = (out.product() - a).frobenius_norm();
    return out;
  }

  Matrix q, r;
  householder_qr(a, q, r);
  for (int i = 0; i < n; ++i)
    if (r(i, i) <= singular_rel_tol * scale)
      throw NumericallySingular("qr: R(" + std::to_string(i) + "," +
                                std::to_string(i) + ") is below " +
                                std::to_string(singular_rel_tol) +
                                " * max row sum");
  if (form == QrForm::Qr) {
    out.scheme = FactorScheme::Qr;
    out.names = {"Q", "R"};
    out.factors = {q, r};
    out.structural_residuals = {orthogonality_residual(q),
                                shape_residual(r, Shape::Upper)};
  } else {
    out.scheme = FactorScheme::Qdr;
    Matrix d(n, n);
    Matrix u1 = r;
    for (int i = 0; i < n; ++i) {
      d(i, i) = r(i, i);
      for (int j = 0; j < n; ++j) u1(i, j) = r(i, j) / r(i, i);
      u1(i, i) = 1.0;
      for (int j = 0; j < i; ++j) u1(i, j) = 0.0;
    }
    out.names = {"Q", "D", "R"};
    out.factors = {q, d, u1};
    out.structural_residuals = {orthogonality_residual(q),
                                shape_residual(d, Shape::Diagonal),
                                shape_residual(u1, Shape::UnitUpper)};
  }
  out.product_residual = (out.product() - a).frobenius_norm();
  return out;
}

FactorizationResult polar(const Matrix& a, double orth_tol) {
  a.require_square("polar");
  Matrix x = a;
  bool converged = false;
  try {
    for (int it = 0; it < defaults::matrix_iteration_cap; ++it) {
      const double orth = orthogonality_residual(x);
      if (orth <= orth_tol) {
        converged = true;
        break;
      }
      const Matrix xinvt = PivotedLu(x.transpose()).inverse();
      double g = 1.0;
      if (orth > 1e-2) {
        // (1, inf)-norm scaling accelerates the early phase.
        const Matrix xinv = xinvt.transpose();
        const double num = xinv.transpose().max_row_sum() * xinv.max_row_sum();
        const double den = x.transpose().max_row_sum() * x.max_row_sum();
        if (num > 0.0 && den > 0.0) g = std::pow(num / den, 0.25);
      }
      x = 0.5 * (g * x + (1.0 / g) * xinvt);
    }
  } catch (const SingularMatrix&) {
    throw NumericallySingular("polar: iterate became numerically singular; "
                              "the input must be invertible");
  }
  if (!converged)
    throw NoConvergence("polar: Newton iteration missed the orthogonality "
                        "tolerance within the cap");
  const Matrix qta = multiply(x, a, true, false);
  const Matrix p = symmetric_part(qta);
  FactorizationResult out;
  out.scheme = FactorScheme::Polar;
  out.names = {"Q", "P"};
  out.factors = {x, p};
  out.structural_residuals = {orthogonality_residual(x),
                              (p - p.transpose()).frobenius_norm()};
  out.product_residual = (out.product() - a).frobenius_norm();
  return out;
}

FactorizationResult generalized_polar(const Matrix& a,
                                      const BilinearStructure& j,
                                      double residual_tol) {
  a.require_square("generalized_polar");
  if (a.rows() != j.n())
    throw DimensionMismatch("generalized_polar: matrix order " +
                            std::to_string(a.rows()) + " but J has n = " +
                            std::to_string(j.n()));
  // A* A = J^-1 A^T J A.
  const Matrix astar_a =
      j.inverse() * multiply(a, j.matrix() * a, true, false);
  Matrix p;
  try {
    p = sqrtm_principal(astar_a);
  } catch (const NegativeRealEigenvalue& e) {
    throw ExistenceViolated(
        std::string("generalized_polar: J^-1 A^T J A has spectrum on the "
                    "closed negative real axis; ") +
        e.what());
  }
  // Q = A P^-1 through a dense solve: P^T Q^T = A^T.
  Matrix q;
  try {
    q = solve_dense(p.transpose(), a.transpose()).transpose();
  } catch (const SingularMatrix&) {
    throw ExistenceViolated("generalized_polar: the Jordan factor is "
                            "numerically singular");
  }
  const Matrix& jm = j.matrix();
  const double group_resid =
      (multiply(q, jm * q, true, false) - jm).frobenius_norm();
  const double jordan_resid = membership_residual(p, j, AlgebraSide::Jordan);
  const double jnorm = std::max(1.0, jm.frobenius_norm());
  if (group_resid > residual_tol * jnorm ||
      jordan_resid > residual_tol * (1.0 + p.frobenius_norm()))
    throw NoConvergence("generalized_polar: structural residuals " +
                        std::to_string(group_resid) + " (group), " +
                        std::to_string(jordan_resid) +
                        " (Jordan) exceed the tolerance");
  FactorizationResult out;
  out.scheme = FactorScheme::JPolar;
  out.names = {"Q", "P"};
  out.factors = {q, p};
  out.structural_residuals = {group_resid, jordan_resid};
  out.product_residual = (out.product() - a).frobenius_norm();
  return out;
}

namespace {

struct ExpectedParts {
  std::vector<std::string> names;
  std::vector<Matrix> parts;
};

ExpectedParts expected_parts(LinearizationScheme scheme, const Matrix& a,
                             const BilinearStructure& j) {
  ExpectedParts e;
  switch (scheme) {
    case LinearizationScheme::Polar: {
      const Splitting s = j_split(a, BilinearStructure::identity(a.rows()));
      e.names = {"Q", "P"};
      e.parts = {s.part(PartTag::Lie), s.part(PartTag::Jordan)};
      break;
    }
    case LinearizationScheme::JPolar: {
      const Splitting s = j_split(a, j);
      e.names = {"Q", "P"};
      e.parts = {s.part(PartTag::Lie), s.part(PartTag::Jordan)};
      break;
    }
    case LinearizationScheme::Qr: {
      const Splitting s = triangular_split(a, TriangularMode::SkewUpper);
      e.names = {"Q", "R"};
      e.parts = {s.part(PartTag::Lie), s.part(PartTag::Upper)};
      break;
    }
    case LinearizationScheme::Lq: {
      const Splitting s = triangular_split(a, TriangularMode::SkewLower);
      e.names = {"L", "Q"};
      e.parts = {s.part(PartTag::Lower), s.part(PartTag::Lie)};
      break;
    }
    case LinearizationScheme::Qdr: {
      const Splitting s = triangular_split(a, TriangularMode::SkewUpper);
      const Splitting refine =
          triangular_split(s.part(PartTag::Upper), TriangularMode::Ldu);
      e.names = {"Q", "D", "R"};
      e.parts = {s.part(PartTag::Lie), refine.part(PartTag::Diagonal),
                 refine.part(PartTag::StrictUpper)};
      break;
    }
    case LinearizationScheme::Ldu: {
      const Splitting s = triangular_split(a, TriangularMode::Ldu);
      e.names = {"L", "D", "U"};
      e.parts = {s.part(PartTag::StrictLower), s.part(PartTag::Diagonal),
                 s.part(PartTag::StrictUpper)};
      break;
    }
  }
  return e;
}

FactorizationResult factor_for(LinearizationScheme scheme, const Matrix& f,
                               const BilinearStructure& j) {
  switch (scheme) {
    case LinearizationScheme::Polar: return polar(f);
    case LinearizationScheme::JPolar: return generalized_polar(f, j);
    case LinearizationScheme::Qr: return qr_qdr(f, QrForm::Qr);
    case LinearizationScheme::Lq: return qr_qdr(f, QrForm::Lq);
    case LinearizationScheme::Qdr: return qr_qdr(f, QrForm::Qdr);
    case LinearizationScheme::Ldu: return lu_ldu(f, LuForm::Ldu);
  }
  throw Error("unknown linearization scheme");
}

double fit_slope(const std::vector<double>& hs, const std::vector<double>& es) {
  const std::size_t n = hs.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = std::log(hs[i]);
    ys[i] = std::log(std::max(es[i], 1e-300));
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  return num / den;
}

}  // namespace

LinearizationReport linearization_check(LinearizationScheme scheme,
                                        const Matrix& a,
                                        const BilinearStructure& j,
                                        const std::vector<double>& steps) {
  a.require_square("linearization_check");
  if (steps.size() < 2)
    throw DimensionMismatch("linearization_check: need at least two steps "
                            "to fit an order");
  const ExpectedParts expected = expected_parts(scheme, a, j);
  const std::size_t nparts = expected.parts.size();

  LinearizationReport report;
  report.scheme = scheme;
  report.steps = steps;
  report.part_names = expected.names;
  report.errors.assign(nparts, std::vector<double>(steps.size(), 0.0));

  const Matrix eye = Matrix::identity(a.rows());
  for (std::size_t s = 0; s < steps.size(); ++s) {
    const double h = steps[s];
    const Matrix f = expm(h * a);
    FactorizationResult fact;
    try {
      fact = factor_for(scheme, f, j);
    } catch (const Error& e) {
      throw FactorizationFailed(
          h, "linearization_check: factorization of expm(h A) failed at h = " +
                 std::to_string(h) + ": " + e.what());
    }
    for (std::size_t i = 0; i < nparts; ++i) {
      const Matrix fd = (1.0 / h) * (fact.factors[i] - eye);
      report.errors[i][s] = (fd - expected.parts[i]).frobenius_norm();
    }
  }

  report.part_orders.assign(nparts, 0.0);
  report.exact_parts.assign(nparts, false);
  std::vector<double> combined(steps.size(), 0.0);
  bool any_inexact = false;
  // A part whose finite difference already matches at the coarsest step is
  // constant in h (e.g. the P factor of a skew input); it carries no slope
  // information and is excluded from the fit.
  std::size_t coarsest = 0;
  for (std::size_t s = 1; s < steps.size(); ++s)
    if (steps[s] > steps[coarsest]) coarsest = s;
  for (std::size_t i = 0; i < nparts; ++i) {
    if (report.errors[i][coarsest] <= 1e-10) {
      report.exact_parts[i] = true;
      report.part_orders[i] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    any_inexact = true;
    report.part_orders[i] = fit_slope(steps, report.errors[i]);
    for (std::size_t s = 0; s < steps.size(); ++s)
      combined[s] += report.errors[i][s];
  }
  report.fitted_order = any_inexact
                            ? fit_slope(steps, combined)
                            : std::numeric_limits<double>::quiet_NaN();
  return report;
}

LinearizationReport linearization_check(LinearizationScheme scheme,
                                        const Matrix& a,
                                        const std::vector<double>& steps) {
  if (scheme == LinearizationScheme::JPolar)
    throw Error("linearization_check: jpolar needs an explicit J");
  return linearization_check(scheme, a, BilinearStructure::identity(a.rows()),
                             steps);
}

}  // namespace liesplit
