#include "liesplit/cli/commands.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <ostream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "liesplit/cli/manifest.hpp"
#include "liesplit/cli/report.hpp"
#include "liesplit/errors.hpp"
#include "liesplit/factorizations.hpp"
#include "liesplit/matrix_market.hpp"
#include "liesplit/rng.hpp"
#include "liesplit/solvers.hpp"
#include "liesplit/splittings.hpp"
#include "liesplit/structures.hpp"
#include "liesplit/tolerances.hpp"

namespace liesplit::cli {
namespace {

struct Options {
  std::string matrix;
  std::string rhs;
  std::string j = "identity";
  bool j_given = false;
  std::string method;
  std::string scheme;
  std::string alpha = "auto";
  std::string tol = "1e-10";
  std::string max_iter = "10000";
  std::string seed = "12345";
  std::string out_path;
  bool no_timestamp = false;
};

using Clock = std::chrono::steady_clock;

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double parse_double(const std::string& text, const std::string& what) {
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || text.empty() || !std::isfinite(v))
    throw Error(what + " expects a finite number, got '" + text + "'");
  return v;
}

long parse_long(const std::string& text, const std::string& what) {
  char* end = nullptr;
  long v = std::strtol(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size() || text.empty())
    throw Error(what + " expects an integer, got '" + text + "'");
  return v;
}

// identity | pq:p,q | symplectic:m | custom:path, checked against the
// operand dimension n.
BilinearStructure parse_structure(const std::string& spec, int n) {
  if (spec == "identity") return BilinearStructure::identity(n);
  if (spec.rfind("pq:", 0) == 0) {
    std::string body = spec.substr(3);
    size_t comma = body.find(',');
    if (comma == std::string::npos)
      throw Error("--j pq form is pq:p,q, got '" + spec + "'");
    int p = static_cast<int>(parse_long(body.substr(0, comma), "--j pq p"));
    int q = static_cast<int>(parse_long(body.substr(comma + 1), "--j pq q"));
    if (p + q != n)
      throw DimensionMismatch("--j " + spec + " needs p+q = " + std::to_string(n));
    return BilinearStructure::pseudo_euclidean(p, q);
  }
  if (spec.rfind("symplectic:", 0) == 0) {
    int m = static_cast<int>(parse_long(spec.substr(11), "--j symplectic m"));
    if (2 * m != n)
      throw DimensionMismatch("--j " + spec + " needs 2m = " + std::to_string(n));
    return BilinearStructure::symplectic(m);
  }
  if (spec.rfind("custom:", 0) == 0) {
    Matrix jm = mm::read_matrix_file(spec.substr(7));
    if (jm.rows() != n || jm.cols() != n)
      throw DimensionMismatch("custom J is " + std::to_string(jm.rows()) + "x" +
                              std::to_string(jm.cols()) + ", operand is " +
                              std::to_string(n) + "x" + std::to_string(n));
    return BilinearStructure::custom(jm);
  }
  throw Error("unrecognized --j '" + spec +
              "'; use identity | pq:p,q | symplectic:m | custom:path");
}

void describe_input(Report& rep, const std::string& path, const Matrix& a) {
  rep.open("input");
  rep.kv("path", path);
  rep.kv("rows", a.rows());
  rep.kv("cols", a.cols());
  rep.kv("frobenius-norm", a.frobenius_norm());
  rep.close();
}

void finish(Report& rep, const Options& o, Clock::time_point t0,
            std::ostream& out) {
  if (!o.no_timestamp) {
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    rep.kv("wall-ms", ms);
  }
  out << rep.render();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Deviation of a part from its advertised shape: entries outside the
// pattern for triangular tags, symmetry defect for lie/jordan against the
// identity form, trace defects for the Levi pair.
double shape_residual(const Matrix& w, PartTag tag) {
  auto outside = [&](auto allowed) {
    double s = 0.0;
    for (int i = 0; i < w.rows(); ++i)
      for (int j = 0; j < w.cols(); ++j)
        if (!allowed(i, j)) s += w(i, j) * w(i, j);
    return std::sqrt(s);
  };
  switch (tag) {
    case PartTag::Lower:
      return outside([](int i, int j) { return i >= j; });
    case PartTag::Upper:
      return outside([](int i, int j) { return i <= j; });
    case PartTag::StrictLower:
      return outside([](int i, int j) { return i > j; });
    case PartTag::StrictUpper:
      return outside([](int i, int j) { return i < j; });
    case PartTag::Diagonal:
      return outside([](int i, int j) { return i == j; });
    case PartTag::Lie:
      return membership_residual(w, BilinearStructure::identity(w.rows()),
                                 AlgebraSide::Lie);
    case PartTag::Jordan:
      return membership_residual(w, BilinearStructure::identity(w.rows()),
                                 AlgebraSide::Jordan);
    case PartTag::Trace: {
      double tau = w.trace() / w.rows();
      Matrix d = w - Matrix::diagonal(std::vector<double>(
                         static_cast<size_t>(w.rows()), tau));
      return d.frobenius_norm();
    }
    case PartTag::Traceless:
      return std::abs(w.trace());
    case PartTag::LeftFactor:
    case PartTag::RightFactor:
      return 0.0;
  }
  return 0.0;
}

// Weighted orthogonality Tr(H^T J^T J S) = <H, S>; collapses to Tr(H^T S)
// for the canonical kinds where J^T J = I.
double split_orthogonality(const Splitting& sp, const BilinearStructure& j) {
  Matrix jh = j.matrix() * sp.part(PartTag::Jordan);
  Matrix js = j.matrix() * sp.part(PartTag::Lie);
  return multiply(jh, js, true, false).trace();
}

std::vector<std::string> residual_row(size_t k, double r) {
  return {std::to_string(k), Report::num(r)};
}

void emit_solve_core(Report& rep, const SolveReport& sr) {
  if (std::isfinite(sr.alpha_used)) rep.kv("alpha-used", sr.alpha_used);
  rep.kv("iterations", sr.iterations);
  rep.kv("converged", sr.converged);
  if (!sr.residual_history.empty())
    rep.kv("final-residual", sr.residual_history.back());
  if (std::isfinite(sr.rho_estimate)) rep.kv("rho", sr.rho_estimate);
  if (std::isfinite(sr.rho_bound)) rep.kv("rho-bound", sr.rho_bound);
  if (!sr.notes.empty()) rep.kv("notes", join(sr.notes, "; "));
  std::vector<std::vector<std::string>> rows;
  rows.reserve(sr.residual_history.size());
  for (size_t k = 0; k < sr.residual_history.size(); ++k)
    rows.push_back(residual_row(k, sr.residual_history[k]));
  rep.table("residual-history", {"iteration", "residual"}, rows);
}

// ---------------------------------------------------------------- split --

TriangularMode triangular_mode(const std::string& scheme) {
  if (scheme == "doolittle") return TriangularMode::Doolittle;
  if (scheme == "crout") return TriangularMode::Crout;
  if (scheme == "ldu") return TriangularMode::Ldu;
  if (scheme == "jacobi") return TriangularMode::Jacobi;
  if (scheme == "skew-upper") return TriangularMode::SkewUpper;
  if (scheme == "skew-lower") return TriangularMode::SkewLower;
  if (scheme == "levi") return TriangularMode::Levi;
  throw Error("unknown split scheme '" + scheme +
              "'; use j-split | doolittle | crout | ldu | jacobi | "
              "skew-upper | skew-lower | levi | kronecker-sum");
}

int cmd_split(const Options& o, std::ostream& out) {
  auto t0 = Clock::now();
  Matrix a = mm::read_matrix_file(o.matrix);
  std::string scheme = o.scheme.empty() ? "j-split" : o.scheme;

  RunManifest man;
  man.command = "split";
  man.set("matrix", o.matrix);
  man.set("scheme", scheme);
  if (scheme == "j-split") man.set("j", o.j);
  if (!o.out_path.empty()) man.set("out", o.out_path);
  if (o.no_timestamp) man.set_flag("no-timestamp");

  Report rep("split");
  rep.kv("invocation", man.render());
  if (!o.no_timestamp) rep.kv("timestamp", utc_now());
  describe_input(rep, o.matrix, a);
  rep.kv("scheme", scheme);

  Splitting sp{SplitScheme::JSplit, {}};
  BilinearStructure j = BilinearStructure::identity(std::max(a.rows(), 1));
  if (scheme == "j-split") {
    j = parse_structure(o.j, a.rows());
    rep.kv("j", j.descriptor());
    sp = j_split(a, j);
  } else if (scheme == "kronecker-sum") {
    sp = kronecker_split(a);
  } else {
    sp = triangular_split(a, triangular_mode(scheme));
  }

  rep.open("parts");
  for (const auto& [tag, part] : sp.parts) {
    rep.open(to_string(tag));
    rep.kv("frobenius-norm", part.frobenius_norm());
    if (scheme == "j-split") {
      AlgebraSide side =
          tag == PartTag::Lie ? AlgebraSide::Lie : AlgebraSide::Jordan;
      rep.kv("membership-residual", membership_residual(part, j, side));
    } else {
      rep.kv("shape-residual", shape_residual(part, tag));
    }
    rep.close();
  }
  rep.close();

  rep.kv("reconstruction-residual", (a - sp.sum()).frobenius_norm());
  if (scheme == "j-split") {
    double orth = split_orthogonality(sp, j);
    rep.kv("orthogonality", orth);
    double na = a.frobenius_norm();
    rep.kv("orthogonality-rel", na > 0 ? std::abs(orth) / (na * na) : 0.0);
  }

  if (!o.out_path.empty()) {
    rep.open("artifacts");
    for (const auto& [tag, part] : sp.parts) {
      std::string path = o.out_path + "." + to_string(tag) + ".mtx";
      mm::write_matrix_file(path, part);
      rep.kv(to_string(tag), path);
    }
    rep.close();
  }
  finish(rep, o, t0, out);
  return 0;
}

// --------------------------------------------------------------- factor --

int cmd_factor(const Options& o, std::ostream& out) {
  auto t0 = Clock::now();
  Matrix a = mm::read_matrix_file(o.matrix);
  if (o.scheme.empty())
    throw Error("factor needs --scheme lu | crout | ldu | qr | lq | qdr | "
                "polar | jpolar");
  const std::string& scheme = o.scheme;

  RunManifest man;
  man.command = "factor";
  man.set("matrix", o.matrix);
  man.set("scheme", scheme);
  if (scheme == "jpolar") man.set("j", o.j);
  if (!o.out_path.empty()) man.set("out", o.out_path);
  if (o.no_timestamp) man.set_flag("no-timestamp");

  Report rep("factor");
  rep.kv("invocation", man.render());
  if (!o.no_timestamp) rep.kv("timestamp", utc_now());
  describe_input(rep, o.matrix, a);
  rep.kv("scheme", scheme);

  FactorizationResult fr{FactorScheme::LuDoolittle, {}, {}, {}, 0.0};
  if (scheme == "lu") {
    fr = lu_ldu(a, LuForm::Doolittle);
  } else if (scheme == "crout") {
    fr = lu_ldu(a, LuForm::Crout);
  } else if (scheme == "ldu") {
    fr = lu_ldu(a, LuForm::Ldu);
  } else if (scheme == "qr") {
    fr = qr_qdr(a, QrForm::Qr);
  } else if (scheme == "lq") {
    fr = qr_qdr(a, QrForm::Lq);
  } else if (scheme == "qdr") {
    fr = qr_qdr(a, QrForm::Qdr);
  } else if (scheme == "polar") {
    fr = polar(a);
  } else if (scheme == "jpolar") {
    BilinearStructure j = parse_structure(o.j, a.rows());
    rep.kv("j", j.descriptor());
    fr = generalized_polar(a, j);
  } else {
    throw Error("unknown factor scheme '" + scheme +
                "'; use lu | crout | ldu | qr | lq | qdr | polar | jpolar");
  }

  rep.open("factors");
  for (size_t i = 0; i < fr.names.size(); ++i) {
    rep.open(fr.names[i]);
    rep.kv("frobenius-norm", fr.factors[i].frobenius_norm());
    rep.kv("structural-residual", fr.structural_residuals[i]);
    rep.close();
  }
  rep.close();
  rep.kv("product-residual", fr.product_residual);
  double na = a.frobenius_norm();
  rep.kv("product-residual-rel", na > 0 ? fr.product_residual / na : 0.0);

  if (!o.out_path.empty()) {
    rep.open("artifacts");
    for (size_t i = 0; i < fr.names.size(); ++i) {
      std::string path = o.out_path + "." + lowercase(fr.names[i]) + ".mtx";
      mm::write_matrix_file(path, fr.factors[i]);
      rep.kv(lowercase(fr.names[i]), path);
    }
    rep.close();
  }
  finish(rep, o, t0, out);
  return 0;
}

// ---------------------------------------------------------------- solve --

int cmd_solve(const Options& o, std::ostream& out) {
  auto t0 = Clock::now();
  Matrix a = mm::read_matrix_file(o.matrix);
  std::vector<double> b = mm::read_vector_file(o.rhs);
  if (o.method.empty())
    throw Error("solve needs --method j-hss | hss | sts | sts-lower | adi | "
                "jacobi | gauss-seidel | gauss-seidel-backward | gmres | "
                "gmres-jhss");
  const std::string& method = o.method;

  SolverConfig cfg;
  cfg.tol = parse_double(o.tol, "--tol");
  if (cfg.tol <= 0) throw Error("--tol must be positive");
  long mi = parse_long(o.max_iter, "--max-iter");
  if (mi < 1) throw Error("--max-iter must be at least 1");
  cfg.max_iter = static_cast<int>(mi);
  if (o.alpha != "auto") {
    double al = parse_double(o.alpha, "--alpha");
    if (al <= 0) throw Error("--alpha must be positive (or 'auto')");
    cfg.alpha = al;
  }

  bool uses_j = method == "j-hss" || method == "hss" || method == "gmres-jhss";

  RunManifest man;
  man.command = "solve";
  man.set("matrix", o.matrix);
  man.set("rhs", o.rhs);
  man.set("method", method);
  if (uses_j) man.set("j", o.j);
  man.set("alpha", o.alpha);
  man.set("tol", o.tol);
  man.set("max-iter", o.max_iter);
  if (!o.out_path.empty()) man.set("out", o.out_path);
  if (o.no_timestamp) man.set_flag("no-timestamp");

  Report rep("solve");
  rep.kv("invocation", man.render());
  if (!o.no_timestamp) rep.kv("timestamp", utc_now());
  describe_input(rep, o.matrix, a);
  rep.kv("method", method);

  SolveReport sr;
  if (method == "j-hss" || method == "hss") {
    BilinearStructure j = parse_structure(o.j, a.rows());
    rep.kv("j", j.descriptor());
    sr = j_hss_solve(a, b, j, cfg);
  } else if (method == "sts") {
    sr = sts_solve(a, b, cfg, StsDirection::Upper);
  } else if (method == "sts-lower") {
    sr = sts_solve(a, b, cfg, StsDirection::Lower);
  } else if (method == "adi") {
    auto [fa, fb] = kron_sum_factors(a);
    // The recovery pins Tr(B) = 0, but the operator only determines the
    // factors up to A+cI, B-cI, and ADI convergence depends on c. Spread
    // the mean diagonal evenly instead; symmetric pairings come back exactly.
    const int nb = fa.rows();
    const double c = (fa.trace() - fb.trace()) / (2.0 * nb);
    for (int i = 0; i < nb; ++i) {
      fa(i, i) -= c;
      fb(i, i) += c;
    }
    rep.kv("kronecker-block", nb);
    sr = adi_solve(fa, fb, b, cfg);
  } else if (method == "jacobi") {
    sr = classical_solve(a, b, ClassicalMethod::Jacobi, cfg);
  } else if (method == "gauss-seidel") {
    sr = classical_solve(a, b, ClassicalMethod::GaussSeidelForward, cfg);
  } else if (method == "gauss-seidel-backward") {
    sr = classical_solve(a, b, ClassicalMethod::GaussSeidelBackward, cfg);
  } else if (method == "gmres") {
    sr = gmres_preconditioned(a, b, nullptr, defaults::gmres_restart, cfg);
  } else if (method == "gmres-jhss") {
    BilinearStructure j = parse_structure(o.j, a.rows());
    rep.kv("j", j.descriptor());
    double al = cfg.alpha ? *cfg.alpha : optimal_alpha(a, j);
    JHssPreconditioner pre(a, j, al);
    sr = gmres_preconditioned(
        a, b, [&pre](const std::vector<double>& v) { return pre.apply(v); },
        defaults::gmres_restart, cfg);
    sr.alpha_used = al;
  } else {
    throw Error("unknown solve method '" + method + "'");
  }

  emit_solve_core(rep, sr);

  if (!o.out_path.empty()) {
    mm::write_vector_file(o.out_path, sr.x);
    rep.kv("solution-file", o.out_path);
  }
  finish(rep, o, t0, out);
  return sr.converged ? 0 : 2;
}

// -------------------------------------------------------------- analyze --

int cmd_analyze(const Options& o, std::ostream& out) {
  auto t0 = Clock::now();
  Matrix a = mm::read_matrix_file(o.matrix);
  BilinearStructure j = parse_structure(o.j, a.rows());

  RunManifest man;
  man.command = "analyze";
  man.set("matrix", o.matrix);
  man.set("j", o.j);
  if (o.no_timestamp) man.set_flag("no-timestamp");

  Report rep("analyze");
  rep.kv("invocation", man.render());
  if (!o.no_timestamp) rep.kv("timestamp", utc_now());
  describe_input(rep, o.matrix, a);
  rep.kv("j", j.descriptor());

  double astar = optimal_alpha(a, j);
  rep.kv("alpha-star", astar);
  IterationAnalysis at_star = iteration_analysis(a, j, astar);
  rep.kv("rho-at-alpha-star", at_star.rho);
  rep.kv("bound-at-alpha-star", at_star.bound);

  // 41 log-spaced shifts spanning [1e-2, 1e2] times alpha-star; the sweep
  // fans out across grid points, results are index-ordered so the report
  // does not depend on the thread count.
  const int npts = 41;
  std::vector<double> alphas(npts);
  for (int k = 0; k < npts; ++k)
    alphas[static_cast<size_t>(k)] = astar * std::pow(10.0, -2.0 + 4.0 * k / (npts - 1));
  std::vector<IterationAnalysis> grid(npts);
  std::vector<std::exception_ptr> errors(npts);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < npts; ++k) {
    try {
      grid[static_cast<size_t>(k)] =
          iteration_analysis(a, j, alphas[static_cast<size_t>(k)]);
    } catch (...) {
      errors[static_cast<size_t>(k)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<std::vector<std::string>> rows;
  rows.reserve(npts);
  int best = 0;
  for (int k = 0; k < npts; ++k) {
    const auto& g = grid[static_cast<size_t>(k)];
    rows.push_back({Report::num(g.alpha), Report::num(g.rho), Report::num(g.bound)});
    if (g.bound < grid[static_cast<size_t>(best)].bound) best = k;
  }
  rep.table("alpha-sweep", {"alpha", "rho", "bound"}, rows);
  rep.kv("grid-min-bound-alpha", grid[static_cast<size_t>(best)].alpha);
  rep.kv("grid-min-bound", grid[static_cast<size_t>(best)].bound);

  finish(rep, o, t0, out);
  return 0;
}

// --------------------------------------------------------------- verify --

struct VerifyRun {
  LinearizationScheme scheme;
  std::string label;
  bool has_j = false;
  BilinearStructure j = BilinearStructure::identity(1);
};

LinearizationScheme linearization_scheme(const std::string& name) {
  if (name == "polar") return LinearizationScheme::Polar;
  if (name == "jpolar") return LinearizationScheme::JPolar;
  if (name == "qr") return LinearizationScheme::Qr;
  if (name == "lq") return LinearizationScheme::Lq;
  if (name == "qdr") return LinearizationScheme::Qdr;
  if (name == "ldu") return LinearizationScheme::Ldu;
  throw Error("unknown verify scheme '" + name +
              "'; use all | polar | jpolar | qr | lq | qdr | ldu");
}

// The splitting whose parts the scheme's factors linearize to, in the same
// order as the linearization report lists them.
Splitting matching_split(LinearizationScheme s, const Matrix& a,
                         const BilinearStructure& j) {
  switch (s) {
    case LinearizationScheme::Polar:
      return j_split(a, BilinearStructure::identity(a.rows()));
    case LinearizationScheme::JPolar:
      return j_split(a, j);
    case LinearizationScheme::Qr:
      return triangular_split(a, TriangularMode::SkewUpper);
    case LinearizationScheme::Lq:
      return triangular_split(a, TriangularMode::SkewLower);
    case LinearizationScheme::Qdr: {
      Splitting coarse = triangular_split(a, TriangularMode::SkewUpper);
      Splitting fine{SplitScheme::SkewUpper, {}};
      fine.parts.emplace_back(PartTag::Lie, coarse.part(PartTag::Lie));
      const Matrix& u = coarse.part(PartTag::Upper);
      Matrix d(u.rows(), u.cols());
      for (int i = 0; i < u.rows(); ++i) d(i, i) = u(i, i);
      fine.parts.emplace_back(PartTag::Diagonal, d);
      fine.parts.emplace_back(PartTag::StrictUpper, u - d);
      return fine;
    }
    case LinearizationScheme::Ldu:
      return triangular_split(a, TriangularMode::Ldu);
  }
  throw Error("unreachable");
}

int cmd_verify(const Options& o, std::ostream& out) {
  auto t0 = Clock::now();
  unsigned long long seed =
      static_cast<unsigned long long>(parse_long(o.seed, "--seed"));

  Matrix a;
  if (!o.matrix.empty()) {
    a = mm::read_matrix_file(o.matrix);
    a.require_square("verify matrix");
  } else {
    const int n = 6;
    Rng rng(seed);
    a = Matrix(n, n);
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < n; ++jj) a(i, jj) = rng.normal();
    double na = a.frobenius_norm();
    a = (1.0 / na) * a;
  }
  const int n = a.rows();

  std::string scheme_sel = o.scheme.empty() ? "all" : o.scheme;
  std::vector<std::string> names;
  if (scheme_sel == "all") {
    names = {"polar", "jpolar", "qr", "lq", "qdr", "ldu"};
  } else {
    std::istringstream ss(scheme_sel);
    std::string tok;
    while (std::getline(ss, tok, ',')) names.push_back(tok);
  }

  std::vector<VerifyRun> runs;
  for (const auto& name : names) {
    LinearizationScheme s = linearization_scheme(name);
    if (s == LinearizationScheme::JPolar) {
      if (o.j_given) {
        VerifyRun r{s, "jpolar", true, parse_structure(o.j, n)};
        r.label = "jpolar[" + r.j.descriptor() + "]";
        runs.push_back(std::move(r));
      } else {
        VerifyRun r{s, "", true, BilinearStructure::pseudo_euclidean((n + 1) / 2, n / 2)};
        r.label = "jpolar[" + r.j.descriptor() + "]";
        runs.push_back(r);
        if (n % 2 == 0) {
          VerifyRun r2{s, "", true, BilinearStructure::symplectic(n / 2)};
          r2.label = "jpolar[" + r2.j.descriptor() + "]";
          runs.push_back(r2);
        }
      }
    } else {
      runs.push_back({s, name, false, BilinearStructure::identity(n)});
    }
  }

  RunManifest man;
  man.command = "verify";
  if (!o.matrix.empty())
    man.set("matrix", o.matrix);
  else
    man.set("seed", o.seed);
  man.set("scheme", scheme_sel);
  if (o.j_given) man.set("j", o.j);
  if (o.no_timestamp) man.set_flag("no-timestamp");

  Report rep("verify");
  rep.kv("invocation", man.render());
  if (!o.no_timestamp) rep.kv("timestamp", utc_now());
  if (o.matrix.empty()) {
    rep.open("input");
    rep.kv("source", "random unit-norm matrix");
    rep.kv("seed", static_cast<long>(seed));
    rep.kv("rows", n);
    rep.kv("cols", n);
    rep.close();
  } else {
    describe_input(rep, o.matrix, a);
  }

  bool all_pass = true;
  for (const auto& run : runs) {
    rep.open(run.label);
    if (run.has_j) rep.kv("j", run.j.descriptor());

    LinearizationReport lr =
        run.has_j ? linearization_check(run.scheme, a, run.j)
                  : linearization_check(run.scheme, a);
    Splitting sp = matching_split(run.scheme, a, run.j);

    bool pass = true;
    std::vector<std::string> headers = {"part"};
    for (double h : lr.steps) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "h=%g", h);
      headers.push_back(buf);
    }
    headers.push_back("order");
    std::vector<std::vector<std::string>> rows;
    for (size_t p = 0; p < lr.part_names.size(); ++p) {
      std::vector<std::string> row = {lr.part_names[p]};
      for (double e : lr.errors[p]) row.push_back(Report::num(e));
      if (lr.exact_parts[p]) {
        row.push_back("exact");
      } else {
        row.push_back(Report::num(lr.part_orders[p]));
        if (!(lr.part_orders[p] >= defaults::linearization_min_order))
          pass = false;
      }
      rows.push_back(std::move(row));
    }
    rep.table("part-errors", headers, rows);
    if (std::isnan(lr.fitted_order)) {
      rep.kv("fitted-order", "exact");
    } else {
      rep.kv("fitted-order", lr.fitted_order);
      if (!(lr.fitted_order >= defaults::linearization_min_order)) pass = false;
    }

    rep.open("split-residuals");
    bool is_jsplit = run.scheme == LinearizationScheme::Polar ||
                     run.scheme == LinearizationScheme::JPolar;
    const BilinearStructure& jj =
        run.has_j ? run.j : BilinearStructure::identity(n);
    for (const auto& [tag, part] : sp.parts) {
      double res;
      if (is_jsplit) {
        AlgebraSide side =
            tag == PartTag::Lie ? AlgebraSide::Lie : AlgebraSide::Jordan;
        res = membership_residual(part, jj, side);
      } else {
        res = shape_residual(part, tag);
      }
      rep.kv(to_string(tag), res);
      if (res > defaults::membership_rel_tol * (1.0 + part.frobenius_norm()))
        pass = false;
    }
    if (is_jsplit) {
      double orth = split_orthogonality(sp, jj);
      rep.kv("orthogonality", orth);
      double na = a.frobenius_norm();
      if (na > 0 &&
          std::abs(orth) > defaults::split_orthogonality_rel_tol * na * na)
        pass = false;
    }
    rep.close();

    rep.kv("verdict", pass ? "pass" : "fail");
    rep.close();
    all_pass = all_pass && pass;
  }

  rep.kv("verdict", all_pass ? "pass" : "fail");
  finish(rep, o, t0, out);
  return all_pass ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Lie/Jordan matrix splittings, the factorizations they "
               "linearize, and splitting-based iterative solvers"};
  app.require_subcommand(1);
  Options o;

  CLI::App* split = app.add_subcommand("split", "additively split a matrix");
  split->add_option("--matrix", o.matrix, "input matrix, Matrix Market")->required();
  split->add_option("--scheme", o.scheme,
                    "j-split | doolittle | crout | ldu | jacobi | skew-upper "
                    "| skew-lower | levi | kronecker-sum (default j-split)");
  split->add_option("--j", o.j, "identity | pq:p,q | symplectic:m | custom:path");
  split->add_option("--out", o.out_path, "stem for <stem>.<part>.mtx files");
  split->add_flag("--no-timestamp", o.no_timestamp, "omit timestamp and wall time");

  CLI::App* factor = app.add_subcommand("factor", "factor a matrix");
  factor->add_option("--matrix", o.matrix, "input matrix, Matrix Market")->required();
  factor->add_option("--scheme", o.scheme,
                     "lu | crout | ldu | qr | lq | qdr | polar | jpolar")->required();
  factor->add_option("--j", o.j, "identity | pq:p,q | symplectic:m | custom:path");
  factor->add_option("--out", o.out_path, "stem for <stem>.<factor>.mtx files");
  factor->add_flag("--no-timestamp", o.no_timestamp, "omit timestamp and wall time");

  CLI::App* solve = app.add_subcommand("solve", "solve A x = b by a splitting iteration");
  solve->add_option("--matrix", o.matrix, "system matrix, Matrix Market")->required();
  solve->add_option("--rhs", o.rhs, "right-hand side vector")->required();
  solve->add_option("--method", o.method,
                    "j-hss | hss | sts | sts-lower | adi | jacobi | "
                    "gauss-seidel | gauss-seidel-backward | gmres | gmres-jhss")
      ->required();
  solve->add_option("--j", o.j, "identity | pq:p,q | symplectic:m | custom:path");
  solve->add_option("--alpha", o.alpha, "shift parameter, or 'auto'");
  solve->add_option("--tol", o.tol, "relative residual tolerance (default 1e-10)");
  solve->add_option("--max-iter", o.max_iter, "iteration cap (default 10000)");
  solve->add_option("--out", o.out_path, "write the solution vector here");
  solve->add_flag("--no-timestamp", o.no_timestamp, "omit timestamp and wall time");

  CLI::App* analyze = app.add_subcommand(
      "analyze", "sweep the shift parameter and report rho and its bound");
  analyze->add_option("--matrix", o.matrix, "system matrix, Matrix Market")->required();
  analyze->add_option("--j", o.j, "identity | pq:p,q | symplectic:m | custom:path");
  analyze->add_flag("--no-timestamp", o.no_timestamp, "omit timestamp and wall time");

  CLI::App* verify = app.add_subcommand(
      "verify", "check factorizations linearize to their splittings");
  verify->add_option("--scheme,--schemes", o.scheme,
                     "all | comma list of polar,jpolar,qr,lq,qdr,ldu (default all)");
  verify->add_option("--matrix", o.matrix, "matrix to verify on (default: random)");
  verify->add_option("--j", o.j, "J for the jpolar scheme");
  verify->add_option("--seed", o.seed, "RNG seed for the default matrix");
  verify->add_flag("--no-timestamp", o.no_timestamp, "omit timestamp and wall time");

  try {
    std::vector<const char*> argv;
    argv.push_back("liesplit");
    for (const auto& s : args) argv.push_back(s.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 1;
  }

  o.j_given = (split->count("--j") + factor->count("--j") + solve->count("--j") +
               analyze->count("--j") + verify->count("--j")) > 0;

  try {
    if (split->parsed()) return cmd_split(o, out);
    if (factor->parsed()) return cmd_factor(o, out);
    if (solve->parsed()) return cmd_solve(o, out);
    if (analyze->parsed()) return cmd_analyze(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace liesplit::cli
