#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "liesplit/matkit.hpp"
#include "liesplit/matrix.hpp"
#include "liesplit/splittings.hpp"
#include "liesplit/structures.hpp"
#include "liesplit/tolerances.hpp"

namespace liesplit {

struct SolverConfig {
  // Shift parameter; empty means auto (the optimal shift when the relevant
  // definite factor exists, 1.0 otherwise).
  std::optional<double> alpha;
  double tol = defaults::solver_tol;
  int max_iter = defaults::solver_max_iter;
  std::vector<double> x0;  // empty = zero start
  // Run even when the convergence hypothesis fails its definiteness check.
  bool force = false;
  bool record_iterates = false;
};

// Residual convention throughout: ||b - A x|| / ||b||, absolute when b = 0.
// residual_history[k] is the residual after k full sweeps, starting with the
// initial guess at k = 0. Non-convergence is reported, not thrown.
struct SolveReport {
  std::vector<double> x;
  int iterations = 0;
  bool converged = false;
  double alpha_used = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> residual_history;
  // Spectral radius of the iteration matrix when the solver computed it
  // (classical methods); NaN otherwise.
  double rho_estimate = std::numeric_limits<double>::quiet_NaN();
  // Shift-dependent contraction bound when the definite factor was measured
  // (J-HSS family); NaN otherwise.
  double rho_bound = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::string> notes;
  std::vector<std::vector<double>> iterates;  // filled when record_iterates
};

// Two-parameter alternating iteration for A x = b driven by the Lie/Jordan
// splitting A = S + H of the structure J:
//   (H + a J^-1) x_half = (a J^-1 - S) x + b
//   (S + a J^-1) x_next = (a J^-1 - H) x_half + b
// Each half-step is solved through the shifted forms (HJ + aI) and (SJ + aI)
// acting on y = J^-1 x, factored once and reused. The iteration is
// guaranteed to converge when HJ (symmetric J) or SJ (skew J) is positive
// definite; otherwise it throws WellDefinednessViolated unless cfg.force.
SolveReport j_hss_solve(const Matrix& a, const std::vector<double>& b,
                        const BilinearStructure& j, const SolverConfig& cfg = {});

struct IterationAnalysis {
  double alpha = 0.0;
  Matrix t;  // (aI + JS)^-1 (aI - JH) (JH + aI)^-1 (aI - JS)
  double rho = 0.0;
  // max |a - lam| / |a + lam| over the spectrum of the definite factor
  // (HJ when J is symmetric, SJ when skew); an upper bound for rho whenever
  // that factor is positive definite.
  double bound = 0.0;
  std::vector<double> factor_eigenvalues;
};

IterationAnalysis iteration_analysis(const Matrix& a,
                                     const BilinearStructure& j, double alpha);

// sqrt(lambda_min * lambda_max) of the definite factor; minimizes the
// contraction bound over alpha. Throws NotPositiveDefinite when the factor
// is not positive definite.
double optimal_alpha(const Matrix& a, const BilinearStructure& j);

// P_a^-1 v = 2a J (SJ + aI)^-1 (HJ + aI)^-1 v, with both shifted factors
// factored once at construction.
class JHssPreconditioner {
public:
  JHssPreconditioner(const Matrix& a, const BilinearStructure& j, double alpha);
  std::vector<double> apply(const std::vector<double>& v) const;
  double alpha() const { return alpha_; }

private:
  struct Prepared;
  explicit JHssPreconditioner(Prepared&& p);

  Matrix jmat_;
  double alpha_;
  PivotedLu lu_hj_;
  PivotedLu lu_sj_;
};

std::vector<double> apply_preconditioner(const Matrix& a,
                                         const BilinearStructure& j,
                                         double alpha,
                                         const std::vector<double>& v);

// Restarted GMRES with optional right preconditioning (solves A M^-1 u = b,
// x = M^-1 u). residual_history carries the Arnoldi residual estimates, with
// true residuals recomputed at restarts and on exit. A happy breakdown is
// convergence.
SolveReport gmres_preconditioned(
    const Matrix& a, const std::vector<double>& b,
    const std::function<std::vector<double>(const std::vector<double>&)>&
        precondition = nullptr,
    int restart = defaults::gmres_restart, const SolverConfig& cfg = {});

enum class StsDirection { Upper, Lower };

// Skew/triangular alternating iteration from the skew_upper (or skew_lower)
// splitting A = S + U:
//   (aI + U) x_half = (aI - S) x + b     (triangular substitution)
//   (aI + S) x_next = (aI - U) x_half + b (dense, factored once)
// Converges for every a > 0 when (A + A^T)/2 is positive definite; that
// hypothesis is measured and reported in notes, not required.
SolveReport sts_solve(const Matrix& a, const std::vector<double>& b,
                      const SolverConfig& cfg = {},
                      StsDirection direction = StsDirection::Upper);

// Alternating-direction iteration for (A (x) I + I (x) B) x = b:
//   (aI + A (x) I) x_half = (aI - I (x) B) x + b
//   (aI + I (x) B) x_next = (aI - A (x) I) x_half + b
// Each half-step collapses to one factored n x n solve against n independent
// right-hand-side columns via the row-major reshape; the n^2 x n^2 operator
// is never formed here.
SolveReport adi_solve(const Matrix& a, const Matrix& b,
                      const std::vector<double>& rhs,
                      const SolverConfig& cfg = {});

enum class ClassicalMethod { Jacobi, GaussSeidelForward, GaussSeidelBackward };

// Jacobi and Gauss-Seidel sweeps; rho_estimate carries the spectral radius
// of the explicit iteration matrix. Throws ZeroDiagonal when a diagonal
// entry vanishes.
SolveReport classical_solve(const Matrix& a, const std::vector<double>& b,
                            ClassicalMethod method,
                            const SolverConfig& cfg = {});

}  // namespace liesplit
