#pragma once

// Gaussian additive models fitted by penalized least squares.
//
// A model is a global intercept plus a list of terms. Each term contributes
// a block of design columns and zero or more penalty matrices:
//
//   smooth            cubic B-splines on quantile knots, order-2 difference
//                     penalty, sum-to-zero constraint
//   tensor            row-wise Kronecker product of two marginal smooths,
//                     one penalty per margin, sum-to-zero constraint
//   random_intercept  one-hot level indicators with a ridge penalty
//   parametric        unpenalized columns
//
// Sum-to-zero constraints are absorbed by a null-space reparameterization
// (X -> XZ, P -> Z'PZ) before solving. Smoothing parameters are chosen by
// minimizing GCV with coordinate descent over a logarithmic grid.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace semrel::gam {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Clamped B-spline basis of `size` functions on [lower, upper].
class BSplineBasis {
 public:
  /// Interior knots at empirical quantiles of x, boundary knots at min/max
  /// repeated degree+1 times. Throws DegenerateX when all x are equal and
  /// KTooSmall when size < degree + 1.
  static BSplineBasis from_data(std::span<const double> x, int size, int degree = 3);

  /// Interior knots must be strictly increasing and strictly inside
  /// (lower, upper). The basis size is interior.size() + degree + 1.
  static BSplineBasis from_knots(double lower, double upper, std::vector<double> interior,
                                 int degree = 3);

  int size() const noexcept { return size_; }
  int degree() const noexcept { return degree_; }
  double lower() const noexcept { return knots_.front(); }
  double upper() const noexcept { return knots_.back(); }
  const std::vector<double>& knots() const noexcept { return knots_; }

  /// Knot averages; coefficients equal to these reproduce f(x) = x.
  std::vector<double> greville() const;

  /// n x size matrix. Points outside [lower, upper] are clamped to the boundary.
  MatrixXd evaluate(std::span<const double> x) const;

 private:
  BSplineBasis(std::vector<double> knots, int size, int degree);
  void evaluate_into(double x, double* row) const;

  std::vector<double> knots_;
  int size_ = 0;
  int degree_ = 3;
};

/// Convenience: BSplineBasis::from_data(x, k, degree).evaluate(x).
MatrixXd bspline_basis(std::span<const double> x, int k, int degree = 3);

/// D'D where D is the order-th difference operator ((k - order) x k).
/// Throws KTooSmall when k <= order.
MatrixXd difference_penalty(int k, int order = 2);

/// Difference penalty on non-uniform abscissae: D holds order-th divided
/// differences (scaled by order!) on the abscissae rescaled to unit mean
/// spacing. Reduces to difference_penalty(k, order) for uniform abscissae.
/// With Greville abscissae its null space is the polynomials of degree
/// < order, whatever the knot layout.
MatrixXd difference_penalty(std::span<const double> abscissae, int order = 2);

enum class TermKind { Smooth, Tensor, RandomIntercept, Parametric };

std::string_view to_string(TermKind kind) noexcept;

struct TermSpec {
  TermKind kind = TermKind::Smooth;
  std::string label;
  MatrixXd design;                  // n x k
  std::vector<MatrixXd> penalties;  // each k x k, positive semidefinite
  bool centered = false;            // sum-to-zero over training rows
  std::optional<BSplineBasis> basis;  // smooth terms, for prediction on new x
  std::vector<std::string> levels;    // random intercepts, column order
};

/// Univariate smooth with k basis functions and an order-2 penalty.
TermSpec smooth_term(std::span<const double> x, int k, std::string label, int degree = 3);

/// Tensor-product smooth of (x1, x2) with k1 * k2 columns. Column
/// i1 * k2 + i2 is the product of marginal functions i1 and i2; the
/// penalties are P1 (x) I and I (x) P2.
TermSpec tensor_term(std::span<const double> x1, std::span<const double> x2, int k1, int k2,
                     std::string label);

/// One-hot indicators for the sorted distinct levels, identity penalty.
/// Throws SingleLevel with fewer than two levels.
TermSpec random_intercept_term(std::span<const std::string> levels, std::string label);

/// Unpenalized, uncentered columns.
TermSpec parametric_term(MatrixXd columns, std::string label);

struct LambdaSearch {
  double lambda_min = 1e-4;
  double lambda_max = 1e6;
  int grid_points = 30;
  int sweeps = 3;
};

struct TermFit {
  std::string label;
  TermKind kind = TermKind::Smooth;
  VectorXd coefficients;  // in the term's original (unconstrained) basis
  std::vector<double> lambdas;
  double edf = 0.0;
  std::optional<BSplineBasis> basis;
};

struct FitResult {
  double intercept = 0.0;
  /// Intercept followed by every term's coefficients in its original basis.
  VectorXd coefficients;
  /// One entry per penalty, in term order.
  std::vector<double> lambdas;
  double edf = 0.0;  // trace of the influence matrix
  double intercept_edf = 0.0;
  double rss = 0.0;
  double gcv = 0.0;
  double aic = 0.0;
  std::size_t n = 0;
  std::vector<TermFit> terms;
  VectorXd fitted;

  const TermFit* find_term(std::string_view label) const;
};

/// n * ln(rss / n) + 2 * (edf + 1).
double gaussian_aic(std::size_t n, double rss, double edf);

/// n * rss / (n - edf)^2; +inf when edf >= n.
double gcv_score(std::size_t n, double rss, double edf);

/// Fits with the given smoothing parameters (one per penalty, in term order).
/// Throws NonFinite, Singularity (naming the term) or InvalidArgument.
FitResult fit_fixed(const VectorXd& y, const std::vector<TermSpec>& terms,
                    std::span<const double> lambdas);

/// Chooses smoothing parameters by GCV, then fits.
FitResult fit_penalized(const VectorXd& y, const std::vector<TermSpec>& terms,
                        const LambdaSearch& search = {});

/// aic(full) - aic(base). Throws NMismatch when the fits used different n.
double delta_aic(const FitResult& full, const FitResult& base);

struct PartialEffect {
  std::vector<double> grid;
  std::vector<double> values;
};

/// The smooth's contribution on `grid`, shifted to mean zero over the grid.
/// Throws UnknownTerm when the label is absent or not a smooth.
PartialEffect partial_effect(const FitResult& fit, std::string_view term_label,
                             std::span<const double> grid);

/// `points` equally spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int points);

}  // namespace semrel::gam
