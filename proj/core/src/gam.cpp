#include "semrel/gam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "semrel/error.hpp"

namespace semrel::gam {

// ---------------------------------------------------------------------------
// B-spline basis
// ---------------------------------------------------------------------------

namespace {

// Type-7 quantile of sorted data.
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<double> quantile_knots(const std::vector<double>& sorted, int count) {
  std::vector<double> knots;
  knots.reserve(static_cast<std::size_t>(count));
  for (int j = 1; j <= count; ++j) {
    knots.push_back(quantile_sorted(sorted, static_cast<double>(j) / (count + 1)));
  }
  return knots;
}

bool strictly_inside_increasing(const std::vector<double>& knots, double lo, double hi) {
  double prev = lo;
  for (double k : knots) {
    if (!(k > prev)) return false;
    prev = k;
  }
  return prev < hi;
}

}  // namespace

BSplineBasis::BSplineBasis(std::vector<double> knots, int size, int degree)
    : knots_(std::move(knots)), size_(size), degree_(degree) {}

BSplineBasis BSplineBasis::from_data(std::span<const double> x, int size, int degree) {
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "negative spline degree");
  if (size < degree + 1) {
    throw Error(ErrorCode::KTooSmall,
                fmt::format("basis size {} < degree + 1 = {}", size, degree + 1));
  }
  if (x.empty()) throw Error(ErrorCode::DegenerateX, "no data");
  std::vector<double> sorted(x.begin(), x.end());
  for (double v : sorted) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "non-finite covariate value");
  }
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();
  if (!(hi > lo)) throw Error(ErrorCode::DegenerateX, "all covariate values are equal");

  const int interior = size - degree - 1;
  auto knots = quantile_knots(sorted, interior);
  if (!strictly_inside_increasing(knots, lo, hi)) {
    // Heavy ties: place knots at quantiles of the distinct values instead.
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    knots = quantile_knots(sorted, interior);
  }
  return from_knots(lo, hi, std::move(knots), degree);
}

BSplineBasis BSplineBasis::from_knots(double lower, double upper, std::vector<double> interior,
                                      int degree) {
  if (!(upper > lower)) throw Error(ErrorCode::DegenerateX, "empty knot range");
  if (!strictly_inside_increasing(interior, lower, upper)) {
    throw Error(ErrorCode::InvalidArgument, "interior knots must increase strictly inside range");
  }
  std::vector<double> knots(static_cast<std::size_t>(degree + 1), lower);
  knots.insert(knots.end(), interior.begin(), interior.end());
  knots.insert(knots.end(), static_cast<std::size_t>(degree + 1), upper);
  const int size = static_cast<int>(interior.size()) + degree + 1;
  return BSplineBasis(std::move(knots), size, degree);
}

std::vector<double> BSplineBasis::greville() const {
  std::vector<double> g(static_cast<std::size_t>(size_));
  for (int i = 0; i < size_; ++i) {
    if (degree_ == 0) {
      g[i] = 0.5 * (knots_[i] + knots_[i + 1]);
      continue;
    }
    double s = 0.0;
    for (int j = 1; j <= degree_; ++j) s += knots_[i + j];
    g[i] = s / degree_;
  }
  return g;
}

// Cox-de Boor recursion for the degree+1 functions that are nonzero at x.
void BSplineBasis::evaluate_into(double x, double* row) const {
  const int p = degree_;
  x = std::clamp(x, lower(), upper());
  // Span index s with knots[s] <= x < knots[s+1]; the right end uses the last span.
  int s = size_ - 1;
  if (x < upper()) {
    const auto it = std::upper_bound(knots_.begin() + p, knots_.begin() + size_ + 1, x);
    s = static_cast<int>(it - knots_.begin()) - 1;
  }
  std::vector<double> n(static_cast<std::size_t>(p + 1), 0.0);
  std::vector<double> left(static_cast<std::size_t>(p + 1)), right(static_cast<std::size_t>(p + 1));
  n[0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = x - knots_[s + 1 - j];
    right[j] = knots_[s + j] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double denom = right[r + 1] + left[j - r];
      const double temp = denom > 0.0 ? n[r] / denom : 0.0;
      n[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    n[j] = saved;
  }
  for (int j = 0; j <= p; ++j) row[s - p + j] = n[j];
}

MatrixXd BSplineBasis::evaluate(std::span<const double> x) const {
  // Row-major scratch so each row is written contiguously.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>::Zero(
          static_cast<Eigen::Index>(x.size()), size_);
  for (std::size_t i = 0; i < x.size(); ++i) {
    evaluate_into(x[i], out.data() + static_cast<std::ptrdiff_t>(i) * size_);
  }
  return out;
}

MatrixXd bspline_basis(std::span<const double> x, int k, int degree) {
  return BSplineBasis::from_data(x, k, degree).evaluate(x);
}

// ---------------------------------------------------------------------------
// Penalties
// ---------------------------------------------------------------------------

MatrixXd difference_penalty(int k, int order) {
  std::vector<double> uniform(static_cast<std::size_t>(std::max(k, 0)));
  std::iota(uniform.begin(), uniform.end(), 0.0);
  return difference_penalty(uniform, order);
}

MatrixXd difference_penalty(std::span<const double> abscissae, int order) {
  const int k = static_cast<int>(abscissae.size());
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "difference order must be >= 1");
  if (k <= order) {
    throw Error(ErrorCode::KTooSmall, fmt::format("k = {} must exceed order {}", k, order));
  }
  const double span = abscissae.back() - abscissae.front();
  if (!(span > 0.0)) throw Error(ErrorCode::InvalidArgument, "abscissae must increase");
  std::vector<double> u(abscissae.size());
  for (int i = 0; i < k; ++i) u[i] = (abscissae[i] - abscissae.front()) / span * (k - 1);
  for (int i = 1; i < k; ++i) {
    if (!(u[i] > u[i - 1])) throw Error(ErrorCode::InvalidArgument, "abscissae must increase");
  }

  MatrixXd d = MatrixXd::Identity(k, k);
  for (int m = 1; m <= order; ++m) {
    MatrixXd next(d.rows() - 1, k);
    for (Eigen::Index i = 0; i < next.rows(); ++i) {
      const double gap = u[static_cast<std::size_t>(i + m)] - u[static_cast<std::size_t>(i)];
      next.row(i) = (m / gap) * (d.row(i + 1) - d.row(i));
    }
    d = std::move(next);
  }
  return d.transpose() * d;
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

std::string_view to_string(TermKind kind) noexcept {
  switch (kind) {
    case TermKind::Smooth: return "smooth";
    case TermKind::Tensor: return "tensor";
    case TermKind::RandomIntercept: return "random_intercept";
    case TermKind::Parametric: return "parametric";
  }
  return "unknown";
}

TermSpec smooth_term(std::span<const double> x, int k, std::string label, int degree) {
  auto basis = BSplineBasis::from_data(x, k, degree);
  TermSpec term;
  term.kind = TermKind::Smooth;
  term.label = std::move(label);
  term.design = basis.evaluate(x);
  term.penalties.push_back(difference_penalty(basis.greville(), 2));
  term.centered = true;
  term.basis = std::move(basis);
  return term;
}

namespace {

MatrixXd kron(const MatrixXd& a, const MatrixXd& b) {
  MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

TermSpec tensor_term(std::span<const double> x1, std::span<const double> x2, int k1, int k2,
                     std::string label) {
  if (x1.size() != x2.size()) {
    throw Error(ErrorCode::DimMismatch, "tensor margins have different lengths");
  }
  const auto b1 = BSplineBasis::from_data(x1, k1);
  const auto b2 = BSplineBasis::from_data(x2, k2);
  const MatrixXd m1 = b1.evaluate(x1);
  const MatrixXd m2 = b2.evaluate(x2);
  const auto n = static_cast<Eigen::Index>(x1.size());

  TermSpec term;
  term.kind = TermKind::Tensor;
  term.label = std::move(label);
  term.design.resize(n, k1 * k2);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (int i = 0; i < k1; ++i) {
      for (int j = 0; j < k2; ++j) term.design(r, i * k2 + j) = m1(r, i) * m2(r, j);
    }
  }
  const MatrixXd p1 = difference_penalty(b1.greville(), 2);
  const MatrixXd p2 = difference_penalty(b2.greville(), 2);
  term.penalties.push_back(kron(p1, MatrixXd::Identity(k2, k2)));
  term.penalties.push_back(kron(MatrixXd::Identity(k1, k1), p2));
  term.centered = true;
  return term;
}

TermSpec random_intercept_term(std::span<const std::string> levels, std::string label) {
  std::vector<std::string> distinct(levels.begin(), levels.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 2) {
    throw Error(ErrorCode::SingleLevel, "random intercept '" + label + "' needs >= 2 levels");
  }
  const auto l = static_cast<Eigen::Index>(distinct.size());
  TermSpec term;
  term.kind = TermKind::RandomIntercept;
  term.label = std::move(label);
  term.design = MatrixXd::Zero(static_cast<Eigen::Index>(levels.size()), l);
  for (std::size_t r = 0; r < levels.size(); ++r) {
    const auto it = std::lower_bound(distinct.begin(), distinct.end(), levels[r]);
    term.design(static_cast<Eigen::Index>(r), it - distinct.begin()) = 1.0;
  }
  term.penalties.push_back(MatrixXd::Identity(l, l));
  term.centered = false;
  term.levels = std::move(distinct);
  return term;
}

TermSpec parametric_term(MatrixXd columns, std::string label) {
  TermSpec term;
  term.kind = TermKind::Parametric;
  term.label = std::move(label);
  term.design = std::move(columns);
  term.centered = false;
  return term;
}

const TermFit* FitResult::find_term(std::string_view label) const {
  for (const auto& t : terms) {
    if (t.label == label) return &t;
  }
  return nullptr;
}

double gaussian_aic(std::size_t n, double rss, double edf) {
  const auto nd = static_cast<double>(n);
  // An exact interpolation would give -inf; floor at the smallest normal double.
  const double r = std::max(rss, std::numeric_limits<double>::min());
  return nd * std::log(r / nd) + 2.0 * (edf + 1.0);
}

double gcv_score(std::size_t n, double rss, double edf) {
  const auto nd = static_cast<double>(n);
  if (edf >= nd) return std::numeric_limits<double>::infinity();
  return nd * rss / ((nd - edf) * (nd - edf));
}

// ---------------------------------------------------------------------------
// Penalized least squares
// ---------------------------------------------------------------------------

namespace {

struct Block {
  Eigen::Index offset = 0;  // first column in the reduced design
  Eigen::Index width = 0;   // reduced width
  MatrixXd z;               // original k x reduced width
  std::vector<MatrixXd> roots;  // per penalty: E with E'E = Z'PZ
};

// Normal-equation pieces shared by every smoothing-parameter trial.
class PenalizedProblem {
 public:
  PenalizedProblem(const VectorXd& y, const std::vector<TermSpec>& terms) : y_(y), terms_(terms) {
    n_ = y.size();
    if (n_ == 0) throw Error(ErrorCode::InvalidArgument, "empty response");
    if (!y.allFinite()) throw Error(ErrorCode::NonFinite, "response has non-finite values");

    Eigen::Index p = 1;
    for (const auto& t : terms) {
      if (t.design.rows() != n_) {
        throw Error(ErrorCode::DimMismatch,
                    fmt::format("term '{}' has {} rows, response has {}", t.label,
                                t.design.rows(), n_));
      }
      if (!t.design.allFinite()) {
        throw Error(ErrorCode::NonFinite, "term '" + t.label + "' has non-finite design values");
      }
      for (const auto& pen : t.penalties) {
        if (pen.rows() != t.design.cols() || pen.cols() != t.design.cols()) {
          throw Error(ErrorCode::DimMismatch, "penalty size mismatch in term '" + t.label + "'");
        }
      }
      Block b;
      b.offset = p;
      if (t.centered) {
        b.z = sum_to_zero_null_space(t.design);
      } else {
        b.z = MatrixXd::Identity(t.design.cols(), t.design.cols());
      }
      b.width = b.z.cols();
      for (const auto& pen : t.penalties) {
        b.roots.push_back(penalty_root(b.z.transpose() * pen * b.z));
        ++penalty_count_;
      }
      p += b.width;
      blocks_.push_back(std::move(b));
    }
    p_ = p;

    x_.resize(n_, p_);
    x_.col(0).setOnes();
    for (std::size_t j = 0; j < terms.size(); ++j) {
      x_.middleCols(blocks_[j].offset, blocks_[j].width).noalias() = terms[j].design * blocks_[j].z;
    }

    // Compress the data to p rows when n > p: ||y - Xb||^2 = ||f - Rb||^2 + const.
    if (n_ > p_) {
      Eigen::HouseholderQR<MatrixXd> qr(x_);
      r_ = qr.matrixQR().topRows(p_).triangularView<Eigen::Upper>();
      f_ = (qr.householderQ().transpose() * y_).head(p_);
    } else {
      r_ = x_;
      f_ = y_;
    }
    gram_ = r_.transpose() * r_;
  }

  std::size_t penalty_count() const noexcept { return penalty_count_; }
  Eigen::Index n() const noexcept { return n_; }

  struct Solution {
    VectorXd beta;     // reduced parameterization
    VectorXd col_edf;  // diagonal of the influence operator, per reduced column
    double edf = 0.0;
    double rss = 0.0;
  };

  Solution solve(std::span<const double> lambdas) const {
    Eigen::Index extra = 0;
    for (const auto& b : blocks_) {
      for (const auto& e : b.roots) extra += e.rows();
    }
    MatrixXd aug = MatrixXd::Zero(r_.rows() + extra, p_);
    aug.topRows(r_.rows()) = r_;
    Eigen::Index row = r_.rows();
    std::size_t li = 0;
    for (const auto& b : blocks_) {
      for (const auto& e : b.roots) {
        const double lambda = lambdas[li++];
        aug.block(row, b.offset, e.rows(), b.width) = std::sqrt(lambda) * e;
        row += e.rows();
      }
    }
    if (aug.rows() < p_) {
      throw Error(ErrorCode::Singularity, "fewer rows than coefficients and penalties cannot fill the gap");
    }
    VectorXd rhs = VectorXd::Zero(aug.rows());
    rhs.head(f_.size()) = f_;

    Eigen::HouseholderQR<MatrixXd> qr(aug);
    const MatrixXd rt = qr.matrixQR().topRows(p_).triangularView<Eigen::Upper>();
    check_rank(rt);
    const VectorXd qtb = (qr.householderQ().transpose() * rhs).head(p_);

    Solution s;
    s.beta = rt.triangularView<Eigen::Upper>().solve(qtb);
    const MatrixXd rt_inv =
        rt.triangularView<Eigen::Upper>().solve(MatrixXd::Identity(p_, p_));
    // Influence trace: tr((R~'R~)^-1 X'X), column-wise via the diagonal.
    const MatrixXd a_inv = rt_inv * rt_inv.transpose();
    s.col_edf = (a_inv.array() * gram_.array()).colwise().sum().transpose();
    s.edf = s.col_edf.sum();
    s.rss = (y_ - x_ * s.beta).squaredNorm();
    return s;
  }

  FitResult assemble(const Solution& s, std::span<const double> lambdas) const {
    FitResult fit;
    fit.n = static_cast<std::size_t>(n_);
    fit.lambdas.assign(lambdas.begin(), lambdas.end());
    fit.edf = s.edf;
    fit.intercept_edf = s.col_edf(0);
    fit.rss = s.rss;
    fit.gcv = gcv_score(fit.n, s.rss, s.edf);
    fit.aic = gaussian_aic(fit.n, s.rss, s.edf);
    if (!std::isfinite(fit.aic)) throw Error(ErrorCode::NonFinite, "AIC is not finite");
    fit.intercept = s.beta(0);
    fit.fitted = x_ * s.beta;

    Eigen::Index total = 1;
    for (const auto& t : terms_) total += t.design.cols();
    fit.coefficients.resize(total);
    fit.coefficients(0) = s.beta(0);
    Eigen::Index out = 1;
    std::size_t li = 0;
    for (std::size_t j = 0; j < terms_.size(); ++j) {
      const auto& b = blocks_[j];
      TermFit tf;
      tf.label = terms_[j].label;
      tf.kind = terms_[j].kind;
      tf.coefficients = b.z * s.beta.segment(b.offset, b.width);
      tf.edf = s.col_edf.segment(b.offset, b.width).sum();
      for (std::size_t m = 0; m < b.roots.size(); ++m) tf.lambdas.push_back(lambdas[li++]);
      tf.basis = terms_[j].basis;
      fit.coefficients.segment(out, tf.coefficients.size()) = tf.coefficients;
      out += tf.coefficients.size();
      fit.terms.push_back(std::move(tf));
    }
    return fit;
  }

 private:
  // Columns spanning {b : 1'Xb = 0}, from a Householder reflection of X'1.
  static MatrixXd sum_to_zero_null_space(const MatrixXd& design) {
    const VectorXd c = design.colwise().sum().transpose();
    const Eigen::Index k = c.size();
    if (c.norm() == 0.0) return MatrixXd::Identity(k, k);
    const MatrixXd cm = c;
    Eigen::HouseholderQR<MatrixXd> qr(cm);
    const MatrixXd q = qr.householderQ();
    return q.rightCols(k - 1);
  }

  static MatrixXd penalty_root(const MatrixXd& penalty) {
    const MatrixXd sym = 0.5 * (penalty + penalty.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(sym);
    const VectorXd& ev = eig.eigenvalues();
    const double top = ev.cwiseAbs().maxCoeff();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (ev(i) > 1e-12 * top) keep.push_back(i);
    }
    MatrixXd root(static_cast<Eigen::Index>(keep.size()), sym.cols());
    for (std::size_t r = 0; r < keep.size(); ++r) {
      root.row(static_cast<Eigen::Index>(r)) =
          std::sqrt(ev(keep[r])) * eig.eigenvectors().col(keep[r]).transpose();
    }
    return root;
  }

  void check_rank(const MatrixXd& rt) const {
    const VectorXd d = rt.diagonal().cwiseAbs();
    const double top = d.maxCoeff();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (!(d(i) > 1e-12 * top)) {
        throw Error(ErrorCode::Singularity,
                    fmt::format("penalized normal equations are rank deficient in {}",
                                column_owner(i)));
      }
    }
  }

  std::string column_owner(Eigen::Index col) const {
    if (col == 0) return "the intercept";
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
      if (col >= blocks_[j].offset && col < blocks_[j].offset + blocks_[j].width) {
        return "term '" + terms_[j].label + "'";
      }
    }
    return "an unknown column";
  }

  const VectorXd& y_;
  const std::vector<TermSpec>& terms_;
  Eigen::Index n_ = 0;
  Eigen::Index p_ = 0;
  std::size_t penalty_count_ = 0;
  std::vector<Block> blocks_;
  MatrixXd x_;
  MatrixXd r_;
  VectorXd f_;
  MatrixXd gram_;
};

}  // namespace

FitResult fit_fixed(const VectorXd& y, const std::vector<TermSpec>& terms,
                    std::span<const double> lambdas) {
  PenalizedProblem problem(y, terms);
  if (lambdas.size() != problem.penalty_count()) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("{} smoothing parameters given, model has {} penalties",
                            lambdas.size(), problem.penalty_count()));
  }
  for (double l : lambdas) {
    if (!(l >= 0.0) || !std::isfinite(l)) {
      throw Error(ErrorCode::InvalidArgument, "smoothing parameters must be finite and >= 0");
    }
  }
  return problem.assemble(problem.solve(lambdas), lambdas);
}

FitResult fit_penalized(const VectorXd& y, const std::vector<TermSpec>& terms,
                        const LambdaSearch& search) {
  if (search.grid_points < 1 || search.sweeps < 0 || !(search.lambda_min > 0.0) ||
      !(search.lambda_max >= search.lambda_min)) {
    throw Error(ErrorCode::InvalidArgument, "bad smoothing-parameter search configuration");
  }
  PenalizedProblem problem(y, terms);
  const auto n = static_cast<std::size_t>(problem.n());

  std::vector<double> grid(static_cast<std::size_t>(search.grid_points));
  const double log_lo = std::log(search.lambda_min);
  const double log_hi = std::log(search.lambda_max);
  for (int g = 0; g < search.grid_points; ++g) {
    const double t = search.grid_points == 1 ? 0.0 : static_cast<double>(g) / (search.grid_points - 1);
    grid[static_cast<std::size_t>(g)] = std::exp(log_lo + t * (log_hi - log_lo));
  }
  // Start every penalty at the grid point closest to 1 on the log scale.
  const auto start = std::min_element(grid.begin(), grid.end(), [](double a, double b) {
    return std::abs(std::log(a)) < std::abs(std::log(b));
  });
  std::vector<double> lambdas(problem.penalty_count(), *start);

  for (int sweep = 0; sweep < search.sweeps && !lambdas.empty(); ++sweep) {
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
      double best_score = std::numeric_limits<double>::infinity();
      double best_lambda = lambdas[j];
      for (double candidate : grid) {
        lambdas[j] = candidate;
        double score = std::numeric_limits<double>::infinity();
        try {
          const auto s = problem.solve(lambdas);
          score = gcv_score(n, s.rss, s.edf);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::Singularity) throw;
        }
        if (score < best_score) {
          best_score = score;
          best_lambda = candidate;
        }
      }
      lambdas[j] = best_lambda;
    }
  }
  return problem.assemble(problem.solve(lambdas), lambdas);
}

double delta_aic(const FitResult& full, const FitResult& base) {
  if (full.n != base.n) {
    throw Error(ErrorCode::NMismatch,
                fmt::format("full model used {} rows, base model {}", full.n, base.n));
  }
  return full.aic - base.aic;
}

PartialEffect partial_effect(const FitResult& fit, std::string_view term_label,
                             std::span<const double> grid) {
  const TermFit* term = fit.find_term(term_label);
  if (!term || term->kind != TermKind::Smooth || !term->basis) {
    throw Error(ErrorCode::UnknownTerm, "no smooth term '" + std::string(term_label) + "'");
  }
  PartialEffect out;
  out.grid.assign(grid.begin(), grid.end());
  if (grid.empty()) return out;
  const VectorXd values = term->basis->evaluate(grid) * term->coefficients;
  const double mean = values.mean();
  out.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.values[i] = values(static_cast<Eigen::Index>(i)) - mean;
  }
  return out;
}

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> out(static_cast<std::size_t>(std::max(points, 0)));
  if (points == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < points; ++i) {
    out[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
  }
  return out;
}

}  // namespace semrel::gam
