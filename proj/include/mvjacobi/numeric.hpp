#pragma once

// Floating-point layer: the fundamental matrix Y of the Fuchsian system,
// the weight W(x) = induced action of Y(x), double-exponential and
// Gauss-Jacobi quadrature, and the numeric checks built on them.
//
// Points of (-1, 1) are carried as u = atanh(x) together with 1 - x and
// 1 + x computed without cancellation. In u the system reads
//   dY/du = -(tanh(u) M1 + M2) Y,
// which has bounded coefficients, so the ODE never sees the endpoint
// singularities.

#include "mvjacobi/oppoly.hpp"
#include "mvjacobi/operators.hpp"
#include "mvjacobi/structure.hpp"

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvjacobi::numeric {

using DMatrix = Matrix<double>;
using DVector = Vector<double>;

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IntegrabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Points

/// A point of (-1, 1) with accurate distances to both endpoints.
struct Abscissa {
  double x = 0;
  double one_minus = 1;  // 1 - x
  double one_plus = 1;   // 1 + x

  static Abscissa from_x(double x) { return {x, 1.0 - x, 1.0 + x}; }
  static Abscissa from_u(double u) {
    // 1 - tanh u = 2 / (1 + e^{2u}),  1 + tanh u = 2 / (1 + e^{-2u})
    return {std::tanh(u), 2.0 / (1.0 + std::exp(2.0 * u)), 2.0 / (1.0 + std::exp(-2.0 * u))};
  }
  double u() const { return 0.5 * (std::log(one_plus) - std::log(one_minus)); }
  /// Q = x^2 - 1
  double Q() const { return -one_minus * one_plus; }
};

// ---------------------------------------------------------------------------
// Configs

struct OdeConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  double basepoint = 0.0;
  double max_step = 0.25;  // in u

  void validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0)) throw std::invalid_argument("OdeConfig: tolerances must be positive");
    if (!(basepoint > -1 && basepoint < 1)) throw std::invalid_argument("OdeConfig: basepoint must lie in (-1, 1)");
    if (!(max_step > 0)) throw std::invalid_argument("OdeConfig: max_step must be positive");
  }
};

enum class QuadScheme { double_exponential, gauss_jacobi_commutative };

struct QuadConfig {
  QuadScheme scheme = QuadScheme::double_exponential;
  int levels = 7;              // tanh-sinh step 2^-levels
  int order = 16;              // Gauss-Jacobi nodes per rule
  double endpoint_clip = 0.0;  // drop nodes with 1 - |x| < clip (0: keep all)
  double u_max = 40.0;         // |atanh x| cap for tanh-sinh nodes
  double convergence_tol = 1e-7;  // level-to-level change allowed, relative to max(1, |I|)

  void validate() const {
    if (levels < 1 || order < 1) throw std::invalid_argument("QuadConfig: levels and order must be >= 1");
    if (endpoint_clip < 0 || endpoint_clip >= 0.5) throw std::invalid_argument("QuadConfig: clip must be in [0, 0.5)");
    if (!(u_max > 0)) throw std::invalid_argument("QuadConfig: u_max must be positive");
  }
};

/// How W(x) is obtained.
struct WeightModel {
  enum class Source { automatic, closed_form, ode } source = Source::automatic;
  /// Replaces Y by Y * C (another fundamental matrix).
  std::optional<DMatrix> right_factor;
};

struct NumericReport {
  std::string quantity;
  double max_abs_entry = 0;
  double estimated_error = 0;
  double tolerance = 0;
  bool claim = true;  // false when no vanishing is asserted (informational)
  bool pass = false;
  std::vector<double> values;  // flattened integral or the compared vectors' difference
};

inline DMatrix to_double(const Matrix<Rational>& m) {
  return m.map<double>([](const Rational& r) { return mvjacobi::to_double(r); });
}

// ---------------------------------------------------------------------------
// Fundamental matrix

namespace detail {

inline void check_finite(const DMatrix& m, double x) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!std::isfinite(m(i, j)))
        throw std::runtime_error("fundamental matrix is not finite at x = " + std::to_string(x));
}

}  // namespace detail

/// Y(x) with Y(basepoint) = I at every requested point, integrating outward
/// from the basepoint in one sweep per direction.
inline std::vector<DMatrix> fundamental_matrices(const ProblemSpec& spec, const std::vector<Abscissa>& points,
                                                 const OdeConfig& cfg) {
  namespace ode = boost::numeric::odeint;
  cfg.validate();
  const auto d = static_cast<std::size_t>(spec.d());
  const DMatrix m1 = to_double(spec.M1()), m2 = to_double(spec.M2());
  using State = std::vector<double>;
  // Each direction is integrated forward in s = dir * u.
  auto make_rhs = [&](int dir) {
    return [&, dir](const State& y, State& dy, double s) {
      const double th = std::tanh(dir * s);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          double acc = 0;
          for (std::size_t l = 0; l < d; ++l) acc += (th * m1(i, l) + m2(i, l)) * y[l * d + j];
          dy[i * d + j] = -dir * acc;
        }
    };
  };
  const double u0 = std::atanh(cfg.basepoint);
  std::vector<double> us(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) us[i] = points[i].u();

  std::vector<DMatrix> out(points.size(), DMatrix::identity(d));
  for (int dir : {+1, -1}) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < us.size(); ++i)
      if ((dir > 0 && us[i] > u0) || (dir < 0 && us[i] < u0)) order.push_back(i);
    if (order.empty()) continue;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dir * us[a] < dir * us[b]; });
    std::vector<double> times{dir * u0};
    for (auto i : order) times.push_back(dir * us[i]);
    State y(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) y[i * d + i] = 1.0;
    auto stepper = ode::make_controlled(cfg.abs_tol, cfg.rel_tol, cfg.max_step, ode::runge_kutta_fehlberg78<State>());
    std::size_t hit = 0;
    ode::integrate_times(stepper, make_rhs(dir), y, times.begin(), times.end(), std::min(cfg.max_step, 1e-2),
                         [&](const State& s, double) {
                           if (hit > 0) {
                             DMatrix m(d, d);
                             for (std::size_t i = 0; i < d; ++i)
                               for (std::size_t j = 0; j < d; ++j) m(i, j) = s[i * d + j];
                             out[order[hit - 1]] = std::move(m);
                           }
                           ++hit;
                         });
  }
  for (std::size_t i = 0; i < out.size(); ++i) detail::check_finite(out[i], points[i].x);
  return out;
}

inline DMatrix fundamental_matrix(const ProblemSpec& spec, double x, const OdeConfig& cfg = {}) {
  if (!(x > -1 && x < 1)) throw std::domain_error("fundamental_matrix: x must lie in (-1, 1)");
  return fundamental_matrices(spec, {Abscissa::from_x(x)}, cfg).front();
}

/// diag((1-x)^{a_i} (1+x)^{b_i}) for diagonal A, B: the real branch on (-1, 1).
inline DMatrix commutative_Y(const ProblemSpec& spec, const Abscissa& at) {
  if (!spec.is_commutative()) throw std::invalid_argument("commutative_Y: A and B must be diagonal");
  const auto d = static_cast<std::size_t>(spec.d());
  const double log_minus = std::log(at.one_minus), log_plus = std::log(at.one_plus);
  DMatrix y(d, d);
  for (std::size_t i = 0; i < d; ++i)
    y(i, i) = std::exp(mvjacobi::to_double(spec.A()(i, i)) * log_minus + mvjacobi::to_double(spec.B()(i, i)) * log_plus);
  return y;
}

inline DMatrix commutative_Y(const ProblemSpec& spec, double x) { return commutative_Y(spec, Abscissa::from_x(x)); }

// ---------------------------------------------------------------------------
// Weight

inline bool uses_closed_form(const ProblemSpec& spec, const WeightModel& model) {
  using S = WeightModel::Source;
  if (model.source == S::closed_form) {
    if (!spec.is_commutative()) throw std::invalid_argument("closed-form weight needs diagonal A and B");
    return true;
  }
  return model.source == S::automatic && spec.is_commutative();
}

/// W at every point: induced action of Y (closed form or ODE), times the
/// optional constant right factor on Y.
inline std::vector<DMatrix> weights(const ProblemSpec& spec, const PolySpace& space, const std::vector<Abscissa>& points,
                                    const OdeConfig& ocfg, const WeightModel& model = {}) {
  std::vector<DMatrix> ys;
  if (uses_closed_form(spec, model)) {
    for (const auto& p : points) ys.push_back(commutative_Y(spec, p));
  } else {
    ys = fundamental_matrices(spec, points, ocfg);
  }
  std::vector<DMatrix> out;
  out.reserve(ys.size());
  for (auto& y : ys) out.push_back(induced_action(model.right_factor ? y * *model.right_factor : y, space));
  return out;
}

inline DMatrix weight(const ProblemSpec& spec, const PolySpace& space, double x, const OdeConfig& ocfg = {},
                      const WeightModel& model = {}) {
  return weights(spec, space, {Abscissa::from_x(x)}, ocfg, model).front();
}

// ---------------------------------------------------------------------------
// Quadrature

/// Node of the tanh-sinh rule on (-1, 1): the point, dx/dt, and the
/// first refinement level at which it appears.
struct DENode {
  Abscissa at;
  double jacobian = 0;
  int level = 0;
};

/// All tanh-sinh nodes up to `levels` (step 2^-levels), x = tanh(pi/2 sinh t).
inline std::vector<DENode> tanh_sinh_nodes(int levels, double u_max) {
  const double half_pi = std::numbers::pi / 2;
  const double t_max = std::asinh(u_max / half_pi);
  const double h = std::ldexp(1.0, -levels);
  const long count = static_cast<long>(std::floor(t_max / h));
  std::vector<DENode> nodes;
  for (long i = -count; i <= count; ++i) {
    int level = levels;
    long ii = i;
    while (level > 0 && ii % 2 == 0) ii /= 2, --level;
    if (i == 0) level = 0;
    const double t = static_cast<double>(i) * h;
    const double u = half_pi * std::sinh(t);
    const double sech = 1.0 / std::cosh(u);
    nodes.push_back({Abscissa::from_u(u), half_pi * std::cosh(t) * sech * sech, level});
  }
  return nodes;
}

/// Tanh-sinh nodes mapped affinely onto (lo, hi) with -1 <= lo < hi <= 1,
/// keeping endpoint distances accurate.
inline std::vector<DENode> tanh_sinh_nodes(int levels, double u_max, double lo, double hi) {
  auto nodes = tanh_sinh_nodes(levels, u_max);
  const double half = (hi - lo) / 2;
  for (auto& n : nodes) {
    const double s_plus = n.at.one_plus, s_minus = n.at.one_minus;  // 1 + s, 1 - s
    Abscissa a;
    a.x = lo + half * s_plus;
    a.one_plus = (1.0 + lo) + half * s_plus;
    a.one_minus = (1.0 - hi) + half * s_minus;
    n.at = a;
    n.jacobian *= half;
  }
  return nodes;
}

namespace detail {

template <class V>
V pairwise_sum(const std::vector<V>& terms, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return terms[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  V left = pairwise_sum(terms, lo, mid);
  left += pairwise_sum(terms, mid, hi);
  return left;
}

template <class V>
double max_abs_entry(const V& v) {
  double best = 0;
  if constexpr (std::is_same_v<V, DMatrix>) {
    best = max_abs(v);
  } else {
    for (double e : v) best = std::max(best, std::abs(e));
  }
  return best;
}

}  // namespace detail

template <class V>
struct QuadResult {
  V value;
  V previous;  // one level coarser
  double estimated_error = 0;
};

/// Trapezoid sums over the node set at the finest and the next coarser
/// level; `values[i]` is the integrand at nodes[i] (without dx/dt).
template <class V>
QuadResult<V> tanh_sinh_sum(const std::vector<DENode>& nodes, const std::vector<V>& values, int levels, V zero) {
  auto level_sum = [&](int level) {
    std::vector<V> terms;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].level > level || nodes[i].jacobian == 0) continue;
      V t = values[i];
      t *= nodes[i].jacobian;
      terms.push_back(std::move(t));
    }
    V s = terms.empty() ? zero : detail::pairwise_sum(terms, 0, terms.size());
    s *= std::ldexp(1.0, -level);
    return s;
  };
  QuadResult<V> r{level_sum(levels), level_sum(levels - 1), 0};
  V diff = r.value;
  diff -= r.previous;
  r.estimated_error = detail::max_abs_entry(diff);
  return r;
}

/// Gauss rule for the weight (1-x)^alpha (1+x)^beta, alpha, beta > -1, by
/// Golub-Welsch on the monic Jacobi recurrence.
struct GaussRule {
  std::vector<double> nodes, weights;
};

inline GaussRule gauss_jacobi(int order, double alpha, double beta) {
  if (order < 1) throw std::invalid_argument("gauss_jacobi: order must be >= 1");
  if (!(alpha > -1 && beta > -1)) throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");
  const double ab = alpha + beta;
  Eigen::VectorXd diag(order), sub(std::max(order - 1, 1));
  for (int i = 0; i < order; ++i) {
    const double s = 2.0 * i + ab;
    diag(i) = i == 0 ? (beta - alpha) / (ab + 2) : (beta * beta - alpha * alpha) / (s * (s + 2));
  }
  for (int i = 1; i < order; ++i) {
    const double s = 2.0 * i + ab;
    sub(i - 1) = i == 1 ? std::sqrt(4.0 * (1 + alpha) * (1 + beta) / ((ab + 2) * (ab + 2) * (ab + 3)))
                        : std::sqrt(4.0 * i * (i + alpha) * (i + beta) * (i + ab) / (s * s * (s + 1) * (s - 1)));
  }
  const double mu0 = std::exp((ab + 1) * std::log(2.0) + std::lgamma(alpha + 1) + std::lgamma(beta + 1) -
                              std::lgamma(ab + 2));
  GaussRule rule;
  if (order == 1) {
    rule.nodes = {diag(0)};
    rule.weights = {mu0};
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub.head(order - 1), Eigen::ComputeEigenvectors);
  for (int i = 0; i < order; ++i) {
    rule.nodes.push_back(eig.eigenvalues()(i));
    const double v0 = eig.eigenvectors()(0, i);
    rule.weights.push_back(mu0 * v0 * v0);
  }
  return rule;
}

// ---------------------------------------------------------------------------
// Integrability

struct IntegrabilityReport {
  bool heuristic = false;  // noncommutative: eigenvalue-based estimate only
  double min_exponent_minus = 0;  // smallest exponent of (1 - x) among weight entries
  double min_exponent_plus = 0;   // smallest exponent of (1 + x)
  bool integrable = true;         // all exponents > -1
  bool recommended = true;        // all exponents > -1/2
  std::vector<std::pair<double, double>> exponents;  // per basis element (commutative) or eigen-combination
};

/// Endpoint exponents of the weight entries: m.a - a_j at x = 1 and
/// m.b - b_j at x = -1. Noncommutative problems use the real parts of the
/// same combinations of the eigenvalues of A and B, flagged heuristic.
inline IntegrabilityReport integrability_check(const ProblemSpec& spec, const PolySpace& space) {
  IntegrabilityReport r;
  const auto d = static_cast<std::size_t>(spec.d());
  std::vector<double> ea(d), eb(d);
  if (spec.is_commutative()) {
    for (std::size_t i = 0; i < d; ++i) {
      ea[i] = mvjacobi::to_double(spec.A()(i, i));
      eb[i] = mvjacobi::to_double(spec.B()(i, i));
    }
  } else {
    r.heuristic = true;
    auto eigs = [&](const Matrix<Rational>& m) {
      Eigen::MatrixXd e(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) e(i, j) = mvjacobi::to_double(m(i, j));
      Eigen::EigenSolver<Eigen::MatrixXd> es(e, false);
      std::vector<double> re(d);
      for (std::size_t i = 0; i < d; ++i) re[i] = es.eigenvalues()(static_cast<Eigen::Index>(i)).real();
      return re;
    };
    ea = eigs(spec.A());
    eb = eigs(spec.B());
  }
  r.min_exponent_minus = r.min_exponent_plus = std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < space.dim(); ++idx) {
    const auto b = space.basis(idx);
    double pa = -ea[b.component], pb = -eb[b.component];
    for (std::size_t i = 0; i < d; ++i) pa += b.m[i] * ea[i], pb += b.m[i] * eb[i];
    r.exponents.emplace_back(pa, pb);
    r.min_exponent_minus = std::min(r.min_exponent_minus, pa);
    r.min_exponent_plus = std::min(r.min_exponent_plus, pb);
  }
  const double lowest = std::min(r.min_exponent_minus, r.min_exponent_plus);
  r.integrable = lowest > -1;
  r.recommended = lowest > -0.5;
  return r;
}

// ---------------------------------------------------------------------------
// Quasi-orthogonality

enum class Side { right, left };

/// int_{-1}^{1} P_j W P_k dx (right) or int W P_j P_k dx (left). Vanishing is
/// claimed for j < k (right) and j > k (left); other index orders are
/// reported without a claim.
inline NumericReport quasi_orth_integral(const PolynomialFamily& fam, int j, int k, Side side, double tol,
                                         const QuadConfig& qcfg = {}, const OdeConfig& ocfg = {},
                                         const WeightModel& model = {}, bool override_integrability = false) {
  qcfg.validate();
  const auto& spec = fam.spec();
  const auto& space = fam.space();
  const auto integ = integrability_check(spec, space);
  if (!override_integrability) {
    if (!integ.integrable) throw IntegrabilityError("weight is not integrable at an endpoint (exponent <= -1)");
    if (!integ.recommended)
      throw IntegrabilityError("endpoint exponent <= -1/2; pass the integrability override to run anyway");
  }
  const std::size_t dim = space.dim();
  const auto pj = to_double_coeffs(fam.P(j)), pk = to_double_coeffs(fam.P(k));
  auto integrand = [&](double x, const DMatrix& w) {
    const DMatrix a = eval_double(pj, x, dim), b = eval_double(pk, x, dim);
    return side == Side::right ? a * w * b : w * a * b;
  };

  NumericReport rep;
  rep.quantity = std::string(side == Side::right ? "int P_j W P_k" : "int W P_j P_k") + " (j=" + std::to_string(j) +
                 ", k=" + std::to_string(k) + ")";
  rep.tolerance = tol;
  rep.claim = side == Side::right ? j < k : j > k;
  DMatrix integral(dim, dim);

  if (qcfg.scheme == QuadScheme::gauss_jacobi_commutative) {
    if (!spec.is_commutative()) throw std::invalid_argument("Gauss-Jacobi scheme needs diagonal A and B");
    // W is diagonal: integrate each diagonal weight entry with its own rule.
    for (std::size_t e = 0; e < dim; ++e) {
      const auto [pa, pb] = integ.exponents[e];
      const auto rule = gauss_jacobi(qcfg.order, pa, pb);
      std::vector<DMatrix> terms;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        DMatrix w(dim, dim);
        w(e, e) = rule.weights[i];
        terms.push_back(integrand(rule.nodes[i], w));
      }
      integral += detail::pairwise_sum(terms, 0, terms.size());
    }
    rep.estimated_error = 0;
  } else {
    auto nodes = tanh_sinh_nodes(qcfg.levels, qcfg.u_max);
    if (qcfg.endpoint_clip > 0)
      std::erase_if(nodes, [&](const DENode& n) { return std::min(n.at.one_minus, n.at.one_plus) < qcfg.endpoint_clip; });
    std::vector<Abscissa> pts;
    for (const auto& n : nodes) pts.push_back(n.at);
    const auto ws = weights(spec, space, pts, ocfg, model);
    std::vector<DMatrix> values;
    for (std::size_t i = 0; i < nodes.size(); ++i) values.push_back(integrand(nodes[i].at.x, ws[i]));
    const auto q = tanh_sinh_sum(nodes, values, qcfg.levels, DMatrix(dim, dim));
    integral = q.value;
    rep.estimated_error = q.estimated_error;
  }
  rep.max_abs_entry = max_abs(integral);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) rep.values.push_back(integral(r, c));
  if (!std::isfinite(rep.max_abs_entry) || !std::isfinite(rep.estimated_error))
    throw QuadratureError("quadrature produced non-finite values");
  if (rep.estimated_error > qcfg.convergence_tol * std::max(1.0, rep.max_abs_entry))
    throw QuadratureError("quadrature did not converge: level-to-level change " +
                          std::to_string(rep.estimated_error));
  rep.pass = rep.claim ? rep.max_abs_entry <= tol + rep.estimated_error : true;
  return rep;
}

// ---------------------------------------------------------------------------
// Integral inter-relation

/// Compares P_k(x0) q with
///   W(x0)^{-1} int_{-1}^{x0} Q(t)^{-1} W(t) P~_{k+1}(t) q dt,
/// the integrated form of (x D1 + D2 + Q d/dx) P_k = P~_{k+1}. Requires every
/// weight exponent at -1 to be positive so that W P_k vanishes there.
inline NumericReport integral_interrelation_check(const PolynomialFamily& fam, int k, double x0, const PolyVector& q,
                                                  double tol, const QuadConfig& qcfg = {}, const OdeConfig& ocfg = {},
                                                  const WeightModel& model = {}) {
  qcfg.validate();
  const auto& spec = fam.spec();
  const auto& space = fam.space();
  if (spec.n() < 2) throw std::invalid_argument("integral inter-relation needs n >= 2");
  if (!(x0 > -1 && x0 < 1)) throw std::invalid_argument("x0 must lie in (-1, 1)");
  const auto integ = integrability_check(spec, space);
  if (!(integ.min_exponent_plus > 0))
    throw IntegrabilityError("integral inter-relation needs all weight exponents at x = -1 to be positive");
  const std::size_t dim = space.dim();
  DVector qd(dim);
  for (std::size_t i = 0; i < dim; ++i) qd[i] = mvjacobi::to_double(q[i]);

  const DVector lhs = eval_double(to_double_coeffs(fam.P(k)), x0, dim) * qd;
  const auto tilde = to_double_coeffs(build_tilde_Pk(fam.D1(), fam.D2(), k + 1));

  // The integrand behaves like (1+t)^(e-1) with e the smallest exponent at -1;
  // reach far enough into the endpoint that the neglected tail is ~e^-40.
  const double u_max = std::clamp(20.0 / integ.min_exponent_plus, qcfg.u_max, 300.0);
  const auto nodes = tanh_sinh_nodes(qcfg.levels, u_max, -1.0, x0);
  std::vector<Abscissa> pts;
  for (const auto& n : nodes) pts.push_back(n.at);
  pts.push_back(Abscissa::from_x(x0));
  const auto ws = weights(spec, space, pts, ocfg, model);
  std::vector<DVector> values;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    DVector v = ws[i] * (eval_double(tilde, nodes[i].at.x, dim) * qd);
    v *= 1.0 / nodes[i].at.Q();
    values.push_back(std::move(v));
  }
  const auto quad = tanh_sinh_sum(nodes, values, qcfg.levels, DVector(dim));
  Matrix<double> rhs_col(dim, 1);
  for (std::size_t i = 0; i < dim; ++i) rhs_col(i, 0) = quad.value[i];
  const DVector rhs = solve(ws.back(), rhs_col).column(0);

  NumericReport rep;
  rep.quantity = "integral inter-relation (k=" + std::to_string(k) + ", x0=" + std::to_string(x0) + ")";
  rep.tolerance = tol;
  double diff = 0, scale = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    diff = std::max(diff, std::abs(lhs[i] - rhs[i]));
    scale = std::max(scale, std::abs(lhs[i]));
    rep.values.push_back(lhs[i] - rhs[i]);
  }
  rep.max_abs_entry = scale > 0 ? diff / scale : diff;  // relative error
  rep.estimated_error = scale > 0 ? quad.estimated_error / scale : quad.estimated_error;
  if (!std::isfinite(rep.max_abs_entry)) throw QuadratureError("inter-relation quadrature produced non-finite values");
  rep.pass = rep.max_abs_entry <= tol + rep.estimated_error;
  return rep;
}

// ---------------------------------------------------------------------------
// ODE against the closed form

/// Largest entrywise error of the ODE fundamental matrix against the
/// basepoint-normalized closed form, relative to max(1, |entry|).
inline double ode_closed_form_discrepancy(const ProblemSpec& spec, const std::vector<double>& xs, const OdeConfig& cfg) {
  std::vector<Abscissa> pts;
  for (double x : xs) pts.push_back(Abscissa::from_x(x));
  const auto ys = fundamental_matrices(spec, pts, cfg);
  const DMatrix base_inv = inverse(commutative_Y(spec, cfg.basepoint));
  double worst = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const DMatrix ref = commutative_Y(spec, pts[i]) * base_inv;
    for (std::size_t r = 0; r < ref.rows(); ++r)
      for (std::size_t c = 0; c < ref.cols(); ++c)
        worst = std::max(worst, std::abs(ys[i](r, c) - ref(r, c)) / std::max(1.0, std::abs(ref(r, c))));
  }
  return worst;
}

}  // namespace mvjacobi::numeric
