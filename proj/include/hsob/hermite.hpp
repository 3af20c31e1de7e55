#ifndef HSOB_HERMITE_HPP
#define HSOB_HERMITE_HPP

// Pointwise Hermite functions and Gauss-Hermite quadrature.
//
// h_n(x) = (2^n n! sqrt(pi))^{-1/2} e^{-x^2/2} H_n(x) is always evaluated
// through the normalized three-term recurrence
//
//   h_{n+1}(x) = (x h_n(x) - sqrt(n/2) h_{n-1}(x)) / sqrt((n+1)/2),
//
// carrying the Gaussian factor as a separate log-scale so that neither the
// polynomial growth nor the e^{-x^2/2} decay over/underflows mid-recurrence.

#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "hsob/coeff_vec.hpp"

namespace hsob {

namespace detail {

inline constexpr double kRescale = 1e150;
inline const double kLogRescale = std::log(kRescale);

// Runs the recurrence up to n_max and hands (n, mantissa, log_scale) to the
// visitor; h_n(x) = mantissa * exp(log_scale).
template <typename Visitor>
void hermite_recurrence(int n_max, double x, Visitor&& visit) {
  double log_scale = -0.5 * x * x - 0.25 * std::log(std::numbers::pi);
  double prev = 0.0;
  double cur = 1.0;
  visit(0, cur, log_scale);
  for (int n = 0; n < n_max; ++n) {
    const double next =
        (x * cur - std::sqrt(0.5 * n) * prev) / std::sqrt(0.5 * (n + 1));
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      log_scale += kLogRescale;
    }
    visit(n + 1, cur, log_scale);
  }
}

inline double scaled_value(double mantissa, double log_scale) {
  if (mantissa == 0.0) return 0.0;
  return std::copysign(std::exp(std::log(std::abs(mantissa)) + log_scale), mantissa);
}

}  // namespace detail

/// Value of the n-th Hermite function at x.
inline double hermite_eval(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite_eval: n must be >= 0");
  double out = 0.0;
  detail::hermite_recurrence(n, x, [&](int k, double m, double s) {
    if (k == n) out = detail::scaled_value(m, s);
  });
  return out;
}

/// h_0(x), ..., h_{n_max}(x).
inline std::vector<double> hermite_eval_all(int n_max, double x) {
  if (n_max < 0) throw std::invalid_argument("hermite_eval_all: n_max must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  detail::hermite_recurrence(n_max, x, [&](int k, double m, double s) {
    out[static_cast<std::size_t>(k)] = detail::scaled_value(m, s);
  });
  return out;
}

/// Gauss-Hermite rule for the weight e^{-x^2}.
///
/// `weights_raw` integrate g against e^{-x^2}; `weights` are the same rule
/// reweighted for plain dx integrals of Hermite-function products,
/// weights[j] = weights_raw[j] * exp(x_j^2). `log_weights` holds log(weights)
/// and stays finite where `weights` saturates to +inf (|x_j| > ~26).
struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights_raw;
  std::vector<double> weights;
  std::vector<double> log_weights;
};

inline QuadratureRule gauss_hermite(int order) {
  if (order < 1) throw std::invalid_argument("gauss_hermite: order must be >= 1");
  const auto m = static_cast<Eigen::Index>(order);

  // Jacobi matrix of the orthonormal recurrence: zero diagonal, sqrt(k/2) off it.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd sub(std::max<Eigen::Index>(m - 1, 0));
  for (Eigen::Index k = 0; k + 1 < m; ++k) sub[k] = std::sqrt(0.5 * static_cast<double>(k + 1));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_hermite: tridiagonal eigen-solve failed");
  }

  QuadratureRule rule;
  rule.order = order;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights_raw.resize(rule.nodes.size());
  rule.weights.resize(rule.nodes.size());
  rule.log_weights.resize(rule.nodes.size());

  for (Eigen::Index j = 0; j < m; ++j) {
    double x = solver.eigenvalues()[j];
    double hm = 0.0, hm1 = 0.0;
    auto eval_pair = [&](double at) {
      double s_prev = 0.0, s_last = 0.0;
      detail::hermite_recurrence(order, at, [&](int k, double mant, double s) {
        if (k == order - 1) {
          hm1 = mant;
          s_prev = s;
        }
        if (k == order) {
          hm = mant;
          s_last = s;
        }
      });
      // bring h_{m-1} onto the scale of h_m (differs after a final-step rescale)
      hm1 *= std::exp(s_prev - s_last);
    };
    // Newton polish on h_m(x) = 0 using h_m' = sqrt(2m) h_{m-1} - x h_m.
    for (int it = 0; it < 3 && order > 1; ++it) {
      eval_pair(x);
      const double deriv = std::sqrt(2.0 * order) * hm1 - x * hm;
      if (deriv == 0.0) break;
      const double step = hm / deriv;
      x -= step;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
    }
    // Weight from the Christoffel-Darboux closed form: 1 / (m h_{m-1}(x)^2).
    double log_h = 0.0;
    double mant = 0.0;
    detail::hermite_recurrence(order - 1, x, [&](int k, double mt, double s) {
      if (k == order - 1) {
        mant = mt;
        log_h = s;
      }
    });
    const double log_w = -std::log(static_cast<double>(order)) - 2.0 * (std::log(std::abs(mant)) + log_h);
    const auto ju = static_cast<std::size_t>(j);
    rule.nodes[ju] = x;
    rule.log_weights[ju] = log_w;
    rule.weights[ju] = std::exp(log_w);
    rule.weights_raw[ju] = std::exp(log_w - x * x);
  }
  // Symmetrize: nodes come in +/- pairs and the middle node of odd rules is 0.
  const std::size_t n = rule.nodes.size();
  for (std::size_t j = 0; j < n / 2; ++j) {
    const std::size_t k = n - 1 - j;
    const double x = 0.5 * (rule.nodes[k] - rule.nodes[j]);
    rule.nodes[j] = -x;
    rule.nodes[k] = x;
    const double lw = 0.5 * (rule.log_weights[j] + rule.log_weights[k]);
    rule.log_weights[j] = rule.log_weights[k] = lw;
    rule.weights[j] = rule.weights[k] = std::exp(lw);
    rule.weights_raw[j] = rule.weights_raw[k] = std::exp(lw - x * x);
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

/// Tabulated h_n(x_j) for n <= n_max; values(n, j).
struct HermiteEvalTable {
  int n_max = 0;
  std::vector<double> x_points;
  Eigen::MatrixXd values;
};

inline HermiteEvalTable make_eval_table(int n_max, std::span<const double> x_points) {
  HermiteEvalTable table;
  table.n_max = n_max;
  table.x_points.assign(x_points.begin(), x_points.end());
  table.values.resize(n_max + 1, static_cast<Eigen::Index>(x_points.size()));
  for (std::size_t j = 0; j < x_points.size(); ++j) {
    detail::hermite_recurrence(n_max, x_points[j], [&](int k, double m, double s) {
      table.values(k, static_cast<Eigen::Index>(j)) = detail::scaled_value(m, s);
    });
  }
  return table;
}

/// B(n, j) = sqrt(weights[j]) * h_n(x_j) for n < n_rows, evaluated in the log
/// domain. Rows are orthonormal over j for n_rows <= rule.order.
inline Eigen::MatrixXd weighted_basis(int n_rows, const QuadratureRule& rule) {
  Eigen::MatrixXd out(n_rows, rule.order);
  for (int j = 0; j < rule.order; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const double half_lw = 0.5 * rule.log_weights[ju];
    if (n_rows == 0) continue;
    detail::hermite_recurrence(n_rows - 1, rule.nodes[ju], [&](int k, double m, double s) {
      out(k, j) = detail::scaled_value(m, s + half_lw);
    });
  }
  return out;
}

/// Projects f onto h_0..h_{N-1}: coefficient k approximates the integral of f h_k.
/// Requires rule.order >= 2N.
inline RealCoeffVec project(const std::function<double(double)>& f, int N,
                            const QuadratureRule& rule) {
  if (N < 1) throw std::invalid_argument("project: N must be >= 1");
  if (rule.order < 2 * N) {
    throw std::invalid_argument("project: quadrature order must be at least 2N");
  }
  const Eigen::MatrixXd basis = weighted_basis(N, rule);
  std::vector<double> coeffs(static_cast<std::size_t>(N), 0.0);
  for (int j = 0; j < rule.order; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const double fx = f(rule.nodes[ju]);
    if (fx == 0.0) continue;
    // f(x) sqrt(w~) formed in logs: w~ alone overflows for the outer nodes.
    const double scaled = std::copysign(std::exp(std::log(std::abs(fx)) + 0.5 * rule.log_weights[ju]), fx);
    for (int k = 0; k < N; ++k) coeffs[static_cast<std::size_t>(k)] += basis(k, j) * scaled;
  }
  return RealCoeffVec::from_values(std::move(coeffs));
}

}  // namespace hsob

#endif  // HSOB_HERMITE_HPP
