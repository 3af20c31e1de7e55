#ifndef HSOB_MONOTONICITY_HPP
#define HSOB_MONOTONICITY_HPP

// The quadratic form M_p(phi) = 2 <phi, L* phi>_p + ||A* phi||_p^2 and
// estimates of the best constant C in M_p(phi) <= C ||phi||_p^2.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "hsob/coeff_vec.hpp"
#include "hsob/hermite.hpp"
#include "hsob/multiplier.hpp"
#include "hsob/operators.hpp"

namespace hsob {

struct MonoProblem {
  MultiplierSpec sigma;
  MultiplierSpec b;
  double p = 0.0;
};

/// Sampled multipliers must carry a derivative bound.
inline void validate(const MonoProblem& prob) {
  for (const auto* m : {&prob.sigma, &prob.b}) {
    if (const auto* s = std::get_if<SampledMultiplier>(&m->kind())) {
      if (!s->derivative_bound) {
        throw std::invalid_argument("sampled multiplier '" + s->name + "' has no derivative bound");
      }
    }
  }
  if (!std::isfinite(prob.p)) throw std::invalid_argument("Sobolev index p must be finite");
}

/// Extra modes needed beyond the input support for A* and L* to be exact
/// (polynomial multipliers). Sampled multipliers get a fixed pad.
inline int form_band_growth(const MonoProblem& prob) {
  constexpr int kSampledPad = 8;
  const auto ds = prob.sigma.degree();
  const auto db = prob.b.degree();
  if (!ds || !db) return kSampledPad;
  const int sig = std::max(*ds, 0);
  const int bb = std::max(*db, 0);
  return std::max({2 * sig + 2, bb + 1, sig + 1});
}

/// M_p(phi) at alloc phi.alloc(); spill raises SpillError.
inline double mono_form(const MonoProblem& prob, const RealCoeffVec& phi) {
  const int n = static_cast<int>(phi.alloc());
  const RealOp a = a_star(prob.sigma, n);
  const RealOp l = l_star(prob.sigma, prob.b, n);
  const RealCoeffVec lphi = l.apply(phi);
  const RealCoeffVec aphi = a.apply(phi);
  const double na = norm_p(aphi, prob.p);
  return 2.0 * inner_p(phi, lphi, prob.p) + na * na;
}

/// Integration-by-parts value of M_0: the quadrature of
/// ((sigma')^2 - b') phi^2 over the real line.
inline double mono_p0_oracle(const MultiplierSpec& sigma, const MultiplierSpec& b,
                             const RealCoeffVec& phi, const QuadratureRule& rule) {
  for (const auto* m : {&sigma, &b}) {
    if (const auto deg = m->degree(); deg && *deg > 1) {
      throw std::invalid_argument("mono_p0_oracle: polynomial multipliers of degree > 1 have unbounded derivatives");
    }
    if (const auto* s = std::get_if<SampledMultiplier>(&m->kind()); s && !s->derivative_bound) {
      throw std::invalid_argument("mono_p0_oracle: sampled multiplier '" + s->name + "' has no derivative bound");
    }
  }
  const int k = static_cast<int>(phi.support());
  if (rule.order < 2 * k + 2) {
    throw std::invalid_argument("mono_p0_oracle: quadrature order too small for the support of phi");
  }
  if (k == 0) return 0.0;
  const Eigen::MatrixXd basis = weighted_basis(k, rule);
  double acc = 0.0;
  for (int j = 0; j < rule.order; ++j) {
    double v = 0.0;  // phi(x_j) sqrt(w~_j)
    for (int i = 0; i < k; ++i) v += phi[static_cast<std::size_t>(i)] * basis(i, j);
    const double x = rule.nodes[static_cast<std::size_t>(j)];
    const double ds = sigma.derivative(x);
    acc += (ds * ds - b.derivative(x)) * v * v;
  }
  return acc;
}

struct FormMatrix {
  Eigen::MatrixXd Q;     // K x K, phi^T Q phi = M_p(phi)
  Eigen::VectorXd gram;  // diagonal of G_p on the first K modes
};

/// Matrix of M_p on span{h_0..h_{K-1}} with operators materialized at alloc N.
inline FormMatrix assemble_form_matrix(const MonoProblem& prob, int k, int n) {
  if (k < 1) throw std::invalid_argument("assemble_form_matrix: K must be >= 1");
  const RealOp a = a_star(prob.sigma, n);
  const RealOp l = l_star(prob.sigma, prob.b, n);
  const int domain = std::min(a.exact_domain(), l.exact_domain());
  if (k > domain) {
    throw SpillError("assemble_form_matrix: K=" + std::to_string(k) + " exceeds the exact domain " +
                     std::to_string(domain) + " at N=" + std::to_string(n));
  }
  Eigen::VectorXd g(n);
  for (int i = 0; i < n; ++i) g[i] = sobolev_weight(static_cast<std::size_t>(i), prob.p);

  FormMatrix out;
  const Eigen::MatrixXd gl = g.head(k).asDiagonal() * l.matrix().topLeftCorner(k, k);
  const Eigen::MatrixXd ak = a.matrix().leftCols(k);
  out.Q = gl + gl.transpose();
  out.Q.noalias() += ak.transpose() * g.asDiagonal() * ak;
  out.Q = 0.5 * (out.Q + out.Q.transpose()).eval();
  out.gram = g.head(k);
  return out;
}

namespace detail {

inline double largest_generalized_eigenvalue(const Eigen::MatrixXd& q, const Eigen::VectorXd& gram) {
  const Eigen::VectorXd s = gram.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd m = s.asDiagonal() * q * s.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("best_constant: eigen-solve failed");
  return solver.eigenvalues().maxCoeff();
}

}  // namespace detail

/// lambda_max of (Q, G_p) on the first K modes.
inline double best_constant(const MonoProblem& prob, int k) {
  validate(prob);
  const FormMatrix f = assemble_form_matrix(prob, k, k + form_band_growth(prob));
  return detail::largest_generalized_eigenvalue(f.Q, f.gram);
}

struct SweepEntry {
  int K = 0;
  double lambda_max = 0.0;
};

struct MonotonicityReport {
  MonoProblem problem;
  std::vector<SweepEntry> entries;
  double plateau = 0.0;
  bool converged = false;
  bool monotone = false;
  double tol = 0.0;
  double monotone_tol = 0.0;
  double last_step = 0.0;  // |lambda(K_last) - lambda(K_last / 2)|
};

inline std::vector<int> default_k_schedule() { return {8, 16, 32, 64, 128, 256, 512}; }

/// lambda_max over nested truncations. The operators are built once at
/// K_last + pad and each K uses the leading block, so the subspaces nest exactly.
inline MonotonicityReport plateau_sweep(const MonoProblem& prob, const std::vector<int>& k_list,
                                        double tol = 1e-6, double monotone_tol = 1e-10) {
  validate(prob);
  if (k_list.empty()) throw std::invalid_argument("plateau_sweep: empty K schedule");
  for (std::size_t i = 0; i < k_list.size(); ++i) {
    if (k_list[i] < 1) throw std::invalid_argument("plateau_sweep: K must be >= 1");
    if (i > 0 && k_list[i] <= k_list[i - 1]) throw std::invalid_argument("plateau_sweep: K schedule must be increasing");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("plateau_sweep: tolerance must be positive");

  const int k_last = k_list.back();
  const FormMatrix full = assemble_form_matrix(prob, k_last, k_last + form_band_growth(prob));

  MonotonicityReport report;
  report.problem = prob;
  report.tol = tol;
  report.monotone_tol = monotone_tol;
  report.monotone = true;
  for (int k : k_list) {
    const double lam = detail::largest_generalized_eigenvalue(full.Q.topLeftCorner(k, k), full.gram.head(k));
    if (!report.entries.empty()) {
      const double prev = report.entries.back().lambda_max;
      if (lam < prev - monotone_tol * std::max(1.0, std::abs(prev))) report.monotone = false;
    }
    report.entries.push_back({k, lam});
  }
  report.plateau = report.entries.back().lambda_max;
  // compare against K_last / 2, or the previous entry when the schedule is not doubling
  const SweepEntry* ref = nullptr;
  for (const auto& e : report.entries) {
    if (2 * e.K == k_last) ref = &e;
  }
  if (!ref && report.entries.size() >= 2) ref = &report.entries[report.entries.size() - 2];
  if (ref) {
    report.last_step = std::abs(report.plateau - ref->lambda_max);
    report.converged = report.last_step <= tol * std::max(1.0, std::abs(report.plateau));
  }
  return report;
}

// --- H^p versus the banded (X^2 - D^2)^p -----------------------------------

namespace detail {

// (X^2 - D^2) phi with the tridiagonal recurrences, in type T.
template <typename T>
std::vector<T> apply_hermite_operator(const std::vector<T>& f) {
  const std::size_t n = f.size();
  auto tri = [n](const std::vector<T>& v, T sign) {
    std::vector<T> out(n, T{0});
    for (std::size_t i = 0; i < n; ++i) {
      T acc{0};
      if (i + 1 < n) acc += std::sqrt(T(i + 1) / T(2)) * v[i + 1];
      if (i >= 1) acc += sign * std::sqrt(T(i) / T(2)) * v[i - 1];
      out[i] = acc;
    }
    return out;
  };
  const auto x2 = tri(tri(f, T{1}), T{1});
  const auto d2 = tri(tri(f, T{-1}), T{-1});
  std::vector<T> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x2[i] - d2[i];
  return out;
}

}  // namespace detail

/// max_n |((X^2 - D^2)^p phi)_n - (2n+1)^p phi_n|, computed in T. Requires
/// alloc >= support + 2p so that no intermediate spills.
template <typename T = long double>
double hermite_power_identity_check(int p, const RealCoeffVec& phi) {
  if (p < 1) throw std::invalid_argument("hermite_power_identity_check: p must be >= 1");
  const std::size_t need = phi.support() + 2 * static_cast<std::size_t>(p);
  if (phi.alloc() < need) {
    throw SpillError("hermite_power_identity_check: alloc " + std::to_string(phi.alloc()) +
                     " below support + 2p = " + std::to_string(need));
  }
  std::vector<T> banded(phi.alloc());
  for (std::size_t i = 0; i < phi.alloc(); ++i) banded[i] = static_cast<T>(phi[i]);
  for (int k = 0; k < p; ++k) banded = detail::apply_hermite_operator(banded);
  double defect = 0.0;
  for (std::size_t i = 0; i < phi.alloc(); ++i) {
    const T spectral = std::pow(T(2 * i + 1), T(p)) * static_cast<T>(phi[i]);
    defect = std::max(defect, static_cast<double>(std::abs(banded[i] - spectral)));
  }
  return defect;
}

}  // namespace hsob

#endif  // HSOB_MONOTONICITY_HPP
