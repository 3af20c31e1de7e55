#ifndef HSOB_INTERPOLATION_HPP
#define HSOB_INTERPOLATION_HPP

// F(z) = 2 <phi, H^{conj z} L* H^{-conj z} phi> + <H^z A* H^{-z} phi, H^{conj z} A* H^{-conj z} phi>
// (complex inner products at level 0) on the strip 0 <= Re z <= 1, and the
// three-lines bound |F(x+iy)| <= m0^{1-x} m1^x.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hsob/coeff_vec.hpp"
#include "hsob/monotonicity.hpp"
#include "hsob/operators.hpp"

namespace hsob {

struct StripGrid {
  std::vector<double> x_points;
  std::vector<double> y_points;
  double Y = 0.0;
};

namespace detail {

inline std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    // symmetric formula so that the midpoint is hit exactly
    out[static_cast<std::size_t>(i)] =
        count == 1 ? lo : (lo * (count - 1 - i) + hi * i) / (count - 1);
  }
  return out;
}

inline bool contains(const std::vector<double>& v, double x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace detail

/// nx points on [0, 1] and ny points on [-Y, Y]; both counts must be odd.
inline StripGrid make_strip_grid(double Y = 20.0, int ny = 401, int nx = 11) {
  if (!(Y > 0.0)) throw std::invalid_argument("make_strip_grid: Y must be positive");
  if (nx < 3 || nx % 2 == 0) throw std::invalid_argument("make_strip_grid: nx must be odd and >= 3");
  if (ny < 1 || ny % 2 == 0) throw std::invalid_argument("make_strip_grid: ny must be odd");
  StripGrid g{detail::linspace(0.0, 1.0, nx), detail::linspace(-Y, Y, ny), Y};
  g.y_points[static_cast<std::size_t>(ny / 2)] = 0.0;
  return g;
}

inline void validate(const StripGrid& g) {
  for (double x : {0.0, 0.5, 1.0}) {
    if (!detail::contains(g.x_points, x)) throw std::invalid_argument("StripGrid: x points must include 0, 1/2 and 1");
  }
  if (!detail::contains(g.y_points, 0.0)) throw std::invalid_argument("StripGrid: y points must include 0");
  for (double x : g.x_points) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("StripGrid: x points must lie in [0, 1]");
  }
  for (double y : g.y_points) {
    if (std::abs(y) > g.Y) throw std::invalid_argument("StripGrid: y points must lie in [-Y, Y]");
  }
}

/// Operators of one (sigma, b) pair at a fixed alloc, reused across z.
class FEvaluator {
 public:
  FEvaluator(const MultiplierSpec& sigma, const MultiplierSpec& b, const RealCoeffVec& phi)
      : phi_(embed(phi)) {
    for (const auto* m : {&sigma, &b}) {
      const auto deg = m->degree();
      if (!deg || *deg > 1) throw std::invalid_argument("f_eval: sigma and b must be affine");
    }
    const int n = static_cast<int>(phi.alloc());
    a_ = to_complex(a_star(sigma, n));
    l_ = to_complex(l_star(sigma, b, n));
    const int domain = std::min(a_.exact_domain(), l_.exact_domain());
    if (static_cast<int>(phi.support()) > domain) {
      throw SpillError("f_eval: support " + std::to_string(phi.support()) + " exceeds exact domain " +
                       std::to_string(domain));
    }
  }

  Complex operator()(Complex z) const {
    const Complex zb = std::conj(z);
    const ComplexCoeffVec u = hermite_power(zb, l_.apply(hermite_power(-zb, phi_)));
    const ComplexCoeffVec v1 = hermite_power(z, a_.apply(hermite_power(-z, phi_)));
    const ComplexCoeffVec v2 = hermite_power(zb, a_.apply(hermite_power(-zb, phi_)));
    return 2.0 * inner_p(phi_, u, 0.0) + inner_p(v1, v2, 0.0);
  }

 private:
  ComplexCoeffVec phi_;
  ComplexOp a_;
  ComplexOp l_;
};

inline Complex f_eval(const MonoProblem& prob, const RealCoeffVec& phi, Complex z) {
  return FEvaluator(prob.sigma, prob.b, phi)(z);
}

struct BoundarySup {
  double m0 = 0.0;
  double m1 = 0.0;
};

inline constexpr double kBoundaryInflation = 1.05;

namespace detail {

inline BoundarySup boundary_sup_on(const FEvaluator& f, const std::vector<double>& ys) {
  BoundarySup out;
  for (double y : ys) {
    out.m0 = std::max(out.m0, std::abs(f(Complex(0.0, y))));
    out.m1 = std::max(out.m1, std::abs(f(Complex(1.0, y))));
  }
  out.m0 *= kBoundaryInflation;
  out.m1 *= kBoundaryInflation;
  return out;
}

}  // namespace detail

/// Grid maxima of |F| on Re z = 0 and Re z = 1 over n_samples points of
/// [-Y, Y], inflated by 5%.
inline BoundarySup boundary_sup(const MonoProblem& prob, const RealCoeffVec& phi, double Y, int n_samples) {
  if (n_samples < 101) throw std::invalid_argument("boundary_sup: n_samples must be >= 101");
  if (Y < 10.0) throw std::invalid_argument("boundary_sup: Y must be >= 10");
  return detail::boundary_sup_on(FEvaluator(prob.sigma, prob.b, phi), detail::linspace(-Y, Y, n_samples));
}

struct ThreeLinesRow {
  double x = 0.0;
  double y = 0.0;
  Complex F;
  double bound = 0.0;
  double margin = 0.0;  // bound - |F|
};

struct ThreeLinesReport {
  double m0 = 0.0;
  double m1 = 0.0;
  double worst_margin = 0.0;
  double worst_x = 0.0;
  double worst_y = 0.0;
  bool passed = true;
  std::vector<ThreeLinesRow> rows;  // x-major
};

/// Evaluates F on the grid, takes m0 and m1 from the grid's own boundary
/// columns, and checks the bound at every point. A violation is reported,
/// not thrown.
inline ThreeLinesReport three_lines_check(const MonoProblem& prob, const RealCoeffVec& phi, const StripGrid& grid) {
  validate(grid);
  if (grid.y_points.size() < 101) throw std::invalid_argument("three_lines_check: need at least 101 y samples");
  const FEvaluator f(prob.sigma, prob.b, phi);
  const BoundarySup sup = detail::boundary_sup_on(f, grid.y_points);
  ThreeLinesReport rep;
  rep.m0 = sup.m0;
  rep.m1 = sup.m1;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  rep.rows.reserve(grid.x_points.size() * grid.y_points.size());
  for (double x : grid.x_points) {
    const double bound = std::pow(sup.m0, 1.0 - x) * std::pow(sup.m1, x);
    for (double y : grid.y_points) {
      const Complex v = f(Complex(x, y));
      const double margin = bound - std::abs(v);
      rep.rows.push_back({x, y, v, bound, margin});
      if (margin < rep.worst_margin) {
        rep.worst_margin = margin;
        rep.worst_x = x;
        rep.worst_y = y;
      }
    }
  }
  rep.passed = rep.worst_margin >= 0.0;
  return rep;
}

struct FProfile {
  MonoProblem problem;
  RealCoeffVec phi;
  StripGrid grid;
  std::vector<std::vector<Complex>> values;  // values[i][k] = F(x_i + i y_k)
  double m0 = 0.0;
  double m1 = 0.0;
};

inline FProfile f_profile(const MonoProblem& prob, const RealCoeffVec& phi, const StripGrid& grid) {
  validate(grid);
  const FEvaluator f(prob.sigma, prob.b, phi);
  FProfile out{prob, phi, grid, {}, 0.0, 0.0};
  for (double x : grid.x_points) {
    std::vector<Complex> row;
    row.reserve(grid.y_points.size());
    for (double y : grid.y_points) row.push_back(f(Complex(x, y)));
    out.values.push_back(std::move(row));
  }
  const BoundarySup sup = detail::boundary_sup_on(f, grid.y_points);
  out.m0 = sup.m0;
  out.m1 = sup.m1;
  return out;
}

struct CauchyRiemannResult {
  double residual = 0.0;  // max |F_y - i F_x|
  double max_abs_f = 0.0;
};

/// Central-difference Cauchy-Riemann residual at every grid point. F is entire
/// at truncation, so the stencil may step outside the strip.
inline CauchyRiemannResult cauchy_riemann_residual(const MonoProblem& prob, const RealCoeffVec& phi,
                                                   const StripGrid& grid, double h = 1e-5) {
  if (!(h > 0.0)) throw std::invalid_argument("cauchy_riemann_residual: step must be positive");
  const FEvaluator f(prob.sigma, prob.b, phi);
  CauchyRiemannResult out;
  const Complex i(0.0, 1.0);
  for (double x : grid.x_points) {
    for (double y : grid.y_points) {
      const Complex z(x, y);
      const Complex fx = (f(z + h) - f(z - h)) / (2.0 * h);
      const Complex fy = (f(z + i * h) - f(z - i * h)) / (2.0 * h);
      out.residual = std::max(out.residual, std::abs(fy - i * fx));
      out.max_abs_f = std::max(out.max_abs_f, std::abs(f(z)));
    }
  }
  return out;
}

}  // namespace hsob

#endif  // HSOB_INTERPOLATION_HPP
