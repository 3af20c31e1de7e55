#ifndef HSOB_MULTIPLIER_HPP
#define HSOB_MULTIPLIER_HPP

// Descriptions of multiplier functions sigma(x), b(x): affine, polynomial, or a
// smooth function sampled by Gauss-Hermite quadrature from a fixed registry.

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hsob/coeff_vec.hpp"

namespace hsob {

struct AffineMultiplier {
  double slope = 0.0;      // alpha in alpha x + beta
  double intercept = 0.0;  // beta
};

struct PolynomialMultiplier {
  std::vector<double> coeffs;  // c_0 + c_1 x + ... + c_d x^d
};

struct SampledMultiplier {
  std::string name;
  std::function<double(double)> fn;
  int order = 0;                          // Gauss-Hermite order used for projection
  std::optional<double> derivative_bound; // sup |f'|
};

struct RegistryEntry {
  std::function<double(double)> fn;
  double derivative_bound;
};

/// Named smooth functions with bounded derivatives: tanh, sin, atan, gauss_bump.
inline std::optional<RegistryEntry> lookup_sampled(const std::string& name) {
  if (name == "tanh") return RegistryEntry{[](double x) { return std::tanh(x); }, 1.0};
  if (name == "sin") return RegistryEntry{[](double x) { return std::sin(x); }, 1.0};
  if (name == "atan") return RegistryEntry{[](double x) { return std::atan(x); }, 1.0};
  if (name == "gauss_bump") {
    // d/dx e^{-x^2} peaks at x = 1/sqrt(2)
    return RegistryEntry{[](double x) { return std::exp(-x * x); }, std::sqrt(2.0) * std::exp(-0.5)};
  }
  return std::nullopt;
}

class MultiplierSpec {
 public:
  using Kind = std::variant<AffineMultiplier, PolynomialMultiplier, SampledMultiplier>;

  MultiplierSpec() : kind_(AffineMultiplier{}) {}
  explicit MultiplierSpec(Kind kind) : kind_(std::move(kind)) {}

  static MultiplierSpec affine(double slope, double intercept) {
    return MultiplierSpec(AffineMultiplier{slope, intercept});
  }
  static MultiplierSpec constant(double c) { return affine(0.0, c); }
  static MultiplierSpec polynomial(std::vector<double> coeffs) {
    return MultiplierSpec(PolynomialMultiplier{std::move(coeffs)});
  }
  static MultiplierSpec sampled(const std::string& name, int order) {
    auto entry = lookup_sampled(name);
    if (!entry) throw std::invalid_argument("unknown sampled multiplier '" + name + "'");
    return MultiplierSpec(SampledMultiplier{name, entry->fn, order, entry->derivative_bound});
  }
  static MultiplierSpec sampled(std::string name, std::function<double(double)> fn, int order,
                                std::optional<double> derivative_bound = std::nullopt) {
    return MultiplierSpec(
        SampledMultiplier{std::move(name), std::move(fn), order, derivative_bound});
  }

  const Kind& kind() const { return kind_; }
  bool is_sampled() const { return std::holds_alternative<SampledMultiplier>(kind_); }
  bool is_affine() const {
    auto poly = polynomial_coeffs();
    return poly && poly->size() <= 2;
  }

  /// Coefficients (trailing zeros trimmed) for affine/polynomial kinds.
  std::optional<std::vector<double>> polynomial_coeffs() const {
    std::vector<double> c;
    if (const auto* a = std::get_if<AffineMultiplier>(&kind_)) {
      c = {a->intercept, a->slope};
    } else if (const auto* p = std::get_if<PolynomialMultiplier>(&kind_)) {
      c = p->coeffs;
    } else {
      return std::nullopt;
    }
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    return c;
  }

  /// Polynomial degree; -1 for the zero function, nullopt for sampled.
  std::optional<int> degree() const {
    auto c = polynomial_coeffs();
    if (!c) return std::nullopt;
    return static_cast<int>(c->size()) - 1;
  }

  double operator()(double x) const {
    if (const auto* s = std::get_if<SampledMultiplier>(&kind_)) return s->fn(x);
    const auto c = *polynomial_coeffs();
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// f'(x): analytic for polynomial kinds, central difference with step
  /// cbrt(eps) (1 + |x|) for sampled kinds.
  double derivative(double x) const {
    if (const auto* s = std::get_if<SampledMultiplier>(&kind_)) {
      const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * (1.0 + std::abs(x));
      return (s->fn(x + h) - s->fn(x - h)) / (2.0 * h);
    }
    const auto c = *polynomial_coeffs();
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * c[k];
    return acc;
  }

  /// x -> f(x)^2, exact for polynomial kinds.
  MultiplierSpec squared() const {
    if (const auto* s = std::get_if<SampledMultiplier>(&kind_)) {
      // |(f^2)'| = 2|f f'| would need sup |f|, which the registry does not carry
      auto fn = s->fn;
      return sampled(s->name + "^2", [fn](double x) { const double v = fn(x); return v * v; },
                     s->order);
    }
    const auto c = *polynomial_coeffs();
    if (c.empty()) return polynomial({});
    std::vector<double> sq(2 * c.size() - 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = 0; j < c.size(); ++j) sq[i + j] += c[i] * c[j];
    }
    return polynomial(std::move(sq));
  }

  /// "affine" | "poly" | "sampled"
  std::string kind_name() const {
    if (std::holds_alternative<AffineMultiplier>(kind_)) return "affine";
    if (std::holds_alternative<PolynomialMultiplier>(kind_)) return "poly";
    return "sampled";
  }

  /// Parameters joined by ';' (keeps CSV cells free of commas).
  std::string params_string() const {
    if (const auto* a = std::get_if<AffineMultiplier>(&kind_)) {
      return format_double(a->slope) + ";" + format_double(a->intercept);
    }
    if (const auto* p = std::get_if<PolynomialMultiplier>(&kind_)) {
      std::string out;
      for (std::size_t i = 0; i < p->coeffs.size(); ++i) {
        if (i) out += ";";
        out += format_double(p->coeffs[i]);
      }
      return out;
    }
    const auto& s = std::get<SampledMultiplier>(kind_);
    return s.name + ";order=" + std::to_string(s.order);
  }

 private:
  Kind kind_;
};

}  // namespace hsob

#endif  // HSOB_MULTIPLIER_HPP
