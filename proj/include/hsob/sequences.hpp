#ifndef HSOB_SEQUENCES_HPP
#define HSOB_SEQUENCES_HPP

// Scalar sequence families built from ratios ((2n+a)/(2n+b))^w.
//
// Every family has the shape
//
//   s_n(w) = P(n) * sum_i c_i [((2n+a_i)/(2n+b_i))^w - 1]
//
// (the constants in each bracket always cancel against sum_i c_i), which is
// how they are evaluated: each term as expm1(w log1p((a_i-b_i)/(2n+b_i))), so
// the leading-order cancellation between terms costs no precision.
//
// The tilde families decorate the diagonal scalings that appear in the
// adjoint of the derivative and in H^w D H^-w - D; the others arise from the
// second-order commutators.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hsob/coeff_vec.hpp"

namespace hsob {

enum class SequenceName {
  AlphaTilde,
  BetaTilde,
  GammaTilde,
  MTilde,
  LTilde,
  ATilde,
  BTilde,
  A,
  B,
  C,
  L,
  M,
  T,
  Alpha,
  Beta,
  Gamma,
};

inline constexpr std::array<SequenceName, 16> kAllSequences = {
    SequenceName::AlphaTilde, SequenceName::BetaTilde, SequenceName::GammaTilde,
    SequenceName::MTilde,     SequenceName::LTilde,    SequenceName::ATilde,
    SequenceName::BTilde,     SequenceName::A,         SequenceName::B,
    SequenceName::C,          SequenceName::L,         SequenceName::M,
    SequenceName::T,          SequenceName::Alpha,     SequenceName::Beta,
    SequenceName::Gamma,
};

namespace detail {

struct RatioTerm {
  double coef;
  int num;  // 2n + num
  int den;  // 2n + den
};

enum class Prefactor {
  SqrtHalfN,        // sqrt(n/2)
  SqrtHalfNp1,      // sqrt((n+1)/2)
  SqrtNNm1,         // sqrt(n(n-1))
  SqrtNp1Np2,       // sqrt((n+1)(n+2))
  HalfTwoNp1,       // (2n+1)/2
  SqrtFallingFour,  // sqrt(n(n-1)(n-2)(n-3)/16)
  QuarterNNm1,      // n(n-1)/4
  SqrtRisingFour,   // sqrt(n(n+1)(n+2)(n+3)/16)
  SqrtFallingThree, // sqrt(n(n-1)(n-2)/8)
  HalfNp1SqrtHalfN, // (n+1)/2 * sqrt(n/2)
  HalfNSqrtHalfNp1, // n/2 * sqrt((n+1)/2)
  SqrtRisingThree,  // sqrt((n+1)(n+2)(n+3)/8)
};

struct FamilySpec {
  std::string_view name;
  double decay;
  Prefactor prefactor;
  int n_terms;
  std::array<RatioTerm, 3> terms;
};

inline const FamilySpec& family_spec(SequenceName fam) {
  static const std::array<FamilySpec, 16> specs = {{
      {"alpha_tilde", 0.5, Prefactor::SqrtHalfN, 1, {{{1, -1, 1}}}},
      {"beta_tilde", 0.5, Prefactor::SqrtHalfNp1, 1, {{{-1, 3, 1}}}},
      {"gamma_tilde", 0.0, Prefactor::SqrtNNm1, 1, {{{1, 1, -3}}}},
      {"m_tilde", 0.0, Prefactor::SqrtNp1Np2, 1, {{{1, 1, 5}}}},
      {"l_tilde", 0.0, Prefactor::HalfTwoNp1, 1, {{{1, 5, 1}}}},
      {"a_tilde", 0.5, Prefactor::SqrtHalfN, 1, {{{-1, 1, -3}}}},
      // The bound list never states b~ explicitly; it is placed in the
      // n^{-1/2} class alongside a~.
      {"b_tilde", 0.5, Prefactor::SqrtHalfNp1, 1, {{{1, -1, 5}}}},
      {"a", 0.0, Prefactor::SqrtFallingFour, 2, {{{1, 1, -7}, {-2, -3, -7}}}},
      {"b", 0.0, Prefactor::QuarterNNm1, 2, {{{1, -3, 1}, {1, 5, 1}}}},
      {"c", 0.0, Prefactor::SqrtRisingFour, 2, {{{1, 1, 9}, {-2, 5, 9}}}},
      {"l", 0.5, Prefactor::SqrtFallingThree, 3, {{{1, 1, -5}, {-1, -3, -5}, {-1, -1, -5}}}},
      {"m", 0.5, Prefactor::HalfNp1SqrtHalfN, 3, {{{-1, 1, -1}, {1, -3, -1}, {1, 3, -1}}}},
      {"t", 0.5, Prefactor::HalfNSqrtHalfNp1, 3, {{{1, 5, 3}, {-1, 1, 3}, {-1, -1, 3}}}},
      {"alpha", 0.5, Prefactor::SqrtRisingThree, 3, {{{1, 1, 7}, {-1, 3, 7}, {-1, 5, 7}}}},
      {"beta", 1.5, Prefactor::SqrtHalfN, 2, {{{0.5, 1, -1}, {1, -3, -1}}}},
      {"gamma", 1.5, Prefactor::SqrtHalfNp1, 2, {{{0.5, 1, 3}, {1, 5, 3}}}},
  }};
  return specs[static_cast<std::size_t>(fam)];
}

inline double prefactor_value(Prefactor kind, double n) {
  switch (kind) {
    case Prefactor::SqrtHalfN: return std::sqrt(n / 2);
    case Prefactor::SqrtHalfNp1: return std::sqrt((n + 1) / 2);
    case Prefactor::SqrtNNm1: return std::sqrt(n * (n - 1));
    case Prefactor::SqrtNp1Np2: return std::sqrt((n + 1) * (n + 2));
    case Prefactor::HalfTwoNp1: return (2 * n + 1) / 2;
    case Prefactor::SqrtFallingFour: return std::sqrt(n * (n - 1) * (n - 2) * (n - 3) / 16);
    case Prefactor::QuarterNNm1: return n * (n - 1) / 4;
    case Prefactor::SqrtRisingFour: return std::sqrt(n * (n + 1) * (n + 2) * (n + 3) / 16);
    case Prefactor::SqrtFallingThree: return std::sqrt(n * (n - 1) * (n - 2) / 8);
    case Prefactor::HalfNp1SqrtHalfN: return (n + 1) / 2 * std::sqrt(n / 2);
    case Prefactor::HalfNSqrtHalfNp1: return n / 2 * std::sqrt((n + 1) / 2);
    case Prefactor::SqrtRisingThree: return std::sqrt((n + 1) * (n + 2) * (n + 3) / 8);
  }
  return 0.0;
}

// e^z - 1 without cancellation for small |z|.
inline Complex expm1(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

inline bool is_integer(Complex w) {
  return w.imag() == 0.0 && std::nearbyint(w.real()) == w.real();
}

}  // namespace detail

inline std::string_view sequence_name(SequenceName fam) { return detail::family_spec(fam).name; }

inline std::optional<SequenceName> parse_sequence_name(std::string_view name) {
  for (auto fam : kAllSequences) {
    if (sequence_name(fam) == name) return fam;
  }
  return std::nullopt;
}

/// Exponent e such that n^e |s_n| is claimed bounded.
inline double claimed_decay(SequenceName fam) { return detail::family_spec(fam).decay; }

/// Smallest n >= 0 at which every ratio base is positive. Below it the family
/// is only defined for integer w.
inline std::size_t first_valid_index(SequenceName fam) {
  const auto& spec = detail::family_spec(fam);
  int min_off = 1;
  for (int i = 0; i < spec.n_terms; ++i) {
    min_off = std::min({min_off, spec.terms[static_cast<std::size_t>(i)].num,
                        spec.terms[static_cast<std::size_t>(i)].den});
  }
  // need 2n + min_off > 0
  return min_off > 0 ? 0 : static_cast<std::size_t>((-min_off) / 2 + 1);
}

inline double sequence_prefactor(SequenceName fam, std::size_t n) {
  return detail::prefactor_value(detail::family_spec(fam).prefactor, static_cast<double>(n));
}

/// s_n(w). Throws std::domain_error when a ratio base is non-positive and w
/// is not an integer.
inline Complex seq_value(SequenceName fam, Complex w, std::size_t n) {
  const auto& spec = detail::family_spec(fam);
  const double nd = static_cast<double>(n);
  const bool valid = n >= first_valid_index(fam);
  if (!valid && !detail::is_integer(w)) {
    throw std::domain_error(std::string("seq_value: ") + std::string(spec.name) +
                            " is undefined at n=" + std::to_string(n) + " for non-integer w");
  }
  Complex bracket{};
  for (int i = 0; i < spec.n_terms; ++i) {
    const auto& t = spec.terms[static_cast<std::size_t>(i)];
    const double den = 2 * nd + t.den;
    if (valid) {
      const double log_ratio = std::log1p((t.num - t.den) / den);
      bracket += t.coef * detail::expm1(w * log_ratio);
    } else {
      const double ratio = (2 * nd + t.num) / den;
      bracket += t.coef * (std::pow(ratio, w.real()) - 1.0);
    }
  }
  return detail::prefactor_value(spec.prefactor, nd) * bracket;
}

/// Diagonal-entry variant: zero wherever the prefactor vanishes, so that e.g.
/// alpha~_0(w) = 0 for every w even though its ratio base is negative there.
inline Complex seq_entry(SequenceName fam, Complex w, std::size_t n) {
  if (sequence_prefactor(fam, n) == 0.0) return {};
  return seq_value(fam, w, n);
}

struct BoundCertificate {
  double M = 0.0;              // max of n^e |s_n| over the evaluated range
  double asymptote = 0.0;      // n^e |s_n| at n = n_max
  std::size_t n_at_max = 0;
  std::size_t first_n = 0;     // first evaluated index
  double M_checkpoint = 0.0;   // running max up to `checkpoint`
  std::size_t checkpoint = 0;
};

/// certify_bound for several w at once; the per-n logarithms are shared.
inline std::vector<BoundCertificate> certify_bounds(SequenceName fam, std::span<const Complex> ws,
                                                    std::size_t n_max, std::size_t checkpoint = 0) {
  if (n_max < 100) throw std::invalid_argument("certify_bound: n_max must be >= 100");
  const auto& spec = detail::family_spec(fam);
  const std::size_t valid_from = std::max<std::size_t>(1, first_valid_index(fam));

  std::vector<BoundCertificate> out(ws.size());
  std::vector<bool> integer_w(ws.size());
  std::vector<bool> real_w(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) {
    integer_w[i] = detail::is_integer(ws[i]);
    real_w[i] = ws[i].imag() == 0.0;
    out[i].first_n = integer_w[i] ? 1 : valid_from;
    out[i].checkpoint = checkpoint;
  }

  std::array<double, 3> logs{};
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double nd = static_cast<double>(n);
    const double pref = detail::prefactor_value(spec.prefactor, nd);
    const double scale = spec.decay == 0.0   ? 1.0
                         : spec.decay == 0.5 ? std::sqrt(nd)
                                             : std::pow(nd, spec.decay);
    const bool valid = n >= valid_from;
    if (valid) {
      for (int t = 0; t < spec.n_terms; ++t) {
        const auto& term = spec.terms[static_cast<std::size_t>(t)];
        logs[static_cast<std::size_t>(t)] = std::log1p((term.num - term.den) / (2 * nd + term.den));
      }
    }
    for (std::size_t i = 0; i < ws.size(); ++i) {
      if (n < out[i].first_n) continue;
      double magnitude = 0.0;
      if (!valid) {
        magnitude = std::abs(seq_value(fam, ws[i], n));
      } else if (real_w[i]) {
        const double w = ws[i].real();
        double bracket = 0.0;
        for (int t = 0; t < spec.n_terms; ++t) {
          bracket += spec.terms[static_cast<std::size_t>(t)].coef * std::expm1(w * logs[static_cast<std::size_t>(t)]);
        }
        magnitude = std::abs(pref * bracket);
      } else {
        Complex bracket{};
        for (int t = 0; t < spec.n_terms; ++t) {
          bracket += spec.terms[static_cast<std::size_t>(t)].coef *
                     detail::expm1(ws[i] * logs[static_cast<std::size_t>(t)]);
        }
        magnitude = std::abs(pref * bracket);
      }
      const double scaled = scale * magnitude;
      auto& cert = out[i];
      if (scaled > cert.M) {
        cert.M = scaled;
        cert.n_at_max = n;
      }
      if (n <= checkpoint) cert.M_checkpoint = cert.M;
      if (n == n_max) cert.asymptote = scaled;
    }
  }
  return out;
}

/// M = max n^e |s_n| over valid n <= n_max, asymptote = n_max^e |s_{n_max}|.
inline BoundCertificate certify_bound(SequenceName fam, Complex w, std::size_t n_max,
                                      std::size_t checkpoint = 0) {
  const std::array<Complex, 1> ws{w};
  return certify_bounds(fam, ws, n_max, checkpoint).front();
}

}  // namespace hsob

#endif  // HSOB_SEQUENCES_HPP
