#ifndef HSOB_COEFF_VEC_HPP
#define HSOB_COEFF_VEC_HPP

// Finite Hermite expansions phi = sum_n phi_n h_n and the Hermite-Sobolev
// inner products <f, g>_p = sum_k (2k+1)^{2p} f_k conj(g_k).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace hsob {

using Complex = std::complex<double>;

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};
template <typename T>
inline constexpr bool is_complex_v = is_complex<T>::value;

template <typename Scalar>
Scalar conj_if(const Scalar& v) {
  if constexpr (is_complex_v<Scalar>) {
    return std::conj(v);
  } else {
    return v;
  }
}

/// Raised when an operation would need coefficients beyond the allocation.
class SpillError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficient vector in the Hermite basis.
///
/// `alloc()` is the storage length N; `support()` is the declared support K:
/// coefficients at n >= K are zero and K <= N always holds.
template <typename Scalar>
class CoeffVec {
 public:
  using scalar_type = Scalar;

  CoeffVec() = default;

  explicit CoeffVec(std::size_t alloc) : coeffs_(alloc, Scalar{}) {}

  /// Support is taken as (last nonzero index + 1).
  static CoeffVec from_values(std::vector<Scalar> values) {
    CoeffVec out;
    out.coeffs_ = std::move(values);
    out.support_ = out.actual_support();
    return out;
  }

  static CoeffVec from_values(std::vector<Scalar> values, std::size_t alloc) {
    if (values.size() > alloc) {
      // allowed only when the tail is zero
      for (std::size_t n = alloc; n < values.size(); ++n) {
        if (values[n] != Scalar{}) throw SpillError("CoeffVec: nonzero coefficient beyond alloc");
      }
    }
    values.resize(alloc, Scalar{});
    return from_values(std::move(values));
  }

  static CoeffVec basis(std::size_t n, std::size_t alloc) {
    if (n >= alloc) throw SpillError("CoeffVec::basis: index beyond alloc");
    CoeffVec out(alloc);
    out.coeffs_[n] = Scalar{1};
    out.support_ = n + 1;
    return out;
  }

  std::size_t alloc() const { return coeffs_.size(); }
  std::size_t support() const { return support_; }

  Scalar operator[](std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : Scalar{}; }

  std::span<const Scalar> coeffs() const { return coeffs_; }

  void set(std::size_t n, Scalar value) {
    if (n >= coeffs_.size()) throw SpillError("CoeffVec::set: index beyond alloc");
    coeffs_[n] = value;
    if (value != Scalar{} && n >= support_) support_ = n + 1;
  }

  /// Highest nonzero index + 1 (<= support()).
  std::size_t actual_support() const {
    std::size_t k = coeffs_.size();
    while (k > 0 && coeffs_[k - 1] == Scalar{}) --k;
    return k;
  }

  /// Re-declares the support; fails if a nonzero coefficient would fall outside.
  void declare_support(std::size_t k) {
    if (k > coeffs_.size()) throw SpillError("CoeffVec: declared support exceeds alloc");
    if (k < actual_support()) {
      throw std::invalid_argument("CoeffVec: declared support below actual support");
    }
    support_ = k;
  }

  CoeffVec& operator+=(const CoeffVec& other) { return combine(other, Scalar{1}); }
  CoeffVec& operator-=(const CoeffVec& other) { return combine(other, Scalar{-1}); }

  CoeffVec& operator*=(Scalar s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend CoeffVec operator+(CoeffVec a, const CoeffVec& b) { return a += b; }
  friend CoeffVec operator-(CoeffVec a, const CoeffVec& b) { return a -= b; }
  friend CoeffVec operator*(Scalar s, CoeffVec a) { return a *= s; }

 private:
  CoeffVec& combine(const CoeffVec& other, Scalar sign) {
    if (other.alloc() > alloc()) coeffs_.resize(other.alloc(), Scalar{});
    for (std::size_t n = 0; n < other.alloc(); ++n) coeffs_[n] += sign * other.coeffs_[n];
    support_ = std::max(support_, other.support_);
    return *this;
  }

  std::vector<Scalar> coeffs_;
  std::size_t support_ = 0;
};

using RealCoeffVec = CoeffVec<double>;
using ComplexCoeffVec = CoeffVec<Complex>;

/// Value-preserving re-allocation to a larger (or equal) length.
template <typename Scalar>
CoeffVec<Scalar> pad(const CoeffVec<Scalar>& f, std::size_t alloc) {
  if (alloc < f.support()) throw SpillError("pad: new alloc is below the support");
  std::vector<Scalar> values(f.coeffs().begin(), f.coeffs().end());
  values.resize(alloc, Scalar{});
  auto out = CoeffVec<Scalar>::from_values(std::move(values));
  out.declare_support(f.support());
  return out;
}

/// Declares a smaller support; errors if that would drop nonzero coefficients.
template <typename Scalar>
CoeffVec<Scalar> truncate_declared(const CoeffVec<Scalar>& f, std::size_t support) {
  CoeffVec<Scalar> out = f;
  out.declare_support(support);
  return out;
}

inline ComplexCoeffVec embed(const RealCoeffVec& f) {
  std::vector<Complex> values(f.coeffs().begin(), f.coeffs().end());
  auto out = ComplexCoeffVec::from_values(std::move(values));
  out.declare_support(f.support());
  return out;
}

inline ComplexCoeffVec embed(const ComplexCoeffVec& f) { return f; }

inline ComplexCoeffVec conj(const ComplexCoeffVec& f) {
  std::vector<Complex> values(f.alloc());
  for (std::size_t n = 0; n < f.alloc(); ++n) values[n] = std::conj(f[n]);
  auto out = ComplexCoeffVec::from_values(std::move(values));
  out.declare_support(f.support());
  return out;
}

/// Real parts; errors if any imaginary part exceeds tol in magnitude.
inline RealCoeffVec real_part(const ComplexCoeffVec& f, double tol = 0.0) {
  std::vector<double> values(f.alloc());
  for (std::size_t n = 0; n < f.alloc(); ++n) {
    if (std::abs(f[n].imag()) > tol) throw std::domain_error("real_part: coefficient is not real");
    values[n] = f[n].real();
  }
  auto out = RealCoeffVec::from_values(std::move(values));
  out.declare_support(std::max(out.actual_support(), f.support()));
  return out;
}

/// (2k+1)^{2p}
inline double sobolev_weight(std::size_t k, double p) {
  return std::pow(2.0 * static_cast<double>(k) + 1.0, 2.0 * p);
}

template <typename Scalar>
Scalar inner_p(const CoeffVec<Scalar>& f, const CoeffVec<Scalar>& g, double p) {
  const std::size_t k_max = std::min(f.support(), g.support());
  Scalar acc{};
  for (std::size_t k = 0; k < k_max; ++k) acc += sobolev_weight(k, p) * f[k] * conj_if(g[k]);
  return acc;
}

template <typename Scalar>
double norm_p(const CoeffVec<Scalar>& f, double p) {
  double acc = 0.0;
  for (std::size_t k = 0; k < f.support(); ++k) acc += sobolev_weight(k, p) * std::norm(f[k]);
  return std::sqrt(acc);
}

/// (2n+1)^w = exp(w log(2n+1)).
inline Complex hermite_eigen_power(std::size_t n, Complex w) {
  return std::exp(w * std::log(2.0 * static_cast<double>(n) + 1.0));
}

/// H^w f: coefficient n scaled by (2n+1)^w; support unchanged.
template <typename Scalar>
ComplexCoeffVec hermite_power(Complex w, const CoeffVec<Scalar>& f) {
  std::vector<Complex> values(f.alloc());
  for (std::size_t n = 0; n < f.support(); ++n) values[n] = hermite_eigen_power(n, w) * Complex(f[n]);
  auto out = ComplexCoeffVec::from_values(std::move(values));
  out.declare_support(f.support());
  return out;
}

/// Real-exponent variant staying in the real field.
inline RealCoeffVec hermite_power(double p, const RealCoeffVec& f) {
  std::vector<double> values(f.alloc());
  for (std::size_t n = 0; n < f.support(); ++n) {
    values[n] = std::pow(2.0 * static_cast<double>(n) + 1.0, p) * f[n];
  }
  auto out = RealCoeffVec::from_values(std::move(values));
  out.declare_support(f.support());
  return out;
}

/// i.i.d. standard normal coefficients on [0, support), zero above.
inline RealCoeffVec random_coeffs(std::size_t support, std::size_t alloc, std::mt19937_64& rng) {
  if (support > alloc) throw SpillError("random_coeffs: support exceeds alloc");
  std::normal_distribution<double> normal(0.0, 1.0);
  RealCoeffVec out(alloc);
  for (std::size_t n = 0; n < support; ++n) out.set(n, normal(rng));
  out.declare_support(support);
  return out;
}

// --- plain-text serialization ------------------------------------------------
//
//   # field=real K=<int>
//   n <value>            (real)
//   n <re> <im>          (complex)

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename Scalar>
void write_coeffs(std::ostream& os, const CoeffVec<Scalar>& f) {
  os << "# field=" << (is_complex_v<Scalar> ? "complex" : "real") << " K=" << f.support() << '\n';
  for (std::size_t n = 0; n < f.support(); ++n) {
    os << n << ' ';
    if constexpr (is_complex_v<Scalar>) {
      os << format_double(f[n].real()) << ' ' << format_double(f[n].imag());
    } else {
      os << format_double(f[n]);
    }
    os << '\n';
  }
}

using AnyCoeffVec = std::variant<RealCoeffVec, ComplexCoeffVec>;

inline AnyCoeffVec read_coeffs(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("read_coeffs: missing header");
  bool is_complex_field = false;
  std::size_t support = 0;
  {
    std::istringstream hs(line);
    std::string hash, field, kfield;
    if (!(hs >> hash >> field >> kfield) || hash != "#") throw FormatError("read_coeffs: bad header");
    if (field == "field=real") {
      is_complex_field = false;
    } else if (field == "field=complex") {
      is_complex_field = true;
    } else {
      throw FormatError("read_coeffs: unknown field '" + field + "'");
    }
    if (kfield.rfind("K=", 0) != 0) throw FormatError("read_coeffs: missing K=");
    try {
      support = std::stoul(kfield.substr(2));
    } catch (const std::exception&) {
      throw FormatError("read_coeffs: bad K value");
    }
  }
  std::vector<Complex> values(support);
  std::vector<bool> seen(support, false);
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::size_t n = 0;
    double re = 0.0, im = 0.0;
    if (!(ls >> n >> re)) throw FormatError("read_coeffs: malformed line " + std::to_string(line_no));
    if (is_complex_field && !(ls >> im)) {
      throw FormatError("read_coeffs: missing imaginary part on line " + std::to_string(line_no));
    }
    std::string extra;
    if (ls >> extra) throw FormatError("read_coeffs: trailing data on line " + std::to_string(line_no));
    if (n >= support) throw FormatError("read_coeffs: index beyond K on line " + std::to_string(line_no));
    if (seen[n]) throw FormatError("read_coeffs: duplicate index on line " + std::to_string(line_no));
    seen[n] = true;
    values[n] = Complex(re, im);
  }
  if (is_complex_field) {
    auto out = ComplexCoeffVec::from_values(std::move(values));
    out.declare_support(support);
    return out;
  }
  std::vector<double> reals(support);
  for (std::size_t n = 0; n < support; ++n) reals[n] = values[n].real();
  auto out = RealCoeffVec::from_values(std::move(reals));
  out.declare_support(support);
  return out;
}

}  // namespace hsob

#endif  // HSOB_COEFF_VEC_HPP
