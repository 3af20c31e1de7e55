#ifndef HSOB_OPERATORS_HPP
#define HSOB_OPERATORS_HPP

// Coefficient-space operators materialized as N x N matrices with band
// bookkeeping.
//
// In the Hermite basis
//
//   (D phi)_n = sqrt((n+1)/2) phi_{n+1} - sqrt(n/2) phi_{n-1}
//   (X phi)_n = sqrt((n+1)/2) phi_{n+1} + sqrt(n/2) phi_{n-1}
//
// so D and X are tridiagonal and every polynomial expression in them is
// banded. An operator with growth g maps support K to support <= K + g; as long
// as K + g <= N the truncated matrix reproduces the infinite one exactly on
// that input. Inputs that would push coefficients past N raise SpillError
// rather than being silently truncated.

#include <algorithm>
#include <climits>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "hsob/coeff_vec.hpp"
#include "hsob/hermite.hpp"
#include "hsob/multiplier.hpp"
#include "hsob/sequences.hpp"

namespace hsob {

inline constexpr int kUnbounded = INT_MAX / 4;

template <typename Scalar>
class BandedOp {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  BandedOp() = default;

  /// `growth`: support increase; `range`: hard cap on output support
  /// (kUnbounded for exact banded operators, the compression size for
  /// quadrature compressions); `exact_domain`: largest input support handled
  /// without spill.
  BandedOp(Matrix m, int lower, int upper, int growth, int range, int exact_domain)
      : m_(std::move(m)),
        lower_(lower),
        upper_(upper),
        growth_(growth),
        range_(range),
        exact_domain_(exact_domain) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("BandedOp: matrix must be square");
  }

  /// Exact banded operator: domain N - growth.
  static BandedOp banded(Matrix m, int lower, int upper, int growth) {
    const int n = static_cast<int>(m.rows());
    return BandedOp(std::move(m), lower, upper, growth, kUnbounded, std::max(0, n - growth));
  }

  static BandedOp zero(int n) { return banded(Matrix::Zero(n, n), 0, 0, 0); }
  static BandedOp identity(int n) { return banded(Matrix::Identity(n, n), 0, 0, 0); }

  int alloc() const { return static_cast<int>(m_.rows()); }
  int lower() const { return lower_; }
  int upper() const { return upper_; }
  int band_growth() const { return growth_; }
  int range() const { return range_; }
  int exact_domain() const { return exact_domain_; }
  const Matrix& matrix() const { return m_; }
  Scalar operator()(int i, int j) const { return m_(i, j); }

  /// Output support bound for an input of support k.
  int output_support(int k) const {
    const long long grown = static_cast<long long>(k) + growth_;
    return static_cast<int>(std::min<long long>({grown, range_, alloc()}));
  }

  template <typename In>
  auto apply(const CoeffVec<In>& f) const {
    using Out = decltype(Scalar{} * In{});
    const int k = static_cast<int>(f.support());
    if (static_cast<int>(f.alloc()) != alloc()) {
      throw std::invalid_argument("BandedOp::apply: alloc mismatch (" + std::to_string(f.alloc()) +
                                  " vs " + std::to_string(alloc()) + ")");
    }
    if (k > exact_domain_) {
      throw SpillError("BandedOp::apply: input support " + std::to_string(k) +
                       " exceeds exact domain " + std::to_string(exact_domain_));
    }
    const int n = alloc();
    const int out_k = output_support(k);
    std::vector<Out> values(static_cast<std::size_t>(n), Out{});
    for (int i = 0; i < out_k; ++i) {
      const int j_lo = std::max(0, i - lower_);
      const int j_hi = std::min(k - 1, i + upper_);
      Out acc{};
      for (int j = j_lo; j <= j_hi; ++j) acc += m_(i, j) * f[static_cast<std::size_t>(j)];
      values[static_cast<std::size_t>(i)] = acc;
    }
    auto out = CoeffVec<Out>::from_values(std::move(values));
    out.declare_support(static_cast<std::size_t>(std::max(out_k, static_cast<int>(out.actual_support()))));
    return out;
  }

  BandedOp<Complex> to_complex() const {
    return BandedOp<Complex>(m_.template cast<Complex>(), lower_, upper_, growth_, range_,
                             exact_domain_);
  }

  /// Leading n x n block. The block of an exact banded operator is the
  /// operator built directly at alloc n.
  BandedOp leading_block(int n) const {
    if (n > alloc()) throw std::invalid_argument("leading_block: size exceeds alloc");
    const int dom = std::min(exact_domain_, range_ == kUnbounded ? n - growth_ : n);
    return BandedOp(m_.topLeftCorner(n, n), std::min(lower_, n - 1), std::min(upper_, n - 1),
                    growth_, range_ == kUnbounded ? kUnbounded : std::min(range_, n), std::max(0, dom));
  }

  BandedOp adjoint() const {
    // The adjoint of a truncated banded matrix is only meaningful as a matrix.
    return BandedOp(m_.adjoint(), upper_, lower_, upper_, range_, exact_domain_);
  }

  BandedOp& operator*=(Scalar s) {
    m_ *= s;
    return *this;
  }
  friend BandedOp operator*(Scalar s, BandedOp op) { return op *= s; }
  BandedOp operator-() const { return Scalar{-1} * *this; }

  friend BandedOp operator+(const BandedOp& a, const BandedOp& b) {
    check_same_alloc(a, b);
    return BandedOp(a.m_ + b.m_, std::max(a.lower_, b.lower_), std::max(a.upper_, b.upper_),
                    std::max(a.growth_, b.growth_), std::max(a.range_, b.range_),
                    std::min(a.exact_domain_, b.exact_domain_));
  }
  friend BandedOp operator-(const BandedOp& a, const BandedOp& b) { return a + (-b); }

  /// Composition a o b (b applied first).
  friend BandedOp operator*(const BandedOp& a, const BandedOp& b) {
    check_same_alloc(a, b);
    const int n = a.alloc();
    const int growth = static_cast<int>(std::min<long long>(static_cast<long long>(a.growth_) + b.growth_, kUnbounded));
    const int range = b.range_ == kUnbounded
                          ? a.range_
                          : static_cast<int>(std::min<long long>(a.range_, static_cast<long long>(b.range_) + a.growth_));
    // b's outputs must land inside a's exact domain
    int domain = b.exact_domain_;
    if (b.range_ > a.exact_domain_) domain = std::min(domain, a.exact_domain_ - b.growth_);
    const int lower = std::min(a.lower_ + b.lower_, n - 1);
    const int upper = std::min(a.upper_ + b.upper_, n - 1);
    return BandedOp(banded_product(a, b), lower, upper, growth, range, std::max(0, domain));
  }

 private:
  static Matrix banded_product(const BandedOp& a, const BandedOp& b) {
    const int n = a.alloc();
    if (a.lower_ + a.upper_ + b.lower_ + b.upper_ + 2 > n / 4) return a.m_ * b.m_;
    Matrix out = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int k = std::max(0, i - a.lower_); k <= std::min(n - 1, i + a.upper_); ++k) {
        const Scalar aik = a.m_(i, k);
        if (aik == Scalar{}) continue;
        for (int j = std::max(0, k - b.lower_); j <= std::min(n - 1, k + b.upper_); ++j) out(i, j) += aik * b.m_(k, j);
      }
    }
    return out;
  }

  static void check_same_alloc(const BandedOp& a, const BandedOp& b) {
    if (a.alloc() != b.alloc()) throw std::invalid_argument("BandedOp: alloc mismatch");
  }

  Matrix m_;
  int lower_ = 0;
  int upper_ = 0;
  int growth_ = 0;
  int range_ = kUnbounded;
  int exact_domain_ = 0;
};

using RealOp = BandedOp<double>;
using ComplexOp = BandedOp<Complex>;

inline ComplexOp to_complex(const RealOp& op) { return op.to_complex(); }
inline ComplexOp to_complex(const ComplexOp& op) { return op; }

// --- elementary operators ----------------------------------------------------

inline RealOp derivative_op(int n) {
  if (n < 1) throw std::invalid_argument("derivative_op: N must be >= 1");
  RealOp::Matrix m = RealOp::Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (i + 1 < n) m(i, i + 1) = std::sqrt(0.5 * (i + 1));
    if (i >= 1) m(i, i - 1) = -std::sqrt(0.5 * i);
  }
  return RealOp::banded(std::move(m), 1, 1, 1);
}

inline RealOp position_op(int n) {
  if (n < 1) throw std::invalid_argument("position_op: N must be >= 1");
  RealOp::Matrix m = RealOp::Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (i + 1 < n) m(i, i + 1) = std::sqrt(0.5 * (i + 1));
    if (i >= 1) m(i, i - 1) = std::sqrt(0.5 * i);
  }
  return RealOp::banded(std::move(m), 1, 1, 1);
}

/// P_R M_f P_R via quadrature, zero-padded to n x n.
inline RealOp compression_op(const std::function<double(double)>& f, int order, int n, int range) {
  if (range < 1 || range > n) throw std::invalid_argument("compression_op: bad compression size");
  if (order < 2 * n) {
    throw std::invalid_argument("multiplier_op: sampled quadrature order " + std::to_string(order) +
                                " is below 2N = " + std::to_string(2 * n));
  }
  const QuadratureRule rule = gauss_hermite(order);
  const Eigen::MatrixXd basis = weighted_basis(range, rule);
  Eigen::VectorXd fx(order);
  for (int j = 0; j < order; ++j) fx[j] = f(rule.nodes[static_cast<std::size_t>(j)]);
  RealOp::Matrix m = RealOp::Matrix::Zero(n, n);
  m.topLeftCorner(range, range) = basis * fx.asDiagonal() * basis.transpose();
  m = 0.5 * (m + m.transpose()).eval();
  return RealOp(std::move(m), n - 1, n - 1, kUnbounded, range, n);
}

/// Multiplication by the multiplier. Affine and polynomial kinds are exact
/// (band = degree); sampled kinds give the quadrature compression of size
/// `range` (default n).
inline RealOp multiplier_op(const MultiplierSpec& spec, int n, int range = -1) {
  if (n < 1) throw std::invalid_argument("multiplier_op: N must be >= 1");
  if (const auto* s = std::get_if<SampledMultiplier>(&spec.kind())) {
    return compression_op(s->fn, s->order, n, range < 0 ? n : range);
  }
  const auto coeffs = *spec.polynomial_coeffs();
  RealOp acc = RealOp::zero(n);
  if (coeffs.empty()) return acc;
  // Horner in X
  const RealOp x = position_op(n);
  acc = coeffs.back() * RealOp::identity(n);
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) acc = x * acc + coeffs[k] * RealOp::identity(n);
  return acc;
}

/// A* phi = -D(sigma phi).
inline RealOp a_star(const MultiplierSpec& sigma, int n) {
  return -(derivative_op(n) * multiplier_op(sigma, n, n - 1));
}

/// L* phi = 1/2 D^2(sigma^2 phi) - D(b phi).
inline RealOp l_star(const MultiplierSpec& sigma, const MultiplierSpec& b, int n) {
  const RealOp d = derivative_op(n);
  const RealOp sigma_sq = multiplier_op(sigma.squared(), n, n - 2);
  return 0.5 * (d * (d * sigma_sq)) - d * multiplier_op(b, n, n - 1);
}

/// U_{+k} (k > 0): phi_n <- phi_{n+k}; U_{-k} (k < 0): phi_n <- phi_{n-|k|}.
inline RealOp shift_op(int k, int n) {
  if (k == 0) throw std::invalid_argument("shift_op: k must be nonzero");
  RealOp::Matrix m = RealOp::Matrix::Zero(n, n);
  const int s = std::abs(k);
  for (int i = 0; i < n; ++i) {
    const int j = k > 0 ? i + s : i - s;
    if (j >= 0 && j < n) m(i, j) = 1.0;
  }
  if (k > 0) return RealOp::banded(std::move(m), 0, s, 0);
  return RealOp::banded(std::move(m), s, 0, s);
}

/// Diagonal scaling T_s(w): phi_n <- s_n(w) phi_n.
inline ComplexOp diag_scale_op(SequenceName fam, Complex w, int n) {
  ComplexOp::Matrix m = ComplexOp::Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = seq_entry(fam, w, static_cast<std::size_t>(i));
  return ComplexOp::banded(std::move(m), 0, 0, 0);
}

/// H^w as a diagonal operator.
inline ComplexOp hermite_power_op(Complex w, int n) {
  ComplexOp::Matrix m = ComplexOp::Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = hermite_eigen_power(static_cast<std::size_t>(i), w);
  return ComplexOp::banded(std::move(m), 0, 0, 0);
}

/// T = T_{alpha~(2q)} U_{-1} + T_{beta~(2q)} U_{+1}, the bounded part of the
/// q-adjoint of D: D* = -D + T.
inline ComplexOp adjoint_correction_op(double q, int n) {
  const Complex w(2.0 * q, 0.0);
  return diag_scale_op(SequenceName::AlphaTilde, w, n) * to_complex(shift_op(-1, n)) +
         diag_scale_op(SequenceName::BetaTilde, w, n) * to_complex(shift_op(+1, n));
}

/// <phi, D psi>_q + <D phi, psi>_q - <phi, T psi>_q; zero up to rounding.
template <typename Scalar>
Complex adjoint_defect(double q, const CoeffVec<Scalar>& phi, const CoeffVec<Scalar>& psi) {
  const int n = static_cast<int>(std::max(phi.alloc(), psi.alloc()));
  const ComplexCoeffVec f = embed(pad(phi, static_cast<std::size_t>(n)));
  const ComplexCoeffVec g = embed(pad(psi, static_cast<std::size_t>(n)));
  const ComplexOp d = to_complex(derivative_op(n));
  const ComplexOp t = adjoint_correction_op(q, n);
  return inner_p(f, d.apply(g), q) + inner_p(d.apply(f), g, q) - inner_p(f, t.apply(g), q);
}

// --- commutators with H^w ----------------------------------------------------

/// H^w B H^{-w} - B built by composing diagonal powers with B.
template <typename Scalar>
ComplexOp conjugation_commutator(Complex w, const BandedOp<Scalar>& b) {
  const int n = b.alloc();
  const ComplexOp cb = to_complex(b);
  return hermite_power_op(w, n) * cb * hermite_power_op(-w, n) - cb;
}

/// Same operator, formed entrywise as ((2i+1)^w (2j+1)^{-w} - 1) B_ij.
template <typename Scalar>
ComplexOp conjugation_commutator_entrywise(Complex w, const BandedOp<Scalar>& b) {
  const int n = b.alloc();
  std::vector<Complex> pw(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pw[static_cast<std::size_t>(i)] = hermite_eigen_power(static_cast<std::size_t>(i), w);
  ComplexOp::Matrix m = ComplexOp::Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = std::max(0, j - b.upper()); i <= std::min(n - 1, j + b.lower()); ++i) {
      if (b(i, j) == Scalar{}) continue;
      m(i, j) = (pw[static_cast<std::size_t>(i)] / pw[static_cast<std::size_t>(j)] - 1.0) * Complex(b(i, j));
    }
  }
  return ComplexOp(std::move(m), b.lower(), b.upper(), b.band_growth(), b.range(), b.exact_domain());
}

/// H^w D H^{-w} - D by matrix composition.
inline ComplexOp commutator_Hw_partial(Complex w, int n) {
  return conjugation_commutator(w, derivative_op(n));
}

/// Closed form -(T_{alpha~(-w)} U_{-1} + T_{beta~(-w)} U_{+1}) of the same
/// operator. The overall minus sign is the one the composition reproduces.
inline ComplexOp commutator_Hw_partial_closed_form(Complex w, int n) {
  return -(diag_scale_op(SequenceName::AlphaTilde, -w, n) * to_complex(shift_op(-1, n)) +
           diag_scale_op(SequenceName::BetaTilde, -w, n) * to_complex(shift_op(+1, n)));
}

enum class CommutatorKind {
  D2,    // H^w D^2 H^-w - D^2
  XD,    // H^w XD H^-w - XD
  D2X,   // H^w D^2 X H^-w - D^2 X
  D2X2,  // H^w D^2 X^2 H^-w - D^2 X^2
  Mix1,  // 2 [D^2 X^2] - 2 XD [DX]
  Mix2,  // [D^2 X] - XD [D] - D [DX]
};

inline CommutatorKind parse_commutator_kind(std::string_view name) {
  if (name == "d2") return CommutatorKind::D2;
  if (name == "xd") return CommutatorKind::XD;
  if (name == "d2x") return CommutatorKind::D2X;
  if (name == "d2x2") return CommutatorKind::D2X2;
  if (name == "mix1") return CommutatorKind::Mix1;
  if (name == "mix2") return CommutatorKind::Mix2;
  throw std::invalid_argument("unknown commutator kind '" + std::string(name) + "'");
}

/// Finite section (leading n x n block) of the commutator family member. The
/// composition is carried out at n + 8 so that no product is truncated inside
/// the block.
inline ComplexOp commutator_family(CommutatorKind kind, Complex w, int n) {
  const int big = n + 8;
  const RealOp d = derivative_op(big);
  const RealOp x = position_op(big);
  const ComplexOp cd = to_complex(d);
  const ComplexOp cx = to_complex(x);
  auto comm = [&](const RealOp& b) { return conjugation_commutator_entrywise(w, b); };
  ComplexOp full;
  switch (kind) {
    case CommutatorKind::D2: full = comm(d * d); break;
    case CommutatorKind::XD: full = comm(x * d); break;
    case CommutatorKind::D2X: full = comm(d * d * x); break;
    case CommutatorKind::D2X2: full = comm(d * d * x * x); break;
    case CommutatorKind::Mix1:
      full = Complex(2.0) * comm(d * d * x * x) - Complex(2.0) * (cx * cd * comm(d * x));
      break;
    case CommutatorKind::Mix2:
      full = comm(d * d * x) - cx * cd * comm(d) - cd * comm(d * x);
      break;
  }
  return full.leading_block(n);
}

/// Largest singular value of the materialized matrix (finite-section norm).
template <typename Scalar>
double finite_section_norm(const BandedOp<Scalar>& op) {
  using Matrix = typename BandedOp<Scalar>::Matrix;
  const Matrix gram = op.matrix().adjoint() * op.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("finite_section_norm: eigen-solve failed");
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

}  // namespace hsob

#endif  // HSOB_OPERATORS_HPP
