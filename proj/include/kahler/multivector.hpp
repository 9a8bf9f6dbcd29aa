#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "kahler/matrix.hpp"
#include "kahler/scalar.hpp"

namespace kahler {

/// Thrown for malformed inputs: mismatched dimensions, wrong degrees, mixed
/// parity where a definite one is required.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A basis blade, stored as a bitset over frame indices 0..2n-1 (bit A set
/// means theta^{A+1} / e_{A+1} is a factor). Canonical order is ascending.
using Blade = std::uint32_t;

inline int degree(Blade b) { return std::popcount(b); }

/// Sign of the permutation sorting the concatenation (a, b) of two ascending
/// index lists: (-1)^{#{(i in a, j in b) : i > j}}. This is the single source
/// of ordering signs for wedge, contraction and the Clifford product.
inline int reorder_sign(Blade a, Blade b) {
  int swaps = 0;
  while (b != 0) {
    int j = std::countr_zero(b);
    swaps += std::popcount(a >> (j + 1));
    b &= b - 1;
  }
  return (swaps & 1) ? -1 : 1;
}

/// theta^A wedge theta^B on blades; sign 0 when they share a factor.
inline int wedge_sign(Blade a, Blade b) { return (a & b) ? 0 : reorder_sign(a, b); }

/// a contracted into b (a^sharp inserted into b): nonzero iff a is a subset of b.
inline int contract_sign(Blade a, Blade b) { return ((a & b) == a) ? reorder_sign(a, b & ~a) : 0; }

/// Clifford product of blades with v.v = -|v|^2.
inline int clifford_sign(Blade a, Blade b) {
  int s = reorder_sign(a, b);
  return (std::popcount(a & b) & 1) ? -s : s;
}

/// Human-readable blade name, e.g. "θ1∧θ3" or "1".
inline std::string blade_name(Blade b, const char* symbol = "θ", const char* join = "∧") {
  if (b == 0) return "1";
  std::string out;
  bool first = true;
  for (int a = 0; b != 0; ++a, b >>= 1) {
    if (!(b & 1u)) continue;
    if (!first) out += join;
    out += symbol + std::to_string(a + 1);
    first = false;
  }
  return out;
}

/// Coefficients over the 4^n blades of the complexified exterior / Clifford
/// algebra on a 2n-dimensional space. The same vector serves both pictures;
/// the operation chosen decides which product applies.
template <Scalar S>
class Multivector {
 public:
  Multivector() = default;
  explicit Multivector(int n) : n_(check_n(n)), coeffs_(std::size_t{1} << (2 * n)) {}
  Multivector(int n, std::vector<S> coeffs) : n_(check_n(n)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != (std::size_t{1} << (2 * n))) throw StructuralError("coefficient vector has wrong length");
  }

  static Multivector scalar(int n, const S& s) {
    Multivector m(n);
    m.coeffs_[0] = s;
    return m;
  }
  static Multivector blade(int n, Blade b, const S& s = S(1)) {
    Multivector m(n);
    m.at(b) = s;
    return m;
  }
  /// Frame vector / coframe element with 0-based index.
  static Multivector basis(int n, int index) { return blade(n, Blade{1} << index); }

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  std::size_t size() const { return coeffs_.size(); }

  S& at(Blade b) { return coeffs_.at(b); }
  const S& at(Blade b) const { return coeffs_.at(b); }
  const std::vector<S>& coeffs() const { return coeffs_; }

  Multivector grade(int k) const {
    Multivector out(n_);
    for (Blade b = 0; b < coeffs_.size(); ++b) {
      if (degree(b) == k) out.coeffs_[b] = coeffs_[b];
    }
    return out;
  }

  /// Entrywise complex conjugate.
  Multivector bar() const {
    Multivector out(*this);
    for (auto& c : out.coeffs_) c = ScalarTraits<S>::conj(c);
    return out;
  }

  bool is_zero(double tol = kDefaultTolerance) const {
    for (const auto& c : coeffs_) {
      if (!ScalarTraits<S>::is_zero(c, tol)) return false;
    }
    return true;
  }

  /// Homogeneous degree, or -1 for zero / mixed elements.
  int homogeneous_degree() const {
    int k = -1;
    for (Blade b = 0; b < coeffs_.size(); ++b) {
      if (coeffs_[b] == S{}) continue;
      if (k == -1) k = degree(b);
      else if (k != degree(b)) return -1;
    }
    return k;
  }

  Multivector& operator+=(const Multivector& o) {
    same_space(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    same_space(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  Multivector& operator*=(const S& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator-(Multivector a) { return a *= S(-1); }
  friend Multivector operator*(const S& s, Multivector a) { return a *= s; }

  friend bool operator==(const Multivector& a, const Multivector& b) = default;

  void same_space(const Multivector& o) const {
    if (o.n_ != n_) throw StructuralError("multivectors live on different spaces");
  }

  std::string str(const char* symbol = "θ", const char* join = "∧") const {
    std::string out;
    for (Blade b = 0; b < coeffs_.size(); ++b) {
      if (coeffs_[b] == S{}) continue;
      if (!out.empty()) out += " + ";
      out += "(" + ScalarTraits<S>::str(coeffs_[b]) + ")";
      if (b != 0) out += blade_name(b, symbol, join);
    }
    return out.empty() ? "0" : out;
  }

 private:
  static int check_n(int n) {
    if (n < 1 || n > 6) throw StructuralError("half-dimension must be between 1 and 6");
    return n;
  }

  int n_ = 0;
  std::vector<S> coeffs_;
};

namespace detail {

template <Scalar S, class SignFn>
Multivector<S> blade_bilinear(const Multivector<S>& a, const Multivector<S>& b, SignFn sign, bool conj_left) {
  a.same_space(b);
  Multivector<S> out(a.n());
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  for (Blade x = 0; x < ca.size(); ++x) {
    if (ca[x] == S{}) continue;
    S ax = conj_left ? ScalarTraits<S>::conj(ca[x]) : ca[x];
    for (Blade y = 0; y < cb.size(); ++y) {
      if (cb[y] == S{}) continue;
      auto [s, target] = sign(x, y);
      if (s == 0) continue;
      S term = ax * cb[y];
      if (s < 0) out.at(target) -= term;
      else out.at(target) += term;
    }
  }
  return out;
}

}  // namespace detail

template <Scalar S>
Multivector<S> wedge(const Multivector<S>& a, const Multivector<S>& b) {
  return detail::blade_bilinear(
      a, b, [](Blade x, Blade y) { return std::pair{wedge_sign(x, y), x | y}; }, false);
}

/// Left contraction a ⌟ b, complex-linear in both slots; it is the transpose of
/// wedge-by-a and satisfies <a ⌟ b, c> = <b, bar(a) ∧ c>.
template <Scalar S>
Multivector<S> contract(const Multivector<S>& a, const Multivector<S>& b) {
  return detail::blade_bilinear(
      a, b, [](Blade x, Blade y) { return std::pair{contract_sign(x, y), y & ~x}; }, false);
}

template <Scalar S>
Multivector<S> clifford_mul(const Multivector<S>& a, const Multivector<S>& b) {
  return detail::blade_bilinear(
      a, b, [](Blade x, Blade y) { return std::pair{clifford_sign(x, y), x ^ y}; }, false);
}

/// Sesquilinear: conjugate-linear in the second slot.
template <Scalar S>
S inner(const Multivector<S>& a, const Multivector<S>& b) {
  a.same_space(b);
  S acc{};
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a.coeffs()[k] == S{} || b.coeffs()[k] == S{}) continue;
    acc += a.coeffs()[k] * ScalarTraits<S>::conj(b.coeffs()[k]);
  }
  return acc;
}

/// Musical isomorphisms. In the canonical blade basis both are the identity on
/// coefficients; they exist so that call sites say which picture they mean.
template <Scalar S>
Multivector<S> flat(const Multivector<S>& a) {
  return a;
}
template <Scalar S>
Multivector<S> sharp(const Multivector<S>& a) {
  return a;
}

/// Evaluate a k-form on k vectors with the determinant convention
/// (θ^1∧θ^2)(e_1, e_2) = 1. Vectors are given as degree-1 multivectors.
template <Scalar S>
S evaluate(const Multivector<S>& form, const std::type_identity_t<std::vector<Multivector<S>>>& vectors) {
  Multivector<S> acc = form;
  for (const auto& v : vectors) acc = contract(v, acc);
  return acc.at(0);
}

/// Hodge star with orientation θ^1∧…∧θ^{2n}: α ∧ ⋆β = <α, β> vol on real blades.
template <Scalar S>
Multivector<S> hodge_star(const Multivector<S>& a) {
  Multivector<S> out(a.n());
  const Blade all = static_cast<Blade>(a.size() - 1);
  for (Blade b = 0; b < a.size(); ++b) {
    if (a.at(b) == S{}) continue;
    Blade c = all & ~b;
    if (reorder_sign(b, c) < 0) out.at(c) -= a.at(b);
    else out.at(c) += a.at(b);
  }
  return out;
}

/// Column-wise matrix of a linear map on multivectors.
template <Scalar S>
Matrix<S> matrix_of(int n, const std::function<Multivector<S>(const Multivector<S>&)>& f) {
  const std::size_t dim = std::size_t{1} << (2 * n);
  Matrix<S> m(dim);
  for (Blade b = 0; b < dim; ++b) {
    Multivector<S> col = f(Multivector<S>::blade(n, b));
    for (std::size_t r = 0; r < dim; ++r) {
      if (!(col.coeffs()[r] == S{})) m(r, b) = col.coeffs()[r];
    }
  }
  return m;
}

template <Scalar S>
Multivector<S> act(const Matrix<S>& m, const Multivector<S>& v) {
  if (m.dim() != v.size()) throw StructuralError("operator and multivector dimensions differ");
  return Multivector<S>(v.n(), m.apply(v.coeffs()));
}

/// Which product a structure extension is taken over.
enum class Picture { exterior, clifford };

inline const char* picture_name(Picture p) { return p == Picture::exterior ? "exterior" : "clifford"; }

template <Scalar S>
Multivector<S> product(Picture p, const Multivector<S>& a, const Multivector<S>& b) {
  return p == Picture::exterior ? wedge(a, b) : clifford_mul(a, b);
}

/// A linear map on degree-1 elements as a 2n×2n matrix: column A holds the
/// image of the A-th frame vector / coframe element.
template <Scalar S>
using FrameMap = std::vector<std::vector<S>>;

template <Scalar S>
Multivector<S> apply_frame_map(int n, const FrameMap<S>& t, int column) {
  Multivector<S> v(n);
  for (int r = 0; r < 2 * n; ++r) v.at(Blade{1} << r) = t[r][column];
  return v;
}

/// Extend a frame map multiplicatively: e_{a1}…e_{ak} ↦ T e_{a1} ⋆ … ⋆ T e_{ak}.
template <Scalar S>
Matrix<S> extend_algebra_map(int n, const FrameMap<S>& t, Picture p) {
  return matrix_of<S>(n, [&](const Multivector<S>& blade_vec) {
    Blade b = 0;
    for (Blade k = 0; k < blade_vec.size(); ++k) {
      if (!(blade_vec.at(k) == S{})) b = k;
    }
    Multivector<S> acc = Multivector<S>::scalar(n, S(1));
    for (int a = 0; a < 2 * n; ++a) {
      if (b & (Blade{1} << a)) acc = product(p, acc, apply_frame_map(n, t, a));
    }
    return acc;
  });
}

/// Extend a frame map as a degree-0 derivation: sum over single-factor replacements.
template <Scalar S>
Matrix<S> extend_derivation(int n, const FrameMap<S>& t, Picture p) {
  return matrix_of<S>(n, [&](const Multivector<S>& blade_vec) {
    Blade b = 0;
    for (Blade k = 0; k < blade_vec.size(); ++k) {
      if (!(blade_vec.at(k) == S{})) b = k;
    }
    Multivector<S> total(n);
    for (int j = 0; j < 2 * n; ++j) {
      if (!(b & (Blade{1} << j))) continue;
      Multivector<S> acc = Multivector<S>::scalar(n, S(1));
      for (int a = 0; a < 2 * n; ++a) {
        if (!(b & (Blade{1} << a))) continue;
        acc = product(p, acc, a == j ? apply_frame_map(n, t, a) : Multivector<S>::basis(n, a));
      }
      total += acc;
    }
    return total;
  });
}

}  // namespace kahler
