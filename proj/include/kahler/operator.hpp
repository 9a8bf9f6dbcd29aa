#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "kahler/bigrading.hpp"
#include "kahler/matrix.hpp"
#include "kahler/multivector.hpp"
#include "kahler/structure.hpp"

namespace kahler {

enum class Parity { even, odd, mixed };

inline const char* parity_name(Parity p) {
  switch (p) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    default: return "mixed";
  }
}

/// ℤ₂ behaviour of a matrix on the blade basis. The zero matrix counts as even.
template <Scalar S>
Parity parity_of(const Matrix<S>& m, double tol = kDefaultTolerance) {
  bool preserves = false, flips = false;
  for (Blade r = 0; r < m.dim(); ++r) {
    for (Blade c = 0; c < m.dim(); ++c) {
      if (ScalarTraits<S>::is_zero(m(r, c), tol)) continue;
      if ((degree(r) ^ degree(c)) & 1) flips = true;
      else preserves = true;
    }
  }
  if (preserves && flips) return Parity::mixed;
  return flips ? Parity::odd : Parity::even;
}

/// A named operator on the 4^n-dimensional space together with the picture it
/// acts in, which decides whether conjugation uses J_a or J_a*.
template <Scalar S>
struct LinearOperator {
  std::string name;
  Matrix<S> matrix;
  Picture picture = Picture::exterior;
  std::optional<Bidegree> declared_bidegree;

  Parity parity(double tol = kDefaultTolerance) const { return parity_of(matrix, tol); }
  bool is_zero(double tol = kDefaultTolerance) const { return matrix.is_zero(tol); }
};

template <Scalar S>
LinearOperator<S> make_operator(std::string name, Matrix<S> m, Picture p = Picture::exterior,
                                std::optional<Bidegree> bideg = std::nullopt) {
  return {std::move(name), std::move(m), p, bideg};
}

/// Split into even and odd parts (the natural ℤ₂ projection).
template <Scalar S>
std::pair<Matrix<S>, Matrix<S>> split_parity(const Matrix<S>& m) {
  Matrix<S> even(m.dim()), odd(m.dim());
  for (Blade r = 0; r < m.dim(); ++r) {
    for (Blade c = 0; c < m.dim(); ++c) {
      if (m(r, c) == S{}) continue;
      if ((degree(r) ^ degree(c)) & 1) odd(r, c) = m(r, c);
      else even(r, c) = m(r, c);
    }
  }
  return {even, odd};
}

/// [P, Q] = PQ - (-1)^{|P||Q|} QP. Both operands need a definite parity.
template <Scalar S>
Matrix<S> supercommutator(const Matrix<S>& p, const Matrix<S>& q, double tol = kDefaultTolerance) {
  Parity pp = parity_of(p, tol), pq = parity_of(q, tol);
  if (pp == Parity::mixed || pq == Parity::mixed) {
    throw StructuralError("supercommutator needs operands of definite parity; split the mixed operand first");
  }
  Matrix<S> pq_prod = p * q;
  Matrix<S> qp_prod = q * p;
  if (pp == Parity::odd && pq == Parity::odd) return pq_prod + qp_prod;
  return pq_prod - qp_prod;
}

template <Scalar S>
LinearOperator<S> supercommutator(const LinearOperator<S>& p, const LinearOperator<S>& q,
                                  double tol = kDefaultTolerance) {
  if (p.picture != q.picture) throw StructuralError("supercommutator of operators from different pictures");
  std::optional<Bidegree> bd;
  if (p.declared_bidegree && q.declared_bidegree) {
    bd = Bidegree{p.declared_bidegree->first + q.declared_bidegree->first,
                  p.declared_bidegree->second + q.declared_bidegree->second};
  }
  return {"[" + p.name + ", " + q.name + "]", supercommutator(p.matrix, q.matrix, tol), p.picture, bd};
}

template <Scalar S>
LinearOperator<S> adjoint(const LinearOperator<S>& p) {
  std::optional<Bidegree> bd;
  if (p.declared_bidegree) bd = Bidegree{-p.declared_bidegree->first, -p.declared_bidegree->second};
  return {p.name + "*", p.matrix.adjoint(), p.picture, bd};
}

/// P^c = J_a^{-1} ∘ P ∘ J_a, with J_a or J_a* chosen by picture.
template <Scalar S>
Matrix<S> conjugate(const AdaptedStructure<S>& js, const Matrix<S>& m, Picture p) {
  return js.algebra_map_inverse(p) * m * js.algebra_map(p);
}

template <Scalar S>
LinearOperator<S> conjugate(const AdaptedStructure<S>& js, const LinearOperator<S>& p) {
  return {p.name + "^c", conjugate(js, p.matrix, p.picture), p.picture, p.declared_bidegree};
}

/// ♭∘P∘♯: the identity on matrices with the picture flipped to exterior.
template <Scalar S>
LinearOperator<S> transport(const LinearOperator<S>& p) {
  if (p.picture != Picture::clifford) throw StructuralError("transport expects a Clifford-picture operator");
  return {"♭" + p.name + "♯", p.matrix, Picture::exterior, std::nullopt};
}

/// Nonzero pure-bidegree components of an exterior operator.
template <Scalar S>
std::map<Bidegree, Matrix<S>> bidegree_decompose(const Bigrading<S>& bg, const Matrix<S>& m,
                                                 double tol = kDefaultTolerance) {
  return bg.decompose(m, tol);
}

template <Scalar S>
std::set<Bidegree> measured_bidegrees(const Bigrading<S>& bg, const Matrix<S>& m, double tol = kDefaultTolerance) {
  std::set<Bidegree> out;
  for (const auto& [bd, part] : bg.decompose(m, tol)) out.insert(bd);
  return out;
}

/// Left and right multiplication operators.
template <Scalar S>
Matrix<S> ext_mult(const Multivector<S>& phi) {
  return matrix_of<S>(phi.n(), [&](const Multivector<S>& x) { return wedge(phi, x); });
}

/// Contraction by φ^♯, complex-linear in φ. For real φ this is adjoint(E_φ).
template <Scalar S>
Matrix<S> int_mult(const Multivector<S>& phi) {
  return matrix_of<S>(phi.n(), [&](const Multivector<S>& x) { return contract(phi, x); });
}

template <Scalar S>
Matrix<S> clifford_left(const Multivector<S>& x) {
  return matrix_of<S>(x.n(), [&](const Multivector<S>& y) { return clifford_mul(x, y); });
}

template <Scalar S>
Matrix<S> clifford_right(const Multivector<S>& x) {
  return matrix_of<S>(x.n(), [&](const Multivector<S>& y) { return clifford_mul(y, x); });
}

/// r_ξ(φ) = Σ_A (e_A ⌟ ξ) ∧ (e_A ⌟ φ) for a 3-form ξ.
template <Scalar S>
Matrix<S> r_xi(const Multivector<S>& xi) {
  if (xi.homogeneous_degree() != 3 && !xi.is_zero(0.0)) throw StructuralError("r_xi needs a 3-form");
  const int n = xi.n();
  Matrix<S> out(std::size_t{1} << (2 * n));
  for (int a = 0; a < 2 * n; ++a) {
    auto ea = Multivector<S>::basis(n, a);
    out += ext_mult(contract(ea, xi)) * int_mult(ea);
  }
  return out;
}

/// Σ_C (e_C ⌟ ξ) ∧ (J e_C ⌟ ψ), the derivation part of [Λ, E_ξ] for odd ξ.
template <Scalar S>
Matrix<S> twisted_contraction(const Multivector<S>& xi) {
  const int n = xi.n();
  Matrix<S> out(std::size_t{1} << (2 * n));
  for (int c = 0; c < 2 * n; ++c) {
    auto ec = Multivector<S>::basis(n, c);
    auto img = j_of_frame(n, c);
    auto jec = S(img.sign) * Multivector<S>::basis(n, img.target);
    out += ext_mult(contract(ec, xi)) * int_mult(jec);
  }
  return out;
}

}  // namespace kahler
