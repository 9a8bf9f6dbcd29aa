#pragma once

#include <utility>

#include "kahler/matrix.hpp"
#include "kahler/multivector.hpp"

namespace kahler {

/// J e_A = sign * e_{target} for the adapted frame (J e_i = e_{i+n},
/// J e_{i+n} = -e_i, 0-based).
struct FrameImage {
  int target;
  int sign;
};

inline FrameImage j_of_frame(int n, int a) {
  if (a < n) return {a + n, 1};
  return {a - n, -1};
}

/// J acting on frame vectors.
template <Scalar S>
FrameMap<S> j_frame_map(int n) {
  FrameMap<S> t(2 * n, std::vector<S>(2 * n));
  for (int a = 0; a < 2 * n; ++a) {
    auto img = j_of_frame(n, a);
    t[img.target][a] = S(img.sign);
  }
  return t;
}

/// J* acting on the coframe: J*θ^i = -θ^{i+n}, J*θ^{i+n} = θ^i.
template <Scalar S>
FrameMap<S> jstar_coframe_map(int n) {
  FrameMap<S> t(2 * n, std::vector<S>(2 * n));
  for (int i = 0; i < n; ++i) {
    t[i + n][i] = S(-1);
    t[i][i + n] = S(1);
  }
  return t;
}

template <Scalar S>
FrameMap<S> negate(FrameMap<S> t) {
  for (auto& row : t) {
    for (auto& v : row) v = -v;
  }
  return t;
}

/// Grade involution (-1)^k on degree-k blades.
template <Scalar S>
Matrix<S> parity_operator(int n) {
  const std::size_t dim = std::size_t{1} << (2 * n);
  Matrix<S> m(dim);
  for (Blade b = 0; b < dim; ++b) m(b, b) = S((degree(b) & 1) ? -1 : 1);
  return m;
}

/// Orthogonal projection onto degree k.
template <Scalar S>
Matrix<S> degree_projector(int n, int k) {
  const std::size_t dim = std::size_t{1} << (2 * n);
  Matrix<S> m(dim);
  for (Blade b = 0; b < dim; ++b) {
    if (degree(b) == k) m(b, b) = S(1);
  }
  return m;
}

/// Embed a frame map as an operator acting only on degree-1 elements.
template <Scalar S>
Matrix<S> degree_one_operator(int n, const FrameMap<S>& t) {
  const std::size_t dim = std::size_t{1} << (2 * n);
  Matrix<S> m(dim);
  for (int r = 0; r < 2 * n; ++r) {
    for (int c = 0; c < 2 * n; ++c) m(Blade{1} << r, Blade{1} << c) = t[r][c];
  }
  return m;
}

/// The almost complex structure and all of its extensions, in both pictures.
/// Clifford-side matrices use J on vectors and the Clifford product;
/// exterior-side matrices use J* on the coframe and the wedge product.
template <Scalar S>
struct AdaptedStructure {
  int n = 0;
  FrameMap<S> j_vectors;
  FrameMap<S> jstar_coframe;

  Matrix<S> j_vector;      // J on degree-1 Clifford elements only
  Matrix<S> jstar_vector;  // J* on 1-forms only
  Matrix<S> ja_cl, ja_cl_inv, jd_cl;
  Matrix<S> ja, ja_inv, jd;  // exterior J_a*, (J_a*)^{-1}, J_d*
  Matrix<S> parity;

  explicit AdaptedStructure(int half_dim) : n(half_dim) {
    j_vectors = j_frame_map<S>(n);
    jstar_coframe = jstar_coframe_map<S>(n);
    j_vector = degree_one_operator(n, j_vectors);
    jstar_vector = degree_one_operator(n, jstar_coframe);
    ja_cl = extend_algebra_map(n, j_vectors, Picture::clifford);
    ja_cl_inv = extend_algebra_map(n, negate(j_vectors), Picture::clifford);
    jd_cl = extend_derivation(n, j_vectors, Picture::clifford);
    ja = extend_algebra_map(n, jstar_coframe, Picture::exterior);
    ja_inv = extend_algebra_map(n, negate(jstar_coframe), Picture::exterior);
    jd = extend_derivation(n, jstar_coframe, Picture::exterior);
    parity = parity_operator<S>(n);
  }

  const Matrix<S>& algebra_map(Picture p) const { return p == Picture::exterior ? ja : ja_cl; }
  const Matrix<S>& algebra_map_inverse(Picture p) const { return p == Picture::exterior ? ja_inv : ja_cl_inv; }
  const Matrix<S>& derivation(Picture p) const { return p == Picture::exterior ? jd : jd_cl; }

  Multivector<S> j_vector_apply(const Multivector<S>& a) const { return act(j_vector, a); }
  Multivector<S> j_algebra(const Multivector<S>& a, Picture p) const { return act(algebra_map(p), a); }
  Multivector<S> j_derivation(const Multivector<S>& a, Picture p) const { return act(derivation(p), a); }

  /// ω = Σ θ^i ∧ θ^{i+n}; the same coefficients give ω^♯ = Σ e_i · e_{i+n}.
  Multivector<S> omega() const {
    Multivector<S> w(n);
    for (int i = 0; i < n; ++i) w.at((Blade{1} << i) | (Blade{1} << (i + n))) = S(1);
    return w;
  }
};

/// ε_j = (e_j - i e_{j+n}) / 2 and its conjugate, in the real frame.
template <Scalar S>
std::pair<Multivector<S>, Multivector<S>> complex_frame(int n, int j) {
  const S half = ScalarTraits<S>::from(Rational(1, 2));
  const S ihalf = ScalarTraits<S>::from(Rational(0), Rational(1, 2));
  Multivector<S> eps(n), epsbar(n);
  eps.at(Blade{1} << j) = half;
  eps.at(Blade{1} << (j + n)) = -ihalf;
  epsbar.at(Blade{1} << j) = half;
  epsbar.at(Blade{1} << (j + n)) = ihalf;
  return {eps, epsbar};
}

}  // namespace kahler
