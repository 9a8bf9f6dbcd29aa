#pragma once

#include <string>
#include <vector>

#include "kahler/bigrading.hpp"
#include "kahler/lie_model.hpp"
#include "kahler/matrix.hpp"
#include "kahler/multivector.hpp"
#include "kahler/structure.hpp"

namespace kahler {

/// A sign or normalization convention failed its built-in cross-check.
class ConventionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Γ^C_{AB} with ∇_{e_A} e_B = Σ_C Γ^C_{AB} e_C.
class ConnectionTable {
 public:
  explicit ConnectionTable(int dim) : dim_(dim), g_(static_cast<std::size_t>(dim * dim * dim)) {}
  int dim() const { return dim_; }
  const Rational& operator()(int upper, int a, int b) const { return g_[idx(upper, a, b)]; }
  Rational& operator()(int upper, int a, int b) { return g_[idx(upper, a, b)]; }
  bool is_zero() const {
    for (const auto& v : g_) {
      if (!v.is_zero()) return false;
    }
    return true;
  }

 private:
  std::size_t idx(int u, int a, int b) const { return static_cast<std::size_t>((u * dim_ + a) * dim_ + b); }
  int dim_;
  std::vector<Rational> g_;
};

/// Koszul formula for invariant fields in an orthonormal invariant frame:
/// 2<∇_{e_A} e_B, e_C> = c^C_{AB} - c^A_{BC} + c^B_{CA}.
inline ConnectionTable levi_civita(const LieModel& m) {
  ConnectionTable g(m.dim());
  const Rational half(1, 2);
  for (int a = 0; a < m.dim(); ++a) {
    for (int b = 0; b < m.dim(); ++b) {
      for (int c = 0; c < m.dim(); ++c) g(c, a, b) = half * (m.c(c, a, b) - m.c(a, b, c) + m.c(b, c, a));
    }
  }
  return g;
}

/// Extend images of the coframe (2-forms here) as an antiderivation of degree +1.
template <Scalar S>
Matrix<S> extend_antiderivation(int n, const std::vector<Multivector<S>>& images) {
  return matrix_of<S>(n, [&](const Multivector<S>& blade_vec) {
    Blade b = 0;
    for (Blade k = 0; k < blade_vec.size(); ++k) {
      if (!(blade_vec.at(k) == S{})) b = k;
    }
    Multivector<S> total(n);
    int position = 0;
    for (int j = 0; j < 2 * n; ++j) {
      if (!(b & (Blade{1} << j))) continue;
      Multivector<S> acc = Multivector<S>::scalar(n, S(1));
      for (int a = 0; a < 2 * n; ++a) {
        if (!(b & (Blade{1} << a))) continue;
        acc = wedge(acc, a == j ? images[a] : Multivector<S>::basis(n, a));
      }
      if (position & 1) total -= acc;
      else total += acc;
      ++position;
    }
    return total;
  });
}

/// Chevalley–Eilenberg differential: dθ^C = -Σ_{A<B} c^C_{AB} θ^A∧θ^B, i.e.
/// dα(X, Y) = -α([X, Y]) on invariant 1-forms.
template <Scalar S>
Matrix<S> ce_differential(const LieModel& m) {
  const int n = m.n();
  std::vector<Multivector<S>> images;
  for (int up = 0; up < m.dim(); ++up) {
    Multivector<S> img(n);
    for (int a = 0; a < m.dim(); ++a) {
      for (int b = a + 1; b < m.dim(); ++b) {
        if (!m.c(up, a, b).is_zero()) {
          img.at((Blade{1} << a) | (Blade{1} << b)) = ScalarTraits<S>::from(-m.c(up, a, b));
        }
      }
    }
    images.push_back(img);
  }
  return extend_antiderivation(n, images);
}

template <Scalar S>
FrameMap<S> connection_frame_map(const ConnectionTable& g, int a) {
  FrameMap<S> t(g.dim(), std::vector<S>(g.dim()));
  for (int b = 0; b < g.dim(); ++b) {
    for (int c = 0; c < g.dim(); ++c) t[c][b] = ScalarTraits<S>::from(g(c, a, b));
  }
  return t;
}

/// ∇_{e_A} on the Clifford picture: the derivation extension over the Clifford product.
template <Scalar S>
Matrix<S> nabla(const ConnectionTable& g, int n, int a) {
  return extend_derivation(n, connection_frame_map<S>(g, a), Picture::clifford);
}

/// ∇_{e_A} on forms through the dual action (∇_X θ^B)(e_C) = -Γ^B_{XC},
/// extended as a derivation over the wedge product.
template <Scalar S>
Matrix<S> nabla_forms(const ConnectionTable& g, int n, int a) {
  FrameMap<S> t(g.dim(), std::vector<S>(g.dim()));
  for (int b = 0; b < g.dim(); ++b) {
    for (int c = 0; c < g.dim(); ++c) t[c][b] = ScalarTraits<S>::from(-g(b, a, c));
  }
  return extend_derivation(n, t, Picture::exterior);
}

/// Lie bracket of two invariant vector fields given as degree-1 multivectors.
template <Scalar S>
Multivector<S> lie_bracket(const LieModel& m, const Multivector<S>& x, const Multivector<S>& y) {
  Multivector<S> out(m.n());
  for (int a = 0; a < m.dim(); ++a) {
    const S& xa = x.at(Blade{1} << a);
    if (xa == S{}) continue;
    for (int b = 0; b < m.dim(); ++b) {
      const S& yb = y.at(Blade{1} << b);
      if (yb == S{}) continue;
      for (int c = 0; c < m.dim(); ++c) {
        if (m.c(c, a, b).is_zero()) continue;
        out.at(Blade{1} << c) += xa * yb * ScalarTraits<S>::from(m.c(c, a, b));
      }
    }
  }
  return out;
}

/// Everything about a model that the operator layers need: the J structure,
/// the bigrading, d, the connection, ω and its derived forms.
template <Scalar S>
class ModelSpace {
 public:
  explicit ModelSpace(LieModel model, double tol = kDefaultTolerance)
      : model_(std::move(model)), tol_(tol), structure_(model_.n()), bigrading_(model_.n()),
        connection_(model_.dim()) {
    auto report = validate_model(model_);
    if (!report.ok()) throw ModelValidationError(report.summary());
    const int n = model_.n();
    d_ = ce_differential<S>(model_);
    d_star_ = d_.adjoint();
    connection_ = levi_civita(model_);
    for (int a = 0; a < model_.dim(); ++a) {
      nabla_cl_.push_back(nabla<S>(connection_, n, a));
      nabla_ext_.push_back(nabla_forms<S>(connection_, n, a));
    }
    omega_ = structure_.omega();
    d_omega_ = act(d_, omega_);
    auto split = three_form_split(bigrading_, d_omega_);
    d_omega_plus_ = split.plus;
    d_omega_minus_ = split.minus;
    lee_ = contract(omega_, d_omega_plus_);
    jstar_lee_ = act(structure_.jstar_vector, lee_);

    // θ = ω ⌟ dω⁺ must agree with -J* d*ω; the other route runs through the
    // matrix adjoint of d, so a sign slip in d or in ⌟ shows up here.
    Multivector<S> other = -act(structure_.jstar_vector, act(d_star_, omega_));
    if (!(other - lee_).is_zero(tol_)) {
      throw ConventionError("Lee form cross-check failed: ω⌟dω⁺ = " + lee_.str() + " but -J*d*ω = " + other.str());
    }
  }

  const LieModel& model() const { return model_; }
  const std::string& name() const { return model_.name(); }
  int n() const { return model_.n(); }
  int dim() const { return model_.dim(); }
  std::size_t space_dim() const { return std::size_t{1} << (2 * model_.n()); }
  double tolerance() const { return tol_; }

  const AdaptedStructure<S>& structure() const { return structure_; }
  const Bigrading<S>& bigrading() const { return bigrading_; }
  const ConnectionTable& connection() const { return connection_; }

  const Matrix<S>& d() const { return d_; }
  const Matrix<S>& d_star() const { return d_star_; }
  const Matrix<S>& nabla_cl(int a) const { return nabla_cl_.at(a); }
  const Matrix<S>& nabla_ext(int a) const { return nabla_ext_.at(a); }

  /// ∇_{J e_A}, by frame index arithmetic.
  Matrix<S> nabla_cl_j(int a) const {
    auto img = j_of_frame(n(), a);
    return S(img.sign) * nabla_cl_[img.target];
  }
  Matrix<S> nabla_ext_j(int a) const {
    auto img = j_of_frame(n(), a);
    return S(img.sign) * nabla_ext_[img.target];
  }

  const Multivector<S>& omega() const { return omega_; }
  const Multivector<S>& d_omega() const { return d_omega_; }
  const Multivector<S>& d_omega_plus() const { return d_omega_plus_; }
  const Multivector<S>& d_omega_minus() const { return d_omega_minus_; }
  const Multivector<S>& lee_form() const { return lee_; }
  const Multivector<S>& jstar_lee_form() const { return jstar_lee_; }

  Multivector<S> e(int a) const { return Multivector<S>::basis(n(), a); }
  Multivector<S> j(const Multivector<S>& v) const { return act(structure_.j_vector, v); }
  Multivector<S> bracket(const Multivector<S>& x, const Multivector<S>& y) const { return lie_bracket(model_, x, y); }

  /// N(X,Y) = ¼([JX,JY] - J[JX,Y] - J[X,JY] - [X,Y]).
  Multivector<S> nijenhuis(const Multivector<S>& x, const Multivector<S>& y) const {
    Multivector<S> jx = j(x), jy = j(y);
    Multivector<S> v = bracket(jx, jy) - j(bracket(jx, y)) - j(bracket(x, jy)) - bracket(x, y);
    return ScalarTraits<S>::from(Rational(1, 4)) * v;
  }
  Multivector<S> nijenhuis(int a, int b) const { return nijenhuis(e(a), e(b)); }

  bool integrable() const {
    for (int a = 0; a < dim(); ++a) {
      for (int b = a + 1; b < dim(); ++b) {
        if (!nijenhuis(a, b).is_zero(tol_)) return false;
      }
    }
    return true;
  }
  bool almost_kahler() const { return d_omega_.is_zero(tol_); }

  /// (∇_X J) Y = ∇_X (JY) - J ∇_X Y, as a vector.
  Multivector<S> nabla_j(const Multivector<S>& x, const Multivector<S>& y) const {
    Matrix<S> nx(space_dim());
    for (int a = 0; a < dim(); ++a) {
      const S& xa = x.at(Blade{1} << a);
      if (!(xa == S{})) nx += xa * nabla_cl_[a];
    }
    return act(nx, j(y)) - j(act(nx, y));
  }

 private:
  LieModel model_;
  double tol_;
  AdaptedStructure<S> structure_;
  Bigrading<S> bigrading_;
  ConnectionTable connection_;
  Matrix<S> d_, d_star_;
  std::vector<Matrix<S>> nabla_cl_, nabla_ext_;
  Multivector<S> omega_, d_omega_, d_omega_plus_, d_omega_minus_, lee_, jstar_lee_;
};

}  // namespace kahler
