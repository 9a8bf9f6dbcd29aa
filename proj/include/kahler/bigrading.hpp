#pragma once

#include <bit>
#include <map>
#include <utility>
#include <vector>

#include "kahler/matrix.hpp"
#include "kahler/multivector.hpp"

namespace kahler {

using Bidegree = std::pair<int, int>;

/// Bigraded basis of the complexified exterior algebra.
///
/// Slot j < n is the (1,0)-form φ^j = θ^j + iθ^{j+n} (J*φ^j = iφ^j) and slot
/// j + n is its conjugate. Column m of `basis` is the wedge of the slots in m,
/// so it has pure bidegree (|m ∩ low|, |m ∩ high|). The columns are orthogonal
/// with squared norm 2^{|m|}, which gives the inverse without elimination.
///
/// J_a* alone cannot separate bidegrees (its eigenvalue i^{p-q} repeats within
/// a degree once k >= 3), so bidegrees are defined by this basis; J_d* acts on
/// A^{p,q} as i(p-q) and J_a* as i^{p-q}, both of which are tested.
template <Scalar S>
class Bigrading {
 public:
  explicit Bigrading(int n) : n_(n), dim_(std::size_t{1} << (2 * n)), basis_(dim_), inverse_(dim_) {
    const S i = ScalarTraits<S>::i();
    std::vector<Multivector<S>> slots;
    for (int j = 0; j < n; ++j) {
      Multivector<S> phi(n);
      phi.at(Blade{1} << j) = S(1);
      phi.at(Blade{1} << (j + n)) = i;
      slots.push_back(phi);
    }
    for (int j = 0; j < n; ++j) slots.push_back(slots[j].bar());

    const Blade low = (Blade{1} << n) - 1;
    for (Blade m = 0; m < dim_; ++m) {
      Multivector<S> col = Multivector<S>::scalar(n, S(1));
      for (int s = 0; s < 2 * n; ++s) {
        if (m & (Blade{1} << s)) col = wedge(col, slots[s]);
      }
      for (Blade r = 0; r < dim_; ++r) basis_(r, m) = col.at(r);
      bidegree_.push_back({std::popcount(m & low), std::popcount(m & ~low)});
    }
    inverse_ = basis_.adjoint();
    for (Blade m = 0; m < dim_; ++m) {
      const S scale = ScalarTraits<S>::from(Rational(1, std::int64_t{1} << std::popcount(m)));
      for (Blade c = 0; c < dim_; ++c) {
        if (!(inverse_(m, c) == S{})) inverse_(m, c) *= scale;
      }
    }
  }

  int n() const { return n_; }
  const Matrix<S>& basis() const { return basis_; }
  const Matrix<S>& inverse() const { return inverse_; }
  Bidegree bidegree_of_slot(std::size_t m) const { return bidegree_[m]; }

  /// Projector onto A^{p,q}; zero when (p, q) is out of range.
  Matrix<S> projector(int p, int q) const {
    Matrix<S> diag(dim_);
    for (std::size_t m = 0; m < dim_; ++m) {
      if (bidegree_[m] == Bidegree{p, q}) diag(m, m) = S(1);
    }
    return basis_ * diag * inverse_;
  }

  Multivector<S> project(const Multivector<S>& a, int p, int q) const {
    if (a.n() != n_) throw StructuralError("bidegree projection on the wrong space");
    auto coords = inverse_.apply(a.coeffs());
    for (std::size_t m = 0; m < dim_; ++m) {
      if (bidegree_[m] != Bidegree{p, q}) coords[m] = S{};
    }
    return Multivector<S>(n_, basis_.apply(coords));
  }

  /// Pure-bidegree components of an operator, keyed by bidegree shift (r, s).
  /// Components that vanish (within `tol` in floating mode) are omitted.
  std::map<Bidegree, Matrix<S>> decompose(const Matrix<S>& op, double tol = kDefaultTolerance) const {
    Matrix<S> q = inverse_ * op * basis_;
    std::map<Bidegree, Matrix<S>> parts;
    for (std::size_t r = 0; r < dim_; ++r) {
      for (std::size_t c = 0; c < dim_; ++c) {
        if (q(r, c) == S{}) continue;
        Bidegree shift{bidegree_[r].first - bidegree_[c].first, bidegree_[r].second - bidegree_[c].second};
        auto [it, inserted] = parts.try_emplace(shift, dim_);
        it->second(r, c) = q(r, c);
      }
    }
    std::map<Bidegree, Matrix<S>> out;
    for (auto& [shift, block] : parts) {
      Matrix<S> back = basis_ * block * inverse_;
      if (!back.is_zero(tol)) out.emplace(shift, std::move(back));
    }
    return out;
  }

 private:
  int n_;
  std::size_t dim_;
  Matrix<S> basis_;
  Matrix<S> inverse_;
  std::vector<Bidegree> bidegree_;
};

template <Scalar S>
struct ThreeFormSplit {
  Multivector<S> plus;   // (2,1) + (1,2)
  Multivector<S> minus;  // (3,0) + (0,3)
};

template <Scalar S>
ThreeFormSplit<S> three_form_split(const Bigrading<S>& bg, const Multivector<S>& psi) {
  for (Blade b = 0; b < psi.size(); ++b) {
    if (!(psi.at(b) == S{}) && degree(b) != 3) throw StructuralError("three_form_split needs a 3-form");
  }
  return {bg.project(psi, 2, 1) + bg.project(psi, 1, 2), bg.project(psi, 3, 0) + bg.project(psi, 0, 3)};
}

}  // namespace kahler
