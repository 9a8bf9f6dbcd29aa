#include <gtest/gtest.h>

#include <random>

#include "kahler/bigrading.hpp"
#include "kahler/operator.hpp"
#include "kahler/structure.hpp"

using namespace kahler;
using G = GaussianRational;
using MV = Multivector<G>;

namespace {

MV th(int n, std::initializer_list<int> one_based, G coeff = G(1)) {
  MV acc = MV::scalar(n, coeff);
  for (int k : one_based) acc = wedge(acc, MV::basis(n, k - 1));
  return acc;
}

MV random_mv(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  MV v(n);
  for (Blade b = 0; b < v.size(); ++b) v.at(b) = G(Rational(coef(rng)), Rational(coef(rng)));
  return v;
}

MV random_homogeneous(int n, int k, std::mt19937& rng) { return random_mv(n, rng).grade(k); }

}  // namespace

TEST(Wedge, SpecExamples) {
  EXPECT_EQ(wedge(MV::basis(2, 0), MV::basis(2, 1)), MV::blade(2, 0b11));
  EXPECT_TRUE(wedge(MV::basis(2, 0), MV::basis(2, 0)).is_zero());
  EXPECT_EQ(wedge(MV::basis(2, 1), MV::basis(2, 0)), -MV::blade(2, 0b11));
}

TEST(Wedge, GradedCommutativeAndAssociative) {
  std::mt19937 rng(1);
  for (int t = 0; t < 20; ++t) {
    int p = t % 4, q = (t / 4) % 4;
    MV a = random_homogeneous(2, p, rng), b = random_homogeneous(2, q, rng), c = random_mv(2, rng);
    G sign = (p * q) % 2 ? G(-1) : G(1);
    EXPECT_EQ(wedge(a, b), sign * wedge(b, a));
    EXPECT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));
  }
}

TEST(Wedge, DimensionMismatchIsStructural) {
  EXPECT_THROW(wedge(MV::basis(1, 0), MV::basis(2, 0)), StructuralError);
}

TEST(Contract, SpecExamples) {
  EXPECT_EQ(contract(MV::basis(2, 0), th(2, {1, 2})), MV::basis(2, 1));
  EXPECT_TRUE(contract(MV::basis(2, 1), MV::basis(2, 0)).is_zero());
  MV omega = th(2, {1, 3}) + th(2, {2, 4});
  EXPECT_EQ(contract(omega, omega), MV::scalar(2, G(2)));
}

TEST(Contract, IsAdjointOfWedge) {
  std::mt19937 rng(2);
  for (int t = 0; t < 10; ++t) {
    MV a = random_mv(2, rng), b = random_mv(2, rng), c = random_mv(2, rng);
    EXPECT_EQ(inner(contract(a, b), c), inner(b, wedge(a.bar(), c)));
  }
}

TEST(Clifford, SpecExamples) {
  MV e1 = MV::basis(2, 0), e2 = MV::basis(2, 1);
  EXPECT_EQ(clifford_mul(e1, e1), MV::scalar(2, G(-1)));
  EXPECT_EQ(clifford_mul(e1, e2), MV::blade(2, 0b11));
  EXPECT_EQ(clifford_mul(e1, clifford_mul(e1, e2)), -e2);
}

TEST(Clifford, HandComputedBladeSquares) {
  // (e_{A1}…e_{Ak})² = (-1)^{k(k-1)/2} (-1)^k.
  const int expect[] = {1, -1, -1, 1, 1};
  for (Blade b = 0; b < 16; ++b) {
    MV x = MV::blade(2, b);
    EXPECT_EQ(clifford_mul(x, x), MV::scalar(2, G(expect[degree(b)]))) << blade_name(b);
  }
  MV e1 = MV::basis(2, 0), e2 = MV::basis(2, 1);
  EXPECT_EQ(clifford_mul(clifford_mul(e1, e2), e1), e2);
}

TEST(Clifford, VectorProductIsWedgeMinusContraction) {
  for (int n = 1; n <= 3; ++n) {
    for (int a = 0; a < 2 * n; ++a) {
      MV e = MV::basis(n, a);
      Matrix<G> lhs = clifford_left(e);
      Matrix<G> rhs = ext_mult(e) - int_mult(e);
      EXPECT_TRUE((lhs - rhs).is_zero()) << "n=" << n << " a=" << a;
    }
  }
}

TEST(Clifford, AssociativeAndParityRespecting) {
  std::mt19937 rng(3);
  for (int t = 0; t < 10; ++t) {
    MV a = random_mv(2, rng), b = random_mv(2, rng), c = random_mv(2, rng);
    EXPECT_EQ(clifford_mul(clifford_mul(a, b), c), clifford_mul(a, clifford_mul(b, c)));
  }
  MV odd = random_homogeneous(2, 1, rng) + random_homogeneous(2, 3, rng);
  MV even = random_homogeneous(2, 2, rng);
  MV prod = clifford_mul(odd, even);
  EXPECT_TRUE((prod.grade(0) + prod.grade(2) + prod.grade(4)).is_zero());
}

TEST(Inner, SpecExamples) {
  EXPECT_EQ(inner(th(2, {1, 2}), th(2, {1, 2})), G(1));
  EXPECT_EQ(inner(MV::basis(2, 0), MV::basis(2, 1)), G(0));
  EXPECT_EQ(inner(G::i() * MV::basis(2, 0), MV::basis(2, 0)), G::i());
  EXPECT_EQ(inner(MV::basis(2, 0), G::i() * MV::basis(2, 0)), -G::i());
}

TEST(Musical, FlatAndSharpAreInversePair) {
  MV e12 = clifford_mul(MV::basis(2, 0), MV::basis(2, 1));
  EXPECT_EQ(flat(e12), th(2, {1, 2}));
  EXPECT_EQ(sharp(MV::basis(2, 0)), MV::basis(2, 0));
  std::mt19937 rng(4);
  MV psi = random_mv(2, rng);
  EXPECT_EQ(flat(sharp(psi)), psi);
  EXPECT_EQ(sharp(flat(psi)), psi);
}

TEST(Structure, FrameActionAndOmega) {
  AdaptedStructure<G> js(2);
  MV e1 = MV::basis(2, 0), e3 = MV::basis(2, 2);
  EXPECT_EQ(js.j_vector_apply(e1), e3);
  EXPECT_EQ(js.j_vector_apply(e3), -e1);
  EXPECT_EQ(act(js.jstar_vector, MV::basis(2, 0)), -MV::basis(2, 2));
  EXPECT_EQ(js.omega(), th(2, {1, 3}) + th(2, {2, 4}));
  Matrix<G> j2 = js.j_vector * js.j_vector;
  EXPECT_TRUE((j2 + degree_projector<G>(2, 1)).is_zero());
}

TEST(Structure, ExtensionsOfJ) {
  AdaptedStructure<G> js(1);
  MV w = th(1, {1, 2});
  EXPECT_EQ(js.j_algebra(w, Picture::exterior), w);
  EXPECT_TRUE(js.j_derivation(w, Picture::exterior).is_zero());
  EXPECT_EQ(js.j_algebra(MV::scalar(1, G(1)), Picture::exterior), MV::scalar(1, G(1)));
  AdaptedStructure<G> js3(3);
  EXPECT_TRUE((js3.ja * js3.jd - js3.jd * js3.ja).is_zero());
  EXPECT_TRUE((js3.ja_cl * js3.jd_cl - js3.jd_cl * js3.ja_cl).is_zero());
  EXPECT_TRUE((js3.ja * js3.ja_inv - Matrix<G>::identity(64)).is_zero());
}

TEST(Structure, FlatSharpSignRules) {
  for (int n = 1; n <= 3; ++n) {
    AdaptedStructure<G> js(n);
    EXPECT_TRUE((js.j_vector + js.jstar_vector).is_zero());
    EXPECT_TRUE((js.jd_cl + js.jd).is_zero());
    EXPECT_TRUE((js.ja_cl - js.parity * js.ja).is_zero());
    EXPECT_TRUE((js.ja.adjoint() - js.parity * js.ja).is_zero());
    EXPECT_TRUE((js.jd.adjoint() + js.jd).is_zero());
    EXPECT_TRUE((js.ja_inv - js.parity * js.ja).is_zero());
  }
}

TEST(Structure, ComplexFrameHelper) {
  const G i = G::i();
  for (int j = 0; j < 3; ++j) {
    auto [eps, epsbar] = complex_frame<G>(3, j);
    EXPECT_EQ(eps + epsbar, MV::basis(3, j));
    EXPECT_EQ(i * (eps - epsbar), MV::basis(3, j + 3));
  }
}

TEST(Bigrading, SpecExamples) {
  Bigrading<G> bg(1);
  MV v = MV::basis(1, 0) - G::i() * MV::basis(1, 1);
  EXPECT_EQ(bg.project(v, 0, 1), v);
  EXPECT_TRUE(bg.project(v, 1, 0).is_zero());
  AdaptedStructure<G> js(2);
  Bigrading<G> bg2(2);
  EXPECT_EQ(bg2.project(js.omega(), 1, 1), js.omega());
  EXPECT_EQ(bg.project(MV::scalar(1, G(1)), 0, 0), MV::scalar(1, G(1)));
  EXPECT_TRUE(bg.project(v, 5, -1).is_zero());
}

TEST(Bigrading, ProjectorsAreCompleteIdempotentAndOrthogonal) {
  const int n = 2;
  Bigrading<G> bg(n);
  AdaptedStructure<G> js(n);
  Matrix<G> sum(16);
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q <= n; ++q) {
      Matrix<G> pr = bg.projector(p, q);
      sum += pr;
      EXPECT_TRUE((pr * pr - pr).is_zero());
      // J_a* acts as i^{p-q} and J_d* as i(p-q) on A^{p,q}.
      EXPECT_TRUE((js.ja * pr - i_power<G>(p - q) * pr).is_zero());
      EXPECT_TRUE((js.jd * pr - G(Rational(0), Rational(p - q)) * pr).is_zero());
      for (int r = 0; r <= n; ++r) {
        for (int s = 0; s <= n; ++s) {
          if (r != p || s != q) EXPECT_TRUE((pr * bg.projector(r, s)).is_zero());
        }
      }
    }
  }
  EXPECT_TRUE((sum - Matrix<G>::identity(16)).is_zero());
}

TEST(Bigrading, ProjectionIsExactWithPowerOfTwoDenominators) {
  Bigrading<G> bg(3);
  MV psi = wedge(wedge(MV::basis(3, 0), MV::basis(3, 1)), MV::basis(3, 2));
  for (int p = 0; p <= 3; ++p) {
    MV part = bg.project(psi, p, 3 - p);
    for (const auto& c : part.coeffs()) {
      std::int64_t d1 = c.real().den(), d2 = c.imag().den();
      EXPECT_EQ(d1 & (d1 - 1), 0);
      EXPECT_EQ(d2 & (d2 - 1), 0);
    }
  }
}

TEST(ThreeFormSplit, PureTypes) {
  Bigrading<G> bg(3);
  std::mt19937 rng(5);
  MV psi = bg.project(random_homogeneous(3, 3, rng), 2, 1);
  ASSERT_FALSE(psi.is_zero());
  auto s = three_form_split(bg, psi);
  EXPECT_EQ(s.plus, psi);
  EXPECT_TRUE(s.minus.is_zero());
  MV xi = bg.project(random_homogeneous(3, 3, rng), 3, 0);
  ASSERT_FALSE(xi.is_zero());
  auto s2 = three_form_split(bg, xi);
  EXPECT_TRUE(s2.plus.is_zero());
  EXPECT_EQ(s2.minus, xi);
  MV t123 = th(3, {1, 2, 3});
  auto s3 = three_form_split(bg, t123);
  EXPECT_FALSE(s3.plus.is_zero());
  EXPECT_FALSE(s3.minus.is_zero());
  EXPECT_EQ(s3.plus + s3.minus, t123);
  EXPECT_THROW(three_form_split(bg, MV::basis(3, 0)), StructuralError);
}

TEST(Hodge, StarSquaresToSignOnEachDegree) {
  const int n = 2;
  std::mt19937 rng(6);
  for (int k = 0; k <= 2 * n; ++k) {
    MV a = random_homogeneous(n, k, rng);
    G sign = (k * (2 * n - k)) % 2 ? G(-1) : G(1);
    EXPECT_EQ(hodge_star(hodge_star(a)), sign * a);
  }
}
