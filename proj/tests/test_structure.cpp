#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace kahler;
using testing_support::fixture;
using testing_support::th;
using G = GaussianRational;
using MV = Multivector<G>;
using M = Matrix<G>;

namespace {

bool is_derivation(const M& p, const ModelSpace<G>& ms) {
  for (int a = 0; a < ms.dim(); ++a)
    for (Blade b = 0; b < ms.space_dim(); ++b) {
      MV x = ms.e(a), y = MV::blade(ms.n(), b);
      if (!(act(p, clifford_mul(x, y)) == clifford_mul(act(p, x), y) + clifford_mul(x, act(p, y)))) return false;
    }
  return true;
}

}  // namespace

TEST(Omega, ElementaryProperties) {
  for (const char* name : {"t2", "kt4", "nil6"}) {
    const auto& f = fixture(name);
    const auto& js = f.ms.structure();
    EXPECT_TRUE(act(js.jd, f.ms.omega()).is_zero()) << name;
    EXPECT_EQ(act(js.ja, f.ms.omega()), f.ms.omega()) << name;
    EXPECT_TRUE(act(js.jd_cl, f.ms.omega()).is_zero()) << name;
    EXPECT_EQ(act(js.ja_cl, f.ms.omega()), f.ms.omega()) << name;
  }
}

TEST(Omega, FundamentalFormIsJPairing) {
  // ω(X,Y) = <JX, Y> and J is an isometry.
  const auto& f = fixture("nil6");
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      MV x = f.ms.e(a), y = f.ms.e(b);
      EXPECT_EQ(evaluate(f.ms.omega(), {x, y}), inner(f.ms.j(x), y));
      EXPECT_EQ(inner(f.ms.j(x), f.ms.j(y)), inner(x, y));
    }
}

TEST(Omega, CovariantDerivativeIsJAntiInvariant) {
  for (const char* name : {"kt4", "nil6", "gen6"}) {
    const auto& f = fixture(name);
    const auto& js = f.ms.structure();
    for (int a = 0; a < f.ms.dim(); ++a) {
      MV nw = act(f.ms.nabla_ext(a), f.ms.omega());
      EXPECT_EQ(act(js.ja, nw), -nw) << name;
      MV nw_cl = act(f.ms.nabla_cl(a), f.ms.omega());
      EXPECT_EQ(act(js.ja_cl, nw_cl), -nw_cl) << name;
    }
  }
}

TEST(Omega, DerivativesOfJAreSkewDerivations) {
  const auto& f = fixture("nil6");
  const auto& js = f.ms.structure();
  for (int a = 0; a < 6; ++a) {
    const M& nx = f.ms.nabla_cl(a);
    M njd = nx * js.jd_cl - js.jd_cl * nx;
    M nja = js.ja_cl_inv * nx * js.ja_cl - nx;
    EXPECT_TRUE((njd.adjoint() + njd).is_zero());
    EXPECT_TRUE((nja.adjoint() + nja).is_zero());
    EXPECT_TRUE(is_derivation(njd, f.ms));
    EXPECT_TRUE(is_derivation(nja, f.ms));
  }
}

TEST(ThreeForms, TypeLemmasOnDOmegaParts) {
  for (const char* name : {"nil6", "gen6", "iwa6"}) {
    const auto& f = fixture(name);
    const MV& psi = f.ms.d_omega_plus();
    const MV& xi = f.ms.d_omega_minus();
    auto j = [&](const MV& v) { return f.ms.j(v); };
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        for (int c = 0; c < 6; ++c) {
          MV x = f.ms.e(a), y = f.ms.e(b), z = f.ms.e(c);
          EXPECT_EQ(evaluate(psi, {x, y, z}), evaluate(psi, {j(x), j(y), z}) + evaluate(psi, {j(x), y, j(z)}) +
                                                  evaluate(psi, {x, j(y), j(z)}));
          G first = evaluate(xi, {j(x), y, z});
          EXPECT_EQ(first, evaluate(xi, {x, j(y), z}));
          EXPECT_EQ(first, evaluate(xi, {x, y, j(z)}));
        }
  }
}

TEST(KobayashiNomizu, TwistedFormula) {
  // 2<J⁻¹(∇_{JX}J)Y, Z> = dω(JX,Y,JZ) + dω(JX,JY,Z) - 4<JX, N(Y,Z)>.
  for (const char* name : {"kt4", "nil6", "gen6"}) {
    const auto& f = fixture(name);
    const auto& ms = f.ms;
    for (int a = 0; a < 6 && a < ms.dim(); ++a)
      for (int b = 0; b < ms.dim(); ++b)
        for (int c = 0; c < ms.dim(); ++c) {
          MV x = ms.e(a), y = ms.e(b), z = ms.e(c), jx = ms.j(x);
          MV lhs_vec = -ms.j(ms.nabla_j(jx, y));
          G lhs = G(2) * inner(lhs_vec, z);
          G rhs = evaluate(ms.d_omega(), {jx, y, ms.j(z)}) + evaluate(ms.d_omega(), {jx, ms.j(y), z}) -
                  G(4) * inner(jx, ms.nijenhuis(y, z));
          EXPECT_EQ(lhs, rhs) << name;
        }
  }
}

TEST(Nonvacuity, CatalogExercisesEveryIngredient) {
  bool lambda_mu = false, lambda_del = false, tau_del = false, rho_del = false, mu = false, nij = false,
       theta = false;
  for (const auto& name : models::builtin_names()) {
    const auto& f = fixture(name);
    lambda_mu |= !f.op("lambda_mu").is_zero();
    lambda_del |= !f.op("lambda_del").is_zero();
    tau_del |= !f.op("tau_del").is_zero();
    rho_del |= !f.op("rho_del").is_zero();
    mu |= !f.op("mu").is_zero();
    nij |= !f.ms.integrable();
    theta |= !f.ms.lee_form().is_zero();
  }
  EXPECT_TRUE(lambda_mu && lambda_del && tau_del && rho_del && mu && nij && theta);
}

TEST(Nonvacuity, ModelAttributes) {
  struct Expect {
    const char* name;
    bool ak, integrable, lee_zero;
  };
  for (auto [name, ak, integ, lee0] : {Expect{"t2", true, true, true}, {"t4", true, true, true},
                                       {"t6", true, true, true}, {"kt4", true, false, true},
                                       {"iwa6", false, true, true}, {"nil6", false, false, true},
                                       {"pks4", false, true, false}, {"gen6", false, false, false}}) {
    const auto& f = fixture(name);
    EXPECT_EQ(f.ms.almost_kahler(), ak) << name;
    EXPECT_EQ(f.ms.integrable(), integ) << name;
    EXPECT_EQ(f.ms.lee_form().is_zero(), lee0) << name;
  }
}

TEST(Hodge, MatrixAdjointOfDIsFormalAdjoint) {
  for (const auto& name : models::builtin_names()) {
    const auto& f = fixture(name);
    M star = matrix_of<G>(f.ms.n(), [](const MV& x) { return hodge_star(x); });
    M star_inv = star.adjoint();
    EXPECT_TRUE((star * star_inv - M::identity(f.ms.space_dim())).is_zero());
    EXPECT_TRUE((f.ms.d_star() + star * f.ms.d() * star).is_zero()) << name;
  }
}
