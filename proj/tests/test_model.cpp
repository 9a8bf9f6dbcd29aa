#include <gtest/gtest.h>

#include <string>

#include "kahler/geometry.hpp"

using namespace kahler;
using G = GaussianRational;
using MV = Multivector<G>;

namespace {

std::string data(const std::string& file) { return std::string(KAHLER_EXAMPLES_DIR) + "/" + file; }

MV th(int n, std::initializer_list<int> one_based) {
  MV acc = MV::scalar(n, G(1));
  for (int k : one_based) acc = wedge(acc, MV::basis(n, k - 1));
  return acc;
}

MV e(int n, int one_based) { return MV::basis(n, one_based - 1); }

}  // namespace

TEST(Validation, BuiltinsPass) {
  for (const auto& name : models::builtin_names()) {
    auto rep = validate_model(models::builtin(name));
    EXPECT_TRUE(rep.ok()) << name << ": " << rep.summary();
  }
}

TEST(Validation, AbelianAndKt4Pass) {
  EXPECT_TRUE(validate_model(models::torus(2)).ok());
  EXPECT_TRUE(validate_model(models::kt4()).ok());
}

TEST(Validation, SymmetricBracketNamesAntisymmetry) {
  LieModel m = load_model_file(data("symmetric.json"));
  auto rep = validate_model(m);
  ASSERT_FALSE(rep.ok());
  EXPECT_FALSE(rep.antisymmetry);
  ASSERT_EQ(rep.issues.size(), 1u);
  EXPECT_EQ(rep.issues[0].invariant, "antisymmetry");
  EXPECT_EQ(rep.issues[0].indices, (std::vector<int>{1, 2, 3}));
  EXPECT_NE(rep.summary().find("antisymmetry"), std::string::npos);
}

TEST(Validation, JacobiViolationHasWitness) {
  auto rep = validate_model(load_model_file(data("nonjacobi.json")));
  ASSERT_FALSE(rep.ok());
  EXPECT_TRUE(rep.antisymmetry);
  EXPECT_FALSE(rep.jacobi);
  EXPECT_EQ(rep.issues[0].invariant, "jacobi");
  EXPECT_EQ(rep.issues[0].indices.size(), 4u);
}

TEST(Validation, NonUnimodularRejected) {
  auto rep = validate_model(load_model_file(data("nonunimodular.json")));
  ASSERT_FALSE(rep.ok());
  EXPECT_FALSE(rep.unimodular);
  EXPECT_EQ(rep.issues[0].invariant, "unimodularity");
  EXPECT_THROW(ModelSpace<G>(load_model_file(data("nonunimodular.json"))), ModelValidationError);
}

TEST(Parsing, FileRoundTrip) {
  LieModel m = load_model_file(data("kt4.json"));
  EXPECT_EQ(m.name(), "kt4-file");
  EXPECT_EQ(m.n(), 2);
  EXPECT_EQ(m.c(2, 0, 1), Rational(1));
  EXPECT_EQ(m.c(2, 1, 0), Rational(-1));
  LieModel half = load_model_file(data("heisenberg_half.json"));
  EXPECT_EQ(half.c(2, 0, 1), Rational(-1, 2));
  LieModel back = parse_model_text(model_to_json(models::nil6()).dump());
  for (int u = 0; u < 6; ++u)
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) EXPECT_EQ(back.c(u, a, b), models::nil6().c(u, a, b));
}

TEST(Parsing, ErrorsAreParseErrors) {
  EXPECT_THROW(load_model_file(data("malformed.json")), ModelParseError);
  EXPECT_THROW(load_model_file(data("badindex.json")), ModelParseError);
  EXPECT_THROW(load_model_file(data("badrational.json")), ModelParseError);
  EXPECT_THROW(load_model_file(data("does-not-exist.json")), ModelParseError);
  EXPECT_THROW(parse_model_text(R"({"name":"x","n":1})"), ModelParseError);
  EXPECT_THROW(parse_model_text(R"({"name":"x","n":0,"brackets":[]})"), ModelParseError);
  EXPECT_THROW(parse_model_text(R"({"name":"x","n":1,"brackets":[{"a":1,"b":2,"c":1}]})"), ModelParseError);
  EXPECT_THROW(models::builtin("nope"), ModelParseError);
}

TEST(ChevalleyEilenberg, SpecExamples) {
  EXPECT_TRUE(ce_differential<G>(models::torus(2)).is_zero());
  Matrix<G> d = ce_differential<G>(models::kt4());
  EXPECT_EQ(act(d, th(2, {3})), -th(2, {1, 2}));
  Matrix<G> d6 = ce_differential<G>(models::nil6());
  EXPECT_EQ(act(d6, th(3, {4})), th(3, {1, 2}));
  EXPECT_EQ(act(d6, th(3, {5})), th(3, {1, 3}));
  EXPECT_EQ(act(d6, th(3, {6})), th(3, {2, 3}));
}

TEST(ChevalleyEilenberg, OneFormsSatisfyBracketFormula) {
  // dα(X,Y) = -α([X,Y]) on every coframe element and frame pair.
  for (const auto& name : models::builtin_names()) {
    LieModel m = models::builtin(name);
    Matrix<G> d = ce_differential<G>(m);
    for (int c = 0; c < m.dim(); ++c) {
      MV dth = act(d, MV::basis(m.n(), c));
      for (int a = 0; a < m.dim(); ++a)
        for (int b = 0; b < m.dim(); ++b) {
          G lhs = evaluate(dth, {MV::basis(m.n(), a), MV::basis(m.n(), b)});
          EXPECT_EQ(lhs, G(-m.c(c, a, b))) << name;
        }
    }
  }
}

TEST(ChevalleyEilenberg, SquaresToZeroAndIsAntiderivation) {
  for (const auto& name : models::builtin_names()) {
    LieModel m = models::builtin(name);
    Matrix<G> d = ce_differential<G>(m);
    EXPECT_TRUE((d * d).is_zero()) << name;
    if (m.n() < 2) continue;
    MV a = th(m.n(), {1}) + th(m.n(), {2, 3});
    MV b = th(m.n(), {1, 2}) - th(m.n(), {3});
    MV lhs = act(d, wedge(a.grade(1), b));
    MV rhs = wedge(act(d, a.grade(1)), b) - wedge(a.grade(1), act(d, b));
    EXPECT_EQ(lhs, rhs) << name;
  }
}

TEST(LeviCivita, SpecExamples) {
  EXPECT_TRUE(levi_civita(models::torus(3)).is_zero());
  ConnectionTable g = levi_civita(models::kt4());
  EXPECT_EQ(g(2, 0, 1), Rational(1, 2));
  EXPECT_EQ(g(1, 0, 2), Rational(-1, 2));
  EXPECT_EQ(g(1, 2, 0), Rational(-1, 2));
}

TEST(LeviCivita, MetricAndTorsionFree) {
  for (const auto& name : models::builtin_names()) {
    LieModel m = models::builtin(name);
    ConnectionTable g = levi_civita(m);
    for (int a = 0; a < m.dim(); ++a)
      for (int b = 0; b < m.dim(); ++b)
        for (int c = 0; c < m.dim(); ++c) {
          EXPECT_EQ(g(c, a, b), -g(b, a, c)) << name;
          EXPECT_EQ(g(c, a, b) - g(c, b, a), m.c(c, a, b)) << name;
        }
  }
}

TEST(Nabla, SpecExamples) {
  ModelSpace<G> t4(models::torus(2));
  for (int a = 0; a < 4; ++a) EXPECT_TRUE(t4.nabla_cl(a).is_zero());
  ModelSpace<G> kt(models::kt4());
  MV e23 = clifford_mul(e(2, 2), e(2, 3));
  EXPECT_TRUE(act(kt.nabla_cl(0), e23).is_zero());
  EXPECT_EQ(act(kt.nabla_cl(0), e(2, 2)), G(Rational(1, 2)) * e(2, 3));
  for (int a = 0; a < 4; ++a) EXPECT_TRUE(act(kt.nabla_cl(a), MV::scalar(2, G(1))).is_zero());
}

TEST(Nabla, SameMatrixInBothPictures) {
  for (const auto& name : {"kt4", "nil6", "gen6"}) {
    ModelSpace<G> ms(models::builtin(name));
    for (int a = 0; a < ms.dim(); ++a) EXPECT_TRUE((ms.nabla_cl(a) - ms.nabla_ext(a)).is_zero()) << name;
  }
}

TEST(Nijenhuis, SpecExamples) {
  ModelSpace<G> t4(models::torus(2));
  EXPECT_TRUE(t4.integrable());
  ModelSpace<G> kt(models::kt4());
  EXPECT_EQ(kt.nijenhuis(0, 1), G(Rational(-1, 4)) * e(2, 3));
  EXPECT_FALSE(kt.integrable());
  ModelSpace<G> nil(models::nil6());
  EXPECT_EQ(nil.nijenhuis(0, 1), G(Rational(1, 4)) * e(3, 4));
  ModelSpace<G> iwa(models::iwa6());
  EXPECT_TRUE(iwa.integrable());
}

TEST(Nijenhuis, SkewAndJAntilinear) {
  ModelSpace<G> ms(models::gen6());
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      EXPECT_EQ(ms.nijenhuis(a, b), -ms.nijenhuis(b, a));
      EXPECT_EQ(ms.nijenhuis(ms.e(a), ms.j(ms.e(b))), -ms.j(ms.nijenhuis(a, b)));
    }
}

TEST(Geometry, SpecExamples) {
  ModelSpace<G> kt(models::kt4());
  EXPECT_TRUE(kt.d_omega().is_zero());
  EXPECT_TRUE(kt.lee_form().is_zero());
  EXPECT_TRUE(kt.almost_kahler());
  ModelSpace<G> nil(models::nil6());
  EXPECT_EQ(nil.d_omega(), th(3, {1, 2, 3}));
  EXPECT_FALSE(nil.d_omega_plus().is_zero());
  EXPECT_FALSE(nil.d_omega_minus().is_zero());
  ModelSpace<G> t6(models::torus(3));
  EXPECT_TRUE(t6.d_omega().is_zero());
  EXPECT_TRUE(t6.lee_form().is_zero());
}

TEST(Geometry, LeeFormOfPrimaryKodaira) {
  ModelSpace<G> ms(models::pks4());
  EXPECT_EQ(ms.lee_form(), -th(2, {4}));
  EXPECT_EQ(ms.lee_form(), contract(ms.omega(), ms.d_omega_plus()));
  EXPECT_EQ(ms.lee_form(), -act(ms.structure().jstar_vector, act(ms.d_star(), ms.omega())));
}

TEST(Geometry, KobayashiNomizuFormula) {
  // 2<(∇_X J)Y,Z> = dω(X,Y,Z) - dω(X,JY,JZ) + 4<JX, N(Y,Z)>.
  for (const auto& name : {"kt4", "nil6", "gen6", "iwa6"}) {
    ModelSpace<G> ms(models::builtin(name));
    for (int a = 0; a < ms.dim(); ++a)
      for (int b = 0; b < ms.dim(); ++b)
        for (int c = 0; c < ms.dim(); ++c) {
          auto X = ms.e(a), Y = ms.e(b), Z = ms.e(c);
          G lhs = G(2) * inner(ms.nabla_j(X, Y), Z);
          G rhs = evaluate(ms.d_omega(), {X, Y, Z}) - evaluate(ms.d_omega(), {X, ms.j(Y), ms.j(Z)}) +
                  G(4) * inner(ms.j(X), ms.nijenhuis(Y, Z));
          EXPECT_EQ(lhs, rhs) << name << " " << a << b << c;
        }
  }
}
