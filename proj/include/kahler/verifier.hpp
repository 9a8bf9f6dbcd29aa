#pragma once

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "kahler/catalog.hpp"
#include "kahler/expression.hpp"

namespace kahler {

enum class GuardStatus { exercised, vacuous, inapplicable };

inline const char* guard_name(GuardStatus g) {
  switch (g) {
    case GuardStatus::exercised: return "exercised";
    case GuardStatus::vacuous: return "vacuous";
    default: return "inapplicable";
  }
}

enum class EntryStatus { pass, fail, error, skipped };

inline const char* status_name(EntryStatus s) {
  switch (s) {
    case EntryStatus::pass: return "pass";
    case EntryStatus::fail: return "fail";
    case EntryStatus::error: return "error";
    default: return "skipped";
  }
}

struct EntryResult {
  std::string id;
  int group = 0;
  Suite suite = Suite::elementary;
  EntryKind kind = EntryKind::equation;
  std::string anchor;
  EntryStatus status = EntryStatus::pass;
  GuardStatus guard = GuardStatus::vacuous;
  /// Max-norm of lhs - rhs. Exact mode renders the offending entry exactly.
  std::string residual = "0";
  double residual_value = 0.0;
  int instances = 0;
  std::string detail;
  std::vector<Bidegree> measured;
  std::optional<bool> printed_holds;
  bool external = false;
};

struct CommutatorCell {
  std::string row;
  std::string row_label;
  std::string column;
  std::string expected;
  std::string printed;
  /// Recovered coefficients over the spanning operators, rendered.
  std::string computed;
  /// "match", "mismatch" or "UNRESOLVED".
  std::string status;
  bool external = false;
};

struct CommutatorTable {
  std::vector<CommutatorCell> cells;
  /// Spanning operators that coincide with combinations of earlier ones on this model.
  std::vector<std::string> coincidences;
  int unresolved = 0;
  int mismatches = 0;
};

struct BidegreeCell {
  std::string op;
  Bidegree declared;
  std::vector<Bidegree> measured;
  /// "placed", "zero" or "misplaced".
  std::string status;
};

struct BidegreeTable {
  std::vector<BidegreeCell> cells;
  int misplaced = 0;
};

struct ModelAttributes {
  std::string name;
  int n = 0;
  bool almost_kahler = false;
  bool integrable = false;
  bool lee_zero = false;
  bool abelian = false;
};

struct Report {
  std::string mode;
  ModelAttributes model;
  std::vector<EntryResult> entries;
  std::optional<CommutatorTable> figure1;
  std::optional<BidegreeTable> figure2;

  int count(EntryStatus s) const {
    return static_cast<int>(std::count_if(entries.begin(), entries.end(), [&](const auto& e) { return e.status == s; }));
  }
  int count(GuardStatus g) const {
    return static_cast<int>(std::count_if(entries.begin(), entries.end(), [&](const auto& e) { return e.guard == g; }));
  }
  std::vector<std::string> failing_ids() const {
    std::vector<std::string> out;
    for (const auto& e : entries) {
      if (e.status == EntryStatus::fail || e.status == EntryStatus::error) out.push_back(e.id);
    }
    return out;
  }
  bool ok() const { return failing_ids().empty(); }
};

/// Which catalog groups a suite selector covers.
inline bool suite_selects(const std::string& suite, const IdentityEntry& e) {
  if (suite == "all") return true;
  return suite == suite_name(e.suite);
}

inline bool valid_suite(const std::string& suite) {
  return suite == "all" || suite == "elementary" || suite == "clifford" || suite == "exterior" || suite == "tables";
}

template <Scalar S>
struct CustomOutcome {
  S residual{};
  bool exercised = false;
  std::string detail;
};

template <Scalar S>
class Verifier {
 public:
  explicit Verifier(LieModel model, double tol = kDefaultTolerance)
      : ms_(std::move(model), tol), ext_(ms_), cl_(ms_), env_(ms_, ext_, cl_) {}

  const ModelSpace<S>& model() const { return ms_; }
  const ExteriorZoo<S>& exterior() const { return ext_; }
  const CliffordZoo<S>& clifford() const { return cl_; }
  const Environment<S>& environment() const { return env_; }

  ModelAttributes attributes() const {
    return {ms_.name(), ms_.n(), ms_.almost_kahler(), ms_.integrable(), ms_.lee_form().is_zero(tol()),
            ms_.model().is_abelian()};
  }

  EntryResult verify(const IdentityEntry& e) const {
    EntryResult r;
    r.id = e.id;
    r.group = e.group;
    r.suite = e.suite;
    r.kind = e.kind;
    r.anchor = e.statement;
    r.external = e.external;
    if (e.condition == Condition::almost_kahler && !ms_.almost_kahler()) {
      r.status = EntryStatus::skipped;
      r.guard = GuardStatus::inapplicable;
      r.residual = "-";
      r.detail = "requires dω = 0";
      return r;
    }
    try {
      switch (e.kind) {
        case EntryKind::equation: run_instances(e, r, [&](const std::string& l, const std::string& rh) {
            return equation(l, rh);
          });
          break;
        case EntryKind::derivation: run_instances(e, r, [&](const std::string& l, const std::string&) {
            return derivation_defect(l);
          });
          break;
        case EntryKind::bidegree: run_bidegree(e, r); break;
        case EntryKind::custom: run_custom(e, r); break;
      }
      if (!e.printed.empty()) {
        r.printed_holds = env_.difference(env_.evaluate(e.lhs), env_.evaluate(e.printed)).is_zero(tol());
      }
    } catch (const std::exception& ex) {
      r.status = EntryStatus::error;
      r.detail = ex.what();
      r.residual = "-";
    }
    return r;
  }

  Report run(const std::string& suite = "all", bool with_tables = false) const {
    Report rep;
    rep.mode = ScalarTraits<S>::mode;
    rep.model = attributes();
    for (const auto& e : catalog()) {
      if (suite_selects(suite, e)) rep.entries.push_back(verify(e));
    }
    if (with_tables || suite == "tables") {
      rep.figure1 = commutator_table();
      rep.figure2 = bidegree_table();
    }
    return rep;
  }

  /// Commutator table: each [row, Λ] and [row, L] resolved over the spanning operators.
  CommutatorTable commutator_table() const;
  /// Bidegree table: measured bidegrees of every placed operator.
  BidegreeTable bidegree_table() const;

 private:
  double tol() const { return ms_.tolerance(); }

  struct Outcome {
    S residual{};
    bool exercised = false;
  };

  static double mag(const S& s) { return ScalarTraits<S>::magnitude(s); }

  bool nonzero(const std::string& expr) const { return !env_.evaluate(expr).is_zero(tol()); }

  Outcome equation(const std::string& lhs, const std::string& rhs) const {
    auto l = env_.evaluate(lhs);
    auto rv = env_.evaluate(rhs);
    auto diff = env_.difference(l, rv);
    return {diff.max_entry(), !(l.is_zero(tol()) && rv.is_zero(tol()))};
  }

  /// Distance from the (super)derivation generated by the operator's values
  /// on degree-1 elements; P(1) must vanish as well.
  Outcome derivation_defect(const std::string& expr) const {
    auto v = env_.evaluate_op(expr);
    const Matrix<S>& p = v.m;
    Parity par = parity_of(p, tol());
    if (par == Parity::mixed) throw StructuralError("'" + expr + "' has no definite parity");
    const int n = ms_.n();
    std::vector<Multivector<S>> images;
    for (int a = 0; a < ms_.dim(); ++a) images.push_back(act(p, ms_.e(a)));
    const bool odd = par == Parity::odd;
    Matrix<S> ext = matrix_of<S>(n, [&](const Multivector<S>& bv) {
      Blade b = 0;
      for (Blade k = 0; k < bv.size(); ++k) {
        if (!(bv.at(k) == S{})) b = k;
      }
      Multivector<S> total(n);
      int position = 0;
      for (int j = 0; j < 2 * n; ++j) {
        if (!(b & (Blade{1} << j))) continue;
        Multivector<S> acc = Multivector<S>::scalar(n, S(1));
        for (int a = 0; a < 2 * n; ++a) {
          if (b & (Blade{1} << a)) acc = product(v.pic, acc, a == j ? images[a] : ms_.e(a));
        }
        if (odd && (position & 1)) total -= acc;
        else total += acc;
        ++position;
      }
      return total;
    });
    return {(p - ext).max_entry(), !p.is_zero(tol())};
  }

  template <class Fn>
  void run_instances(const IdentityEntry& e, EntryResult& r, Fn&& fn) const {
    const int dim = ms_.dim();
    std::vector<std::vector<std::pair<char, int>>> combos{{}};
    for (char letter : e.foreach) {
      std::vector<std::vector<std::pair<char, int>>> next;
      for (const auto& c : combos) {
        for (int k = 1; k <= dim; ++k) {
          auto d = c;
          d.push_back({letter, k});
          next.push_back(d);
        }
      }
      combos = std::move(next);
    }
    S worst{};
    bool exercised = false;
    for (const auto& combo : combos) {
      auto inst = [&](std::string t) {
        for (const auto& [letter, k] : combo) t = substitute(t, letter, k);
        return expand_sums(t, dim);
      };
      Outcome o = fn(inst(e.lhs), inst(e.rhs));
      if (mag(o.residual) > mag(worst)) worst = o.residual;
      bool guarded = o.exercised;
      if (!e.guards.empty()) {
        guarded = true;
        for (const auto& g : e.guards) guarded = guarded && nonzero(inst(g));
      }
      exercised = exercised || guarded;
      ++r.instances;
    }
    finish(r, worst, exercised);
  }

  void finish(EntryResult& r, const S& worst, bool exercised) const {
    r.residual = ScalarTraits<S>::str(worst);
    r.residual_value = mag(worst);
    r.guard = exercised ? GuardStatus::exercised : GuardStatus::vacuous;
    r.status = ScalarTraits<S>::is_zero(worst, tol()) ? EntryStatus::pass : EntryStatus::fail;
  }

  void run_bidegree(const IdentityEntry& e, EntryResult& r) const {
    auto v = env_.evaluate_op(expand_sums(e.lhs, ms_.dim()));
    if (v.pic != Picture::exterior) throw StructuralError("bidegrees are measured on exterior operators");
    S worst{};
    for (const auto& [bd, part] : ms_.bigrading().decompose(v.m, tol())) {
      r.measured.push_back(bd);
      if (std::find(e.bidegrees.begin(), e.bidegrees.end(), bd) == e.bidegrees.end()) {
        S m = part.max_entry();
        if (mag(m) > mag(worst)) worst = m;
      }
    }
    r.instances = 1;
    bool exercised = !v.is_zero(tol());
    for (const auto& g : e.guards) exercised = exercised && nonzero(g);
    finish(r, worst, exercised);
    if (r.status == EntryStatus::fail) {
      std::ostringstream os;
      os << "measured";
      for (const auto& bd : r.measured) os << " (" << bd.first << "," << bd.second << ")";
      r.detail = os.str();
    }
  }

  void run_custom(const IdentityEntry& e, EntryResult& r) const {
    static const std::map<std::string, CustomOutcome<S> (Verifier::*)() const> checks = {
        {"H_diagonal", &Verifier::check_h_diagonal},
        {"hodge", &Verifier::check_hodge},
        {"connection", &Verifier::check_connection},
        {"nijenhuis", &Verifier::check_nijenhuis},
        {"kn", &Verifier::check_kn},
        {"kn_twisted", &Verifier::check_kn_twisted},
        {"three_forms", &Verifier::check_three_forms},
        {"jacobi", &Verifier::check_jacobi},
        {"bigrading", &Verifier::check_bigrading},
        {"frame_invariance", &Verifier::check_frame_invariance},
        {"sigma_formula", &Verifier::check_sigma_formula},
        {"sigma_flat_formula", &Verifier::check_sigma_flat_formula},
        {"taucal_b", &Verifier::check_taucal_b},
    };
    auto it = checks.find(e.lhs);
    if (it == checks.end()) throw StructuralError("unknown custom check '" + e.lhs + "'");
    CustomOutcome<S> o = (this->*(it->second))();
    r.instances = 1;
    finish(r, o.residual, o.exercised);
    if (!o.detail.empty()) r.detail = o.detail;
  }

  // ---- custom checks

  static void keep_worst(S& worst, const S& candidate) {
    if (mag(candidate) > mag(worst)) worst = candidate;
  }
  static void keep_worst(S& worst, const Multivector<S>& v) {
    for (const auto& c : v.coeffs()) keep_worst(worst, c);
  }

  CustomOutcome<S> check_h_diagonal() const {
    const int n = ms_.n();
    Matrix<S> expected(ms_.space_dim());
    for (int k = 0; k <= 2 * n; ++k) expected += S(k - n) * degree_projector<S>(n, k);
    return {(ext_.get("H").matrix - expected).max_entry(), true, {}};
  }

  CustomOutcome<S> check_hodge() const {
    const int n = ms_.n();
    Matrix<S> star = matrix_of<S>(n, [](const Multivector<S>& v) { return hodge_star(v); });
    Matrix<S> rhs = S(-1) * (star * ms_.d() * star);
    return {(ms_.d_star() - rhs).max_entry(), !ms_.d().is_zero(tol()), {}};
  }

  CustomOutcome<S> check_connection() const {
    const auto& g = ms_.connection();
    const auto& m = ms_.model();
    S worst{};
    for (int a = 0; a < ms_.dim(); ++a) {
      for (int b = 0; b < ms_.dim(); ++b) {
        for (int c = 0; c < ms_.dim(); ++c) {
          keep_worst(worst, ScalarTraits<S>::from(g(c, a, b) + g(b, a, c)));
          keep_worst(worst, ScalarTraits<S>::from(g(c, a, b) - g(c, b, a) - m.c(c, a, b)));
        }
      }
    }
    return {worst, !g.is_zero(), {}};
  }

  CustomOutcome<S> check_nijenhuis() const {
    S worst{};
    for (int a = 0; a < ms_.dim(); ++a) {
      for (int b = 0; b < ms_.dim(); ++b) {
        keep_worst(worst, ms_.nijenhuis(a, b) + ms_.nijenhuis(b, a));
        keep_worst(worst, ms_.nijenhuis(ms_.e(a), ms_.j(ms_.e(b))) + ms_.j(ms_.nijenhuis(a, b)));
      }
    }
    return {worst, !ms_.integrable(), {}};
  }

  template <class Fn>
  CustomOutcome<S> over_triples(Fn&& fn, bool exercised) const {
    S worst{};
    for (int a = 0; a < ms_.dim(); ++a) {
      for (int b = 0; b < ms_.dim(); ++b) {
        for (int c = 0; c < ms_.dim(); ++c) keep_worst(worst, fn(ms_.e(a), ms_.e(b), ms_.e(c)));
      }
    }
    return {worst, exercised, {}};
  }

  CustomOutcome<S> check_kn() const {
    const auto& dw = ms_.d_omega();
    return over_triples(
        [&](const auto& x, const auto& y, const auto& z) {
          S lhs = S(2) * inner(ms_.nabla_j(x, y), z);
          S rhs = evaluate(dw, {x, y, z}) - evaluate(dw, {x, ms_.j(y), ms_.j(z)}) +
                  S(4) * inner(ms_.j(x), ms_.nijenhuis(y, z));
          return lhs - rhs;
        },
        !ms_.model().is_abelian());
  }

  CustomOutcome<S> check_kn_twisted() const {
    const auto& dw = ms_.d_omega();
    return over_triples(
        [&](const auto& x, const auto& y, const auto& z) {
          // J^{-1} = -J on vectors.
          S lhs = S(-2) * inner(ms_.j(ms_.nabla_j(ms_.j(x), y)), z);
          S rhs = evaluate(dw, {ms_.j(x), y, ms_.j(z)}) + evaluate(dw, {ms_.j(x), ms_.j(y), z}) -
                  S(4) * inner(ms_.j(x), ms_.nijenhuis(y, z));
          return lhs - rhs;
        },
        !ms_.model().is_abelian());
  }

  /// A deterministic complex 3-form with small integer coefficients.
  Multivector<S> random_three_form(std::mt19937& rng) const {
    std::uniform_int_distribution<int> dist(-3, 3);
    Multivector<S> out(ms_.n());
    for (Blade b = 0; b < out.size(); ++b) {
      if (degree(b) == 3) out.at(b) = ScalarTraits<S>::from(Rational(dist(rng)), Rational(dist(rng)));
    }
    return out;
  }

  CustomOutcome<S> check_three_forms() const {
    if (ms_.dim() < 3) return {S{}, false, "no 3-forms in dimension 2"};
    std::mt19937 rng(20240611u);
    const auto& bg = ms_.bigrading();
    std::vector<Multivector<S>> plus{ms_.d_omega_plus()}, minus{ms_.d_omega_minus()};
    for (int k = 0; k < 3; ++k) {
      auto split = three_form_split(bg, random_three_form(rng));
      plus.push_back(split.plus);
      minus.push_back(split.minus);
    }
    auto J = [&](const Multivector<S>& v) { return ms_.j(v); };
    S worst{};
    for (const auto& psi : plus) {
      auto o = over_triples(
          [&](const auto& x, const auto& y, const auto& z) {
            return evaluate(psi, {x, y, z}) - evaluate(psi, {J(x), J(y), z}) - evaluate(psi, {J(x), y, J(z)}) -
                   evaluate(psi, {x, J(y), J(z)});
          },
          true);
      keep_worst(worst, o.residual);
      for (int c = 0; c < ms_.dim(); ++c) {
        Multivector<S> z = ms_.e(c), lhs(ms_.n()), rhs(ms_.n());
        for (int a = 0; a < ms_.dim(); ++a) {
          for (int b = 0; b < ms_.dim(); ++b) {
            Multivector<S> ea = ms_.e(a), eb = ms_.e(b), ab = wedge(ea, eb);
            lhs += (evaluate(psi, {ea, z, eb}) - evaluate(psi, {ea, J(z), J(eb)})) * ab;
            rhs += (evaluate(psi, {ea, z, eb}) + evaluate(psi, {J(ea), z, J(eb)})) * ab;
          }
        }
        keep_worst(worst, lhs - ScalarTraits<S>::from(Rational(1, 2)) * rhs);
      }
    }
    for (const auto& xi : minus) {
      auto o = over_triples(
          [&](const auto& x, const auto& y, const auto& z) {
            S a = evaluate(xi, {J(x), y, z}), b = evaluate(xi, {x, J(y), z}), c = evaluate(xi, {x, y, J(z)});
            return mag(a - b) > mag(a - c) ? a - b : a - c;
          },
          true);
      keep_worst(worst, o.residual);
    }
    return {worst, true, {}};
  }

  /// Super-Jacobi identity on deterministic random triples of zoo operators
  /// of definite parity.
  CustomOutcome<S> check_jacobi() const {
    std::vector<const LinearOperator<S>*> pool;
    for (const auto& name : ext_.names()) {
      const auto& op = ext_.get(name);
      if (op.parity(tol()) != Parity::mixed) pool.push_back(&op);
    }
    std::mt19937 rng(7u);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    S worst{};
    bool exercised = false;
    for (int t = 0; t < 100; ++t) {
      const auto& p = pool[pick(rng)]->matrix;
      const auto& q = pool[pick(rng)]->matrix;
      const auto& r = pool[pick(rng)]->matrix;
      const bool pq_odd = parity_of(p, tol()) == Parity::odd && parity_of(q, tol()) == Parity::odd;
      Matrix<S> lhs = supercommutator(p, supercommutator(q, r, tol()), tol());
      Matrix<S> rhs = supercommutator(supercommutator(p, q, tol()), r, tol());
      Matrix<S> swap = supercommutator(q, supercommutator(p, r, tol()), tol());
      if (pq_odd) rhs -= swap;
      else rhs += swap;
      keep_worst(worst, (lhs - rhs).max_entry());
      exercised = exercised || !lhs.is_zero(tol());
    }
    return {worst, exercised, {}};
  }

  CustomOutcome<S> check_bigrading() const {
    const int n = ms_.n();
    const auto& bg = ms_.bigrading();
    const auto& js = ms_.structure();
    Matrix<S> ja(ms_.space_dim()), jd(ms_.space_dim()), id(ms_.space_dim());
    for (int p = 0; p <= n; ++p) {
      for (int q = 0; q <= n; ++q) {
        Matrix<S> pr = bg.projector(p, q);
        ja += i_power<S>(p - q) * pr;
        jd += (ScalarTraits<S>::i() * S(p - q)) * pr;
        id += pr;
      }
    }
    S worst{};
    keep_worst(worst, (ja - js.ja).max_entry());
    keep_worst(worst, (jd - js.jd).max_entry());
    keep_worst(worst, (id - Matrix<S>::identity(ms_.space_dim())).max_entry());
    return {worst, true, {}};
  }

  /// Relabel the frame by g: e_i -> s_i e_{π(i)}, e_{i+n} -> s_i e_{π(i)+n},
  /// then J (which commutes with g). The Dirac operator built from the new
  /// structure constants must equal G^{-1} D G.
  CustomOutcome<S> check_frame_invariance() const {
    const int n = ms_.n(), dim = ms_.dim();
    // gi[r][a] ∈ {-1, 0, 1}: column a is the image of e_a.
    std::vector<std::vector<int>> gi(dim, std::vector<int>(dim, 0));
    for (int i = 0; i < n; ++i) {
      const int target = (i + 1) % n;
      const int sign = i == 0 ? -1 : 1;
      gi[target + n][i] = sign;
      gi[target][i + n] = -sign;
    }
    const auto& m = ms_.model();
    LieModel moved(m.name() + "'", n);
    // g is a signed permutation, so g^{-1} = g^T and c'^C_{AB} = Σ g_{rA} g_{sB} g_{tC} c^t_{rs}.
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) {
        for (int c = 0; c < dim; ++c) {
          Rational acc(0);
          for (int r = 0; r < dim; ++r) {
            for (int s = 0; s < dim; ++s) {
              for (int t = 0; t < dim; ++t) {
                const int sign = gi[r][a] * gi[s][b] * gi[t][c];
                if (sign != 0) acc = acc + Rational(sign) * m.c(t, r, s);
              }
            }
          }
          moved.c(c, a, b) = acc;
        }
      }
    }
    FrameMap<S> g(dim, std::vector<S>(dim));
    for (int r = 0; r < dim; ++r) {
      for (int a = 0; a < dim; ++a) g[r][a] = S(gi[r][a]);
    }
    ModelSpace<S> other(moved, tol());
    Matrix<S> big = extend_algebra_map(n, g, Picture::clifford);
    Matrix<S> d_here = dirac_operator(ms_);
    Matrix<S> pulled = big.adjoint() * d_here * big;
    return {(pulled - dirac_operator(other)).max_entry(), !d_here.is_zero(tol()), {}};
  }

  CustomOutcome<S> check_sigma_formula() const {
    S worst{};
    bool exercised = false;
    for (int a = 0; a < ms_.dim(); ++a) {
      const Matrix<S>& sig = cl_.get("sigma" + std::to_string(a + 1)).matrix;
      exercised = exercised || !sig.is_zero(tol());
      for (int b = 0; b < ms_.dim(); ++b) {
        keep_worst(worst, act(sig, ms_.e(b)) - sigma_by_formula(ms_, a, ms_.e(b)));
      }
    }
    return {worst, exercised, {}};
  }

  CustomOutcome<S> check_sigma_flat_formula() const {
    const auto& psi = ms_.d_omega_plus();
    S worst{};
    bool exercised = false;
    for (int a = 0; a < ms_.dim(); ++a) {
      const Matrix<S>& sig = cl_.get("sigmaf" + std::to_string(a + 1)).matrix;
      exercised = exercised || !sig.is_zero(tol());
      const Multivector<S> x = ms_.e(a);
      for (int c = 0; c < ms_.dim(); ++c) {
        // α = θ^C, so α(e_C') = δ_{CC'}.
        Multivector<S> expected(ms_.n());
        for (int b = 0; b < ms_.dim(); ++b) {
          expected.at(Blade{1} << b) = evaluate(psi, {x, ms_.e(c), ms_.e(b)}) -
                                       evaluate(psi, {x, ms_.j(ms_.e(c)), ms_.j(ms_.e(b))});
        }
        keep_worst(worst, act(sig, ms_.e(c)) - expected);
      }
    }
    return {worst, exercised, {}};
  }

  /// τ₊^c on 1-forms: -J*θ∧α + ½ Σ dω⁺(Je_A, e_C, Je_B) α(e_C) θ^A∧θ^B.
  CustomOutcome<S> check_taucal_b() const {
    const auto& psi = ms_.d_omega_plus();
    Matrix<S> tpc = conjugate(ms_.structure(), ext_.get("tau_plus").matrix, Picture::exterior);
    const S half = ScalarTraits<S>::from(Rational(1, 2));
    S worst{};
    for (int c = 0; c < ms_.dim(); ++c) {
      Multivector<S> alpha = ms_.e(c);
      Multivector<S> expected = S(-1) * wedge(ms_.jstar_lee_form(), alpha);
      for (int a = 0; a < ms_.dim(); ++a) {
        for (int b = 0; b < ms_.dim(); ++b) {
          S v = evaluate(psi, {ms_.j(ms_.e(a)), ms_.e(c), ms_.j(ms_.e(b))});
          if (!(v == S{})) expected += (half * v) * wedge(ms_.e(a), ms_.e(b));
        }
      }
      keep_worst(worst, act(tpc, alpha) - expected);
    }
    return {worst, !tpc.is_zero(tol()), {}};
  }

  ModelSpace<S> ms_;
  ExteriorZoo<S> ext_;
  CliffordZoo<S> cl_;
  Environment<S> env_;
};

// ---- Commutator table span solver

namespace detail {

/// Incremental row echelon over flattened matrices. Each stored row keeps
/// the combination of named atoms it came from, so a solved target comes
/// back as coefficients on the atoms.
template <Scalar S>
class SpanSolver {
 public:
  explicit SpanSolver(double tol) : tol_(tol) {}

  /// Adds an atom. Returns the relation expressing it through earlier atoms
  /// when it is dependent.
  std::optional<std::vector<S>> add(const std::string& name, const std::vector<S>& vec) {
    names_.push_back(name);
    for (auto& r : rows_) r.combo.resize(names_.size());
    std::vector<S> combo(names_.size());
    combo.back() = S(1);
    std::vector<S> v = vec;
    reduce(v, combo);
    std::size_t pivot = first_nonzero(v);
    if (pivot == v.size()) {
      // v - Σ ... = 0 means atom = -(combo without the atom's own unit).
      std::vector<S> rel(names_.size() - 1);
      for (std::size_t k = 0; k + 1 < names_.size(); ++k) rel[k] = S(-1) * combo[k];
      dependent_.push_back(true);
      return rel;
    }
    S inv = S(1) / v[pivot];
    for (auto& x : v) x = inv * x;
    for (auto& x : combo) x = inv * x;
    rows_.push_back({pivot, std::move(v), std::move(combo)});
    dependent_.push_back(false);
    return std::nullopt;
  }

  /// Coefficients on atoms, or nullopt when the target is outside the span.
  std::optional<std::vector<S>> solve(const std::vector<S>& target) const {
    std::vector<S> v = target;
    std::vector<S> combo(names_.size());
    // Track -coefficients: after reduction v = target - Σ c_k atom_k.
    for (const auto& r : rows_) {
      const S f = v[r.pivot];
      if (ScalarTraits<S>::is_zero(f, 0.0)) continue;
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (!(r.vec[k] == S{})) v[k] -= f * r.vec[k];
      }
      for (std::size_t k = 0; k < r.combo.size(); ++k) {
        if (!(r.combo[k] == S{})) combo[k] += f * r.combo[k];
      }
    }
    if (first_nonzero(v) != v.size()) return std::nullopt;
    return combo;
  }

  const std::vector<std::string>& names() const { return names_; }

 private:
  struct Row {
    std::size_t pivot;
    std::vector<S> vec;
    std::vector<S> combo;
  };

  void reduce(std::vector<S>& v, std::vector<S>& combo) const {
    for (const auto& r : rows_) {
      const S f = v[r.pivot];
      if (ScalarTraits<S>::is_zero(f, 0.0)) continue;
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (!(r.vec[k] == S{})) v[k] -= f * r.vec[k];
      }
      for (std::size_t k = 0; k < r.combo.size(); ++k) {
        if (!(r.combo[k] == S{})) combo[k] -= f * r.combo[k];
      }
    }
  }

  std::size_t first_nonzero(const std::vector<S>& v) const {
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!ScalarTraits<S>::is_zero(v[k], tol_)) return k;
    }
    return v.size();
  }

  double tol_;
  std::vector<std::string> names_;
  std::vector<Row> rows_;
  std::vector<bool> dependent_;
};

template <Scalar S>
std::vector<S> flatten(const Matrix<S>& m) {
  std::vector<S> out(m.dim() * m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) out[r * m.dim() + c] = m(r, c);
  }
  return out;
}

/// "2i·τ_∂̄* - λ" style rendering of a combination.
template <Scalar S>
std::string render_combination(const std::vector<std::string>& names, const std::vector<S>& coeffs) {
  std::string out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (ScalarTraits<S>::is_zero(coeffs[k], 1e-12)) continue;
    std::string c = ScalarTraits<S>::str(coeffs[k]);
    std::string term;
    if (c == "1") term = names[k];
    else if (c == "-1") term = "-" + names[k];
    else if (c.find_first_of("+", 1) != std::string::npos) term = "(" + c + ")*" + names[k];
    else term = c + "*" + names[k];
    if (out.empty()) out = term;
    else if (term[0] == '-') out += " - " + term.substr(1);
    else out += " + " + term;
  }
  return out.empty() ? "0" : out;
}

/// Spanning operators in preference order: d parts, λ, τ, their adjoints, then ρ.
inline const std::vector<std::string>& span_atoms() {
  static const std::vector<std::string> atoms = [] {
    std::vector<std::string> v;
    const char* parts[] = {"mu", "del", "delbar", "mubar"};
    for (const char* p : parts) v.push_back(p);
    for (const char* p : parts) v.push_back(std::string("lambda_") + p);
    for (const char* p : parts) v.push_back(std::string("tau_") + p);
    const std::size_t base = v.size();
    for (std::size_t k = 0; k < base; ++k) v.push_back(v[k] + "^*");
    for (const char* p : parts) v.push_back(std::string("rho_") + p);
    for (const char* p : parts) v.push_back(std::string("rho_") + p + "^*");
    return v;
  }();
  return atoms;
}

}  // namespace detail

template <Scalar S>
CommutatorTable Verifier<S>::commutator_table() const {
  CommutatorTable table;
  detail::SpanSolver<S> solver(tol());
  for (const auto& atom : detail::span_atoms()) {
    auto rel = solver.add(atom, detail::flatten(env_.evaluate_op(atom).m));
    if (rel) {
      std::vector<std::string> earlier(solver.names().begin(), solver.names().end() - 1);
      table.coincidences.push_back(atom + " = " + detail::render_combination<S>(earlier, *rel));
    }
  }
  for (const auto& r : figure1_printed()) {
    auto [lam, l] = figure1_expected(r);
    for (int col = 0; col < 2; ++col) {
      CommutatorCell cell;
      cell.row = r.row;
      cell.row_label = r.label;
      cell.column = col == 0 ? "Lambda" : "L";
      cell.expected = col == 0 ? lam : l;
      cell.printed = col == 0 ? r.lambda_cell : r.l_cell;
      cell.external = std::string(r.row).rfind("rho_", 0) == 0;
      auto value = env_.evaluate_op("[" + cell.row + ", " + cell.column + "]");
      auto coeffs = solver.solve(detail::flatten(value.m));
      if (!coeffs) {
        cell.status = "UNRESOLVED";
        cell.computed = "outside the span";
        ++table.unresolved;
      } else {
        cell.computed = detail::render_combination<S>(solver.names(), *coeffs);
        bool same = env_.difference(value, env_.evaluate(cell.expected)).is_zero(tol());
        cell.status = same ? "match" : "mismatch";
        if (!same) ++table.mismatches;
      }
      table.cells.push_back(std::move(cell));
    }
  }
  return table;
}

template <Scalar S>
BidegreeTable Verifier<S>::bidegree_table() const {
  BidegreeTable table;
  for (const auto& [op, bd] : figure2_placements()) {
    BidegreeCell cell;
    cell.op = op;
    cell.declared = bd;
    auto v = env_.evaluate_op(op);
    for (const auto& [m, part] : ms_.bigrading().decompose(v.m, tol())) cell.measured.push_back(m);
    if (cell.measured.empty()) cell.status = "zero";
    else if (cell.measured.size() == 1 && cell.measured.front() == bd) cell.status = "placed";
    else cell.status = "misplaced";
    if (cell.status == "misplaced") ++table.misplaced;
    table.cells.push_back(std::move(cell));
  }
  return table;
}

// ---- report rendering

inline std::string bidegree_str(const Bidegree& b) {
  return "(" + std::to_string(b.first) + "," + std::to_string(b.second) + ")";
}

inline nlohmann::ordered_json report_json(const Report& rep) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["model"] = {{"name", rep.model.name},
                {"n", rep.model.n},
                {"almost_kahler", rep.model.almost_kahler},
                {"integrable", rep.model.integrable},
                {"lee_form_zero", rep.model.lee_zero}};
  j["mode"] = rep.mode;
  j["summary"] = {{"entries", rep.entries.size()},
                  {"pass", rep.count(EntryStatus::pass)},
                  {"fail", rep.count(EntryStatus::fail)},
                  {"error", rep.count(EntryStatus::error)},
                  {"skipped", rep.count(EntryStatus::skipped)},
                  {"exercised", rep.count(GuardStatus::exercised)},
                  {"vacuous", rep.count(GuardStatus::vacuous)},
                  {"failing", rep.failing_ids()}};
  auto entries = ordered_json::array();
  for (const auto& e : rep.entries) {
    ordered_json x;
    x["id"] = e.id;
    x["group"] = e.group;
    x["suite"] = suite_name(e.suite);
    x["kind"] = kind_name(e.kind);
    x["anchor"] = e.anchor;
    x["status"] = status_name(e.status);
    x["residual"] = e.residual;
    x["guard"] = guard_name(e.guard);
    if (e.instances > 1) x["instances"] = e.instances;
    if (!e.measured.empty()) {
      auto m = ordered_json::array();
      for (const auto& b : e.measured) m.push_back(bidegree_str(b));
      x["measured"] = m;
    }
    if (e.printed_holds) x["printed_form_holds"] = *e.printed_holds;
    if (e.external) x["externally_sourced"] = true;
    if (!e.detail.empty()) x["detail"] = e.detail;
    entries.push_back(x);
  }
  j["entries"] = entries;
  if (rep.figure1) {
    ordered_json t;
    auto cells = ordered_json::array();
    for (const auto& c : rep.figure1->cells) {
      ordered_json x = {{"row", c.row}, {"column", c.column}, {"computed", c.computed},
                        {"expected", c.expected}, {"status", c.status}};
      if (c.printed != c.expected) x["printed"] = c.printed;
      if (c.external) x["externally_sourced"] = true;
      cells.push_back(x);
    }
    t["cells"] = cells;
    t["coincidences"] = rep.figure1->coincidences;
    t["unresolved"] = rep.figure1->unresolved;
    t["mismatches"] = rep.figure1->mismatches;
    j["figure1"] = t;
  }
  if (rep.figure2) {
    ordered_json t;
    auto cells = ordered_json::array();
    for (const auto& c : rep.figure2->cells) {
      auto m = ordered_json::array();
      for (const auto& b : c.measured) m.push_back(bidegree_str(b));
      cells.push_back({{"operator", c.op}, {"declared", bidegree_str(c.declared)}, {"measured", m},
                       {"status", c.status}});
    }
    t["cells"] = cells;
    t["misplaced"] = rep.figure2->misplaced;
    j["figure2"] = t;
  }
  return j;
}

inline std::string md_escape(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '*' || c == '_') out += std::string("\\") + c;
    else out += c;
  }
  return out;
}

inline std::string report_markdown(const Report& rep) {
  std::ostringstream os;
  os << "# Identity report: " << rep.model.name << " (" << rep.mode << ")\n\n";
  os << "n = " << rep.model.n << ", dω = 0: " << (rep.model.almost_kahler ? "yes" : "no")
     << ", N = 0: " << (rep.model.integrable ? "yes" : "no") << ", θ = 0: " << (rep.model.lee_zero ? "yes" : "no")
     << "\n\n";
  os << "pass " << rep.count(EntryStatus::pass) << ", fail " << rep.count(EntryStatus::fail) << ", error "
     << rep.count(EntryStatus::error) << ", skipped " << rep.count(EntryStatus::skipped) << "; exercised "
     << rep.count(GuardStatus::exercised) << ", vacuous " << rep.count(GuardStatus::vacuous) << "\n\n";
  os << "| id | anchor | residual | guard | status |\n|---|---|---|---|---|\n";
  for (const auto& e : rep.entries) {
    os << "| " << md_escape(e.id) << " | " << md_escape(e.anchor) << " | " << md_escape(e.residual) << " | "
       << guard_name(e.guard) << " | " << status_name(e.status);
    if (!e.detail.empty()) os << " (" << md_escape(e.detail) << ")";
    os << " |\n";
  }
  if (rep.figure1) {
    os << "\n## Commutators with Λ and L\n\n| row | [row, Λ] | [row, L] |\n|---|---|---|\n";
    const auto& cells = rep.figure1->cells;
    for (std::size_t k = 0; k + 1 < cells.size(); k += 2) {
      auto show = [](const CommutatorCell& c) {
        std::string s = md_escape(c.computed);
        if (c.status != "match") s += " **" + c.status + "**";
        return s;
      };
      os << "| " << md_escape(cells[k].row) << " | " << show(cells[k]) << " | " << show(cells[k + 1]) << " |\n";
    }
    if (!rep.figure1->coincidences.empty()) {
      os << "\nCoincidences on this model:\n\n";
      for (const auto& c : rep.figure1->coincidences) os << "- " << md_escape(c) << "\n";
    }
  }
  if (rep.figure2) {
    os << "\n## Bidegrees\n\n| operator | declared | measured | status |\n|---|---|---|---|\n";
    for (const auto& c : rep.figure2->cells) {
      std::string m;
      for (const auto& b : c.measured) m += (m.empty() ? "" : " ") + bidegree_str(b);
      os << "| " << md_escape(c.op) << " | " << bidegree_str(c.declared) << " | " << (m.empty() ? "-" : m) << " | "
         << c.status << " |\n";
    }
  }
  return os.str();
}

}  // namespace kahler
