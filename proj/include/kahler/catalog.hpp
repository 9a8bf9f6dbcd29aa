#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kahler/bigrading.hpp"

namespace kahler {

enum class EntryKind { equation, bidegree, derivation, custom };
enum class Condition { always, almost_kahler };
enum class Suite { elementary, clifford, exterior, tables };

inline const char* suite_name(Suite s) {
  switch (s) {
    case Suite::elementary: return "elementary";
    case Suite::clifford: return "clifford";
    case Suite::exterior: return "exterior";
    default: return "tables";
  }
}

inline const char* kind_name(EntryKind k) {
  switch (k) {
    case EntryKind::equation: return "equation";
    case EntryKind::bidegree: return "bidegree";
    case EntryKind::derivation: return "derivation";
    default: return "custom";
  }
}

/// One catalogued identity.
///
/// equation:   lhs = rhs, both expressions in the Environment language.
/// bidegree:   every nonzero bidegree component of lhs lies in `bidegrees`.
/// derivation: lhs is a (super)derivation of the product of its picture and kills 1.
/// custom:     `lhs` names a built-in check run by the verifier.
///
/// `foreach` lists frame-index letters; each `{X}` in the texts ranges over
/// 1..2n and the entry's residual is the worst over all instances.
struct IdentityEntry {
  std::string id;
  int group = 0;
  Suite suite = Suite::elementary;
  EntryKind kind = EntryKind::equation;
  std::string statement;
  std::string lhs;
  std::string rhs;
  std::vector<std::string> guards;
  Condition condition = Condition::always;
  std::string foreach;
  std::vector<Bidegree> bidegrees;
  /// Commutator-table cells only: the cell as printed, when it differs from `rhs`.
  std::string printed;
  std::string note;
  bool external = false;
};

namespace detail {

inline Suite suite_of_group(int g) {
  switch (g) {
    case 1: return Suite::elementary;
    case 2: return Suite::clifford;
    case 6:
    case 7: return Suite::tables;
    default: return Suite::exterior;
  }
}

class CatalogBuilder {
 public:
  std::vector<IdentityEntry> entries;

  IdentityEntry& eq(int group, std::string id, std::string statement, std::string lhs, std::string rhs,
                    std::vector<std::string> guards = {}) {
    IdentityEntry e;
    e.id = std::move(id);
    e.group = group;
    e.suite = suite_of_group(group);
    e.kind = EntryKind::equation;
    e.statement = std::move(statement);
    e.lhs = std::move(lhs);
    e.rhs = std::move(rhs);
    e.guards = std::move(guards);
    entries.push_back(std::move(e));
    return entries.back();
  }

  IdentityEntry& custom(int group, std::string id, std::string statement, std::string key) {
    IdentityEntry e;
    e.id = std::move(id);
    e.group = group;
    e.suite = suite_of_group(group);
    e.kind = EntryKind::custom;
    e.statement = std::move(statement);
    e.lhs = std::move(key);
    entries.push_back(std::move(e));
    return entries.back();
  }

  IdentityEntry& derivation(int group, std::string id, std::string statement, std::string op) {
    IdentityEntry e;
    e.id = std::move(id);
    e.group = group;
    e.suite = suite_of_group(group);
    e.kind = EntryKind::derivation;
    e.statement = std::move(statement);
    e.lhs = std::move(op);
    entries.push_back(std::move(e));
    return entries.back();
  }

  IdentityEntry& bidegree(int group, std::string id, std::string statement, std::string op,
                          std::vector<Bidegree> bds) {
    IdentityEntry e;
    e.id = std::move(id);
    e.group = group;
    e.suite = suite_of_group(group);
    e.kind = EntryKind::bidegree;
    e.statement = std::move(statement);
    e.lhs = std::move(op);
    e.bidegrees = std::move(bds);
    entries.push_back(std::move(e));
    return entries.back();
  }
};

/// Pure-bidegree exterior operators with their bidegrees.
inline const std::vector<std::pair<std::string, Bidegree>>& pure_operators() {
  static const std::vector<std::pair<std::string, Bidegree>> ops = [] {
    std::vector<std::pair<std::string, Bidegree>> v = {
        {"mu", {2, -1}}, {"del", {1, 0}}, {"delbar", {0, 1}}, {"mubar", {-1, 2}},
        {"L", {1, 1}},   {"Lambda", {-1, -1}}, {"H", {0, 0}},
        {"lambda_mu", {3, 0}}, {"lambda_del", {2, 1}}, {"lambda_delbar", {1, 2}}, {"lambda_mubar", {0, 3}},
        {"tau_mu", {2, -1}},   {"tau_del", {1, 0}},    {"tau_delbar", {0, 1}},    {"tau_mubar", {-1, 2}},
        {"rho_mu", {2, -1}},   {"rho_del", {1, 0}},    {"rho_delbar", {0, 1}},    {"rho_mubar", {-1, 2}}};
    const std::size_t base = v.size();
    for (std::size_t k = 0; k < base; ++k) {
      const auto& [name, bd] = v[k];
      if (name == "L" || name == "Lambda" || name == "H") continue;
      v.push_back({name + "^*", {-bd.first, -bd.second}});
    }
    return v;
  }();
  return ops;
}

inline std::string i_power_literal(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return "1";
    case 1: return "i";
    case 2: return "-1";
    default: return "-i";
  }
}

/// Adjoint / conjugate companions of `[P, X] = rhs` with X ∈ {L, Lambda}:
/// ([P,X])* = -[P*, X*] for odd P, and conjugation is an algebra automorphism
/// fixing L and Λ.
inline void companions(CatalogBuilder& b, int group, const std::string& id, const std::string& statement,
                       const std::string& p, const std::string& x, const std::string& rhs,
                       const std::vector<std::string>& guards, Condition cond) {
  const std::string x_adj = x == "L" ? "Lambda" : "L";
  const bool zero = rhs == "0";
  b.eq(group, id + ".adj", "adjoint of " + statement, "-[" + p + "^*, " + x_adj + "]",
       zero ? "0" : "(" + rhs + ")^*", guards)
      .condition = cond;
  b.eq(group, id + ".conj", "conjugate of " + statement, "[" + p + "^c, " + x + "]",
       zero ? "0" : "(" + rhs + ")^c", guards)
      .condition = cond;
}

}  // namespace detail

/// Commutator-table rows: operator, printed [row, Λ], printed [row, L].
struct Figure1Row {
  const char* row;
  const char* label;
  const char* lambda_cell;
  const char* l_cell;
};

inline const std::vector<Figure1Row>& figure1_printed() {
  static const std::vector<Figure1Row> rows = {
      {"d", "d", "d^c^* + tau^c^*", "lambda"},
      {"mu", "μ", "i*(mubar^* + tau_mubar^*)", "lambda_mu"},
      {"tau_mu", "τ_μ", "-2i*tau_mubar^*", "-3*lambda_mu"},
      {"mubar", "μ̄", "-i*(mu^* + tau_mu^*)", "lambda_mubar"},
      {"tau_mubar", "τ_μ̄", "2i*tau_mu^*", "-3*lambda_mubar"},
      {"del", "∂", "-i*(delbar^* + tau_delbar^*)", "lambda_del"},
      {"tau_del", "τ_∂", "2i*tau_delbar^*", "-3*lambda_del"},
      {"rho_del", "ρ_∂", "-i*rho_delbar^* + tau_delbar^*", "i*lambda_del"},
      {"delbar", "∂̄", "i*(del^* + tau_del^*)", "lambda_delbar"},
      {"tau_delbar", "τ_∂̄", "-2i*tau_del^*", "-3*lambda_delbar"},
      {"rho_delbar", "ρ_∂̄", "i*rho_del^* + tau_del^*", "-i*lambda_delbar"},
      {"lambda_mubar", "λ_μ̄", "-tau_mubar", "0"},
      {"lambda_delbar", "λ_∂̄", "-tau_delbar", "0"},
      {"lambda_del", "λ_∂", "-tau_del", "0"},
      {"lambda_mu", "λ_μ", "-tau_mu", "0"},
      {"d^*", "d*", "-lambda^*", "-(d^c + tau^c)"},
      {"mu^*", "μ*", "i*(mubar + tau_mubar)", "-lambda_mu^*"},
      {"tau_mu^*", "τ_μ*", "-2i*tau_mubar", "3*lambda_mu^*"},
      {"mubar^*", "μ̄*", "-i*(mu + tau_mu)", "-lambda_mubar^*"},
      {"tau_mubar^*", "τ_μ̄*", "2i*tau_mu", "3*lambda_mubar^*"},
      {"del^*", "∂*", "-i*(delbar + tau_delbar)", "-lambda_del^*"},
      {"tau_del^*", "τ_∂*", "2i*tau_delbar", "3*lambda_del^*"},
      {"rho_del^*", "ρ_∂*", "-i*rho_delbar - tau_delbar", "i*lambda_del^*"},
      {"delbar^*", "∂̄*", "i*(del + tau_del)", "-lambda_delbar^*"},
      {"tau_delbar^*", "τ_∂̄*", "-2i*tau_del", "3*lambda_delbar^*"},
      {"rho_delbar^*", "ρ_∂̄*", "i*rho_del - tau_del", "-i*lambda_del^*"},
      {"lambda_mubar^*", "λ_μ̄*", "tau_mubar^*", "0"},
      {"lambda_delbar^*", "λ_∂̄*", "tau_delbar^*", "0"},
      {"lambda_del^*", "λ_∂*", "tau_del^*", "0"},
      {"lambda_mu^*", "λ_μ*", "-i*tau_mu^*", "0"},
  };
  return rows;
}

/// The cell values that actually hold, keyed by row. In the adjoint half the
/// printed Λ and L cells are exchanged (for odd P, [P*, L] = -([P, Λ])* and
/// [P*, Λ] = -([P, L])*), except in the d* row; two cells also carry
/// misprints beyond the exchange.
inline std::pair<std::string, std::string> figure1_expected(const Figure1Row& r) {
  const std::string row = r.row;
  const bool adjoint_half = row.size() > 2 && row.substr(row.size() - 2) == "^*";
  if (!adjoint_half || row == "d^*") return {r.lambda_cell, r.l_cell};
  std::string lam = r.l_cell, l = r.lambda_cell;
  if (row == "rho_delbar^*") lam = "-i*lambda_delbar^*";
  if (row == "lambda_mu^*") l = "tau_mu^*";
  return {lam, l};
}

/// Bidegree table: operator expressions and the bidegree cell each is placed in.
inline const std::vector<std::pair<std::string, Bidegree>>& figure2_placements() {
  static const std::vector<std::pair<std::string, Bidegree>> cells = {
      {"[lambda_mubar, L]", {1, 4}},
      {"lambda_mubar", {0, 3}},     {"[mubar, L]", {0, 3}},        {"[tau_mubar, L]", {0, 3}},
      {"[lambda_delbar, L]", {2, 3}},
      {"mubar", {-1, 2}},           {"tau_mubar", {-1, 2}},        {"[mu^*, L]", {-1, 2}},
      {"[tau_mu^*, L]", {-1, 2}},   {"[lambda_mubar, Lambda]", {-1, 2}},
      {"lambda_delbar", {1, 2}},    {"[delbar, L]", {1, 2}},       {"[tau_delbar, L]", {1, 2}},
      {"[lambda_del, L]", {3, 2}},
      {"mu^*", {-2, 1}},            {"tau_mu^*", {-2, 1}},         {"[lambda_mu^*, L]", {-2, 1}},
      {"[mubar, Lambda]", {-2, 1}}, {"[tau_mubar, Lambda]", {-2, 1}},
      {"delbar", {0, 1}},           {"tau_delbar", {0, 1}},        {"[del^*, L]", {0, 1}},
      {"[tau_del^*, L]", {0, 1}},   {"[lambda_delbar, Lambda]", {0, 1}},
      {"lambda_del", {2, 1}},       {"[del, L]", {2, 1}},          {"[tau_del, L]", {2, 1}},
      {"[lambda_mu, L]", {4, 1}},
      {"lambda_mu^*", {-3, 0}},     {"[mu^*, Lambda]", {-3, 0}},   {"[tau_mu^*, Lambda]", {-3, 0}},
      {"del^*", {-1, 0}},           {"tau_del^*", {-1, 0}},        {"[lambda_del^*, L]", {-1, 0}},
      {"[delbar, Lambda]", {-1, 0}}, {"[tau_delbar, Lambda]", {-1, 0}},
      {"del", {1, 0}},              {"tau_del", {1, 0}},           {"[delbar^*, L]", {1, 0}},
      {"[tau_delbar^*, L]", {1, 0}}, {"[lambda_del, Lambda]", {1, 0}},
      {"lambda_mu", {3, 0}},        {"[mu, L]", {3, 0}},           {"[tau_mu, L]", {3, 0}},
      {"[lambda_mu^*, Lambda]", {-4, -1}},
      {"lambda_del^*", {-2, -1}},   {"[del^*, Lambda]", {-2, -1}}, {"[tau_del^*, Lambda]", {-2, -1}},
      {"delbar^*", {0, -1}},        {"tau_delbar^*", {0, -1}},     {"[lambda_delbar^*, L]", {0, -1}},
      {"[del, Lambda]", {0, -1}},   {"[tau_del, Lambda]", {0, -1}},
      {"mu", {2, -1}},              {"tau_mu", {2, -1}},           {"[mubar^*, L]", {2, -1}},
      {"[tau_mubar^*, L]", {2, -1}}, {"[lambda_mu, Lambda]", {2, -1}},
      {"[lambda_del^*, Lambda]", {-3, -2}},
      {"lambda_delbar^*", {-1, -2}}, {"[delbar^*, Lambda]", {-1, -2}}, {"[tau_delbar^*, Lambda]", {-1, -2}},
      {"mubar^*", {1, -2}},         {"tau_mubar^*", {1, -2}},      {"[lambda_mubar^*, L]", {1, -2}},
      {"[mu, Lambda]", {1, -2}},    {"[tau_mu, Lambda]", {1, -2}},
      {"[lambda_delbar^*, Lambda]", {-2, -3}},
      {"lambda_mubar^*", {0, -3}},  {"[mubar^*, Lambda]", {0, -3}}, {"[tau_mubar^*, Lambda]", {0, -3}},
      {"[lambda_mubar^*, Lambda]", {-1, -4}},
  };
  return cells;
}

inline std::string slug(std::string s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') out += c;
    else if (c == '*') out += "_adj";
    else if (c == ',') out += ".";
  }
  return out;
}

/// The complete identity catalog, in a fixed order.
inline const std::vector<IdentityEntry>& catalog() {
  static const std::vector<IdentityEntry> entries = [] {
    using detail::CatalogBuilder;
    CatalogBuilder b;

    // ---- Group 1: elementary properties and structural invariants.
    b.eq(1, "elem.a", "♭∘J∘♯ = -J* on 1-forms", "T(Jv_cl)", "-Jv");
    b.eq(1, "elem.d", "♭∘J_d∘♯ = -J_d*", "T(Jd_cl)", "-Jd");
    b.eq(1, "elem.e", "♭∘J_a∘♯ = (-1)^k J_a* on k-forms", "T(Ja_cl)", "parity*Ja");
    b.eq(1, "elem.f.ja", "(J_a*)* = (-1)^k J_a*", "Ja^*", "parity*Ja");
    b.eq(1, "elem.f.jd", "(J_d*)* = -J_d*", "Jd^*", "-Jd");
    b.eq(1, "elem.f.ja_cl", "J_a* = (-1)^k J_a on the Clifford side", "Ja_cl^*", "parity_cl*Ja_cl");
    b.eq(1, "elem.f.jd_cl", "J_d* = -J_d on the Clifford side", "Jd_cl^*", "-Jd_cl");
    b.eq(1, "elem.g.ja", "(J_a*)^{-1} = (-1)^k J_a*", "Ja_inv", "parity*Ja");
    b.eq(1, "elem.g.ja_cl", "J_a^{-1} = (-1)^k J_a", "Ja_cl_inv", "parity_cl*Ja_cl");
    b.eq(1, "elem.g.inverse", "J_a* ∘ (J_a*)^{-1} = 1", "Ja*Ja_inv", "1");
    for (const auto& [p, deg] : std::vector<std::pair<std::string, int>>{
             {"d", 1}, {"d^*", -1}, {"L", 2}, {"Lambda", -2}, {"tau_del", 1}, {"rho_mu", 1}, {"lambda", 3}}) {
      const std::string s = slug(p);
      b.eq(1, "elem.h.adj." + s, "(P^c)* = (P*)^c for P = " + p, "(" + p + ")^c^*", "(" + p + ")^*^c", {p});
      b.eq(1, "elem.h.cc." + s, "(P^c)^c = (-1)^p P for P = " + p, "(" + p + ")^c^c",
           (deg % 2 ? "-" : "") + std::string("(") + p + ")", {p});
    }
    for (const std::string p : {"D", "D_sigma", "Lcl(Domega)"}) {
      b.eq(1, "elem.h.adj." + slug(p), "(P^c)* = (P*)^c for P = " + p, "(" + p + ")^c^*", "(" + p + ")^*^c", {p});
      b.eq(1, "elem.h.cc." + slug(p), "(P^c)^c = -P for odd P = " + p, "(" + p + ")^c^c", "-(" + p + ")", {p});
    }
    for (const auto& [p, odd] : std::vector<std::pair<std::string, bool>>{
             {"D", true}, {"H_c", false}, {"D_sigma", true}, {"Lcl(Domega)", true}, {"Jd_cl", false}}) {
      b.eq(1, "elem.i." + slug(p), "♭∘P^c∘♯ = (-1)^p (♭∘P∘♯)^c for P = " + p, "T((" + p + ")^c)",
           std::string(odd ? "-" : "") + "T(" + p + ")^c", {p});
    }
    for (const auto& [name, bd] : detail::pure_operators()) {
      b.eq(1, "elem.j." + slug(name),
           "P^c = i^{s-r} P for " + name + " of bidegree (" + std::to_string(bd.first) + "," +
               std::to_string(bd.second) + ")",
           name + "^c", detail::i_power_literal(bd.second - bd.first) + "*" + name, {name});
    }
    b.eq(1, "omega.jd", "J_d ω = 0", "Jd_cl(omega)", "0*omega", {"omega"});
    b.eq(1, "omega.ja", "J_a ω = ω", "Ja_cl(omega)", "omega");
    b.eq(1, "omega.jd_ext", "J_d* ω = 0", "Jd(omega)", "0*omega", {"omega"});
    b.eq(1, "omega.ja_ext", "J_a* ω = ω", "Ja(omega)", "omega");
    b.eq(1, "omega.jd_formula", "J_d X = ½(ω·X - X·ω)", "Jd_cl", "(Lcl(omega) - Rcl(omega))/2");
    b.eq(1, "omega.hc", "H_c = iJ_d - iL_ω", "H_c", "i*Jd_cl - i*Lcl(omega)");
    b.derivation(1, "omega.nablaJd.der", "∇_X J_d is a derivation of order 0", "[nabla{A}, Jd_cl]").foreach = "A";
    b.eq(1, "omega.nablaJd.skew", "∇_X J_d is anti-self-adjoint", "[nabla{A}, Jd_cl]^*", "-[nabla{A}, Jd_cl]")
        .foreach = "A";
    b.derivation(1, "omega.nablaJa.der", "J_a^{-1}∘∇_X J_a is a derivation of order 0",
                 "Ja_cl_inv*nabla{A}*Ja_cl - nabla{A}")
        .foreach = "A";
    b.eq(1, "omega.nablaJa.skew", "J_a^{-1}∘∇_X J_a is anti-self-adjoint", "(Ja_cl_inv*nabla{A}*Ja_cl - nabla{A})^*",
         "-(Ja_cl_inv*nabla{A}*Ja_cl - nabla{A})")
        .foreach = "A";
    b.eq(1, "omega.hc_jd", "H_c J_d = J_d H_c", "[H_c, Jd_cl]", "0*id_cl", {"H_c", "Jd_cl"});
    b.eq(1, "omega.hc_conj", "H_c^c = H_c", "H_c^c", "H_c");
    b.eq(1, "omega.jd_conj", "J_d^c = J_d", "Jd_cl^c", "Jd_cl");
    b.eq(1, "omega.nabla_transport", "♭∘∇_X∘♯ = ∇_X", "T(nabla{A})", "nablaf{A}").foreach = "A";
    b.eq(1, "omega.ja_nabla", "J_a ∇_X ω = -∇_X ω", "Ja_cl(nabla{A}(omega))", "-nabla{A}(omega)").foreach = "A";
    b.eq(1, "omega.ja_nabla_ext", "J_a* ∇_X ω = -∇_X ω", "Ja(nablaf{A}(omega))", "-nablaf{A}(omega)").foreach = "A";

    b.eq(1, "struct.d_squared", "d² = 0", "d*d", "0", {"d"});
    b.eq(1, "struct.clifford_vector", "e·φ = e∧φ - e⌟φ", "T(Lcl(e{A}))", "E(e{A}) - I(e{A})").foreach = "A";
    b.eq(1, "struct.adjoint_involution", "(P*)* = P on the zoo", "d^*^* + tau^*^* + rho_del^*^* + T(D^*^*)",
         "d + tau + rho_del + T(D)");
    b.eq(1, "struct.lee_contract", "θ = ω⌟dω⁺", "theta", "contract(omega, domega_plus)");
    b.eq(1, "struct.lee_dstar", "θ = -J* d*ω", "theta", "-Jstar(d^*(omega))");
    b.eq(1, "struct.tau_one", "τ(1) = θ", "tau(one)", "theta");
    b.eq(1, "struct.d_split", "d = μ + ∂ + ∂̄ + μ̄", "d", "mu + del + delbar + mubar");
    b.eq(1, "struct.lambda_split", "λ = λ₊ + λ₋", "lambda", "lambda_plus + lambda_minus");
    b.eq(1, "struct.tau_split", "τ = τ₊ + τ₋", "tau", "tau_plus + tau_minus");
    b.eq(1, "struct.rho_split", "ρ = ρ₊ + ρ₋", "rho", "rho_plus + rho_minus");
    b.eq(1, "struct.E_omega", "E_ω = L", "E(omega)", "L");
    b.eq(1, "struct.Lambda", "Λ = L*", "Lambda", "L^*");
    b.eq(1, "struct.domega_split", "dω = dω⁺ + dω⁻", "domega", "domega_plus + domega_minus");
    b.custom(1, "struct.H_diagonal", "H = [L,Λ] = (k-n) on k-forms", "H_diagonal");
    b.custom(1, "struct.hodge", "d* = -⋆d⋆", "hodge");
    b.custom(1, "struct.connection", "Γ is metric and torsion-free", "connection");
    b.custom(1, "struct.nijenhuis", "N(X,Y) = -N(Y,X) and N(Y,JZ) = -J N(Y,Z)", "nijenhuis");
    b.custom(1, "struct.kn", "2<(∇_X J)Y,Z> = dω(X,Y,Z) - dω(X,JY,JZ) + 4<JX,N(Y,Z)>", "kn");
    b.custom(1, "struct.kn_twisted", "2<J^{-1}(∇_{JX}J)Y,Z> = dω(JX,Y,JZ) + dω(JX,JY,Z) - 4<JX,N(Y,Z)>",
             "kn_twisted");
    b.custom(1, "struct.three_forms", "3-form identities for types (2,1)+(1,2) and (3,0)+(0,3)", "three_forms");
    b.custom(1, "struct.jacobi", "super-Jacobi identity on random zoo triples", "jacobi");
    b.custom(1, "struct.bigrading", "J_a* = i^{p-q} and J_d* = i(p-q) on A^{p,q}; projectors resolve 1",
             "bigrading");
    b.custom(1, "struct.frame_invariance", "D is unchanged by a J-preserving signed frame permutation",
             "frame_invariance");

    // ---- Group 2: the Clifford suite.
    b.eq(2, "clif.D_equiv", "D ≅ d + d*", "T(D)", "d + d^*", {"d"});
    b.eq(2, "clif.Hc_equiv", "H_c ≅ i(Λ - L)", "T(H_c)", "i*(Lambda - L)");
    b.eq(2, "clif.DH_equiv", "[D, H_c] ≅ i[d + d*, Λ - L]", "T([D, H_c])", "i*[d + d^*, Lambda - L]", {"d"});
    b.eq(2, "clif.Dc_equiv", "D^c ≅ -(d^c + d*^c)", "T(D^c)", "-(d^c + d^*^c)", {"d"});
    b.eq(2, "clif.DJ", "[D, J_d] = Σ e_A·(∇_{e_A}J_d) - Σ Je_A·∇_{e_A}", "[D, Jd_cl]",
         "sum_A(Lcl(e{A})*[nabla{A}, Jd_cl]) - sum_A(Lcl(Je{A})*nabla{A})", {"D"});
    b.eq(2, "clif.DLomega", "[D, L_ω] = L_{Dω} - 2Σ Je_A·∇_{e_A}", "[D, Lcl(omega)]",
         "Lcl(D(omega)) - 2*sum_A(Lcl(Je{A})*nabla{A})", {"D"});
    b.eq(2, "clif.Dc_frame", "D^c = Σ e_A·J_a^{-1}(∇_{Je_A}J_a) - Σ Je_A·∇_{e_A}", "D^c",
         "sum_A(Lcl(e{A})*(Ja_cl_inv*nablaJ{A}*Ja_cl - nablaJ{A})) - sum_A(Lcl(Je{A})*nabla{A})", {"D"});
    b.eq(2, "clif.DH_lemma", "[D, H_c] = -iD^c - iL_{Dω} + iΣ e_A·(∇_{e_A}J_d + J_a^{-1}∘∇_{Je_A}J_a)",
         "[D, H_c]",
         "-i*D^c - i*Lcl(D(omega)) + i*sum_A(Lcl(e{A})*([nabla{A}, Jd_cl] + Ja_cl_inv*nablaJ{A}*Ja_cl - nablaJ{A}))",
         {"D"});
    b.eq(2, "clif.master", "[D, H_c] = -iD^c + iD_σ - iL_{Dω}", "[D, H_c]", "-i*D^c + i*D_sigma - i*Lcl(D(omega))",
         {"D_sigma", "Lcl(D(omega))"});
    b.derivation(2, "sigma.derivation", "σ_X is a derivation of degree 0", "sigma{A}").foreach = "A";
    b.eq(2, "sigma.skew", "σ_X is anti-self-adjoint", "sigma{A}^*", "-sigma{A}", {"sigma{A}"}).foreach = "A";
    b.eq(2, "sigma.J_left", "σ_{JX}Y = Jσ_X Y", "sigmaJ{A}(e{B})", "J(sigma{A}(e{B}))", {"sigma{A}"}).foreach =
        "AB";
    b.eq(2, "sigma.J_right", "Jσ_X Y = -σ_X(JY)", "J(sigma{A}(e{B}))", "-sigma{A}(J(e{B}))", {"sigma{A}"})
        .foreach = "AB";
    b.eq(2, "sigma.conj", "(σ_X)^c = -σ_X", "sigma{A}^c", "-sigma{A}", {"sigma{A}"}).foreach = "A";
    b.eq(2, "sigma.bracket", "[σ_X, J_d] = -2σ_{JX}", "[sigma{A}, Jd_cl]", "-2*sigmaJ{A}", {"sigma{A}"}).foreach = "A";
    b.custom(2, "sigma.formula", "σ_X(Y) = Σ_B (dω⁺(X,Y,e_B) - dω⁺(X,JY,Je_B)) e_B", "sigma_formula");
    b.eq(2, "sigma.flat", "σ^♭_X = -∇_X J_d* + (J_a*)^{-1}∘∇_{JX}J_a*", "T(sigma{A})", "sigmaf{A}", {"sigma{A}"})
        .foreach = "A";
    b.custom(2, "sigma.flat_formula", "σ^♭_X(α) = Σ (dω⁺(X,e_C,e_B) - dω⁺(X,Je_C,Je_B)) α(e_C) θ^B",
             "sigma_flat_formula");
    b.eq(2, "sigma.trace", "Σ_A σ_{e_A}(e_A) = -2(J*θ)^♯", "sum_A(sigma{A}(e{A}))", "-2*Jtheta", {"theta"});
    b.eq(2, "ten.a", "L_{Dω}^c = L_{D^cω}", "Lcl(D(omega))^c", "Lcl(D^c(omega))", {"Lcl(D(omega))"});
    b.eq(2, "ten.b1", "[L_{Dω}, H_c] = iL_{J_d Dω}", "[Lcl(D(omega)), H_c]", "i*Lcl(Jd_cl(D(omega)))",
         {"Lcl(D(omega))"});
    b.eq(2, "ten.b2", "[L_{D^cω}, H_c] = iL_{J_d D^cω}", "[Lcl(D^c(omega)), H_c]", "i*Lcl(Jd_cl(D^c(omega)))",
         {"Lcl(D^c(omega))"});
    b.eq(2, "ten.c1", "D_σω = -J_d Dω + 3D^cω", "D_sigma(omega)", "-Jd_cl(D(omega)) + 3*D^c(omega)",
         {"D_sigma(omega)"});
    b.eq(2, "ten.c2", "D_σ^cω = -J_d D^cω - 3Dω", "D_sigma^c(omega)", "-Jd_cl(D^c(omega)) - 3*D(omega)",
         {"D_sigma^c(omega)"});
    b.eq(2, "ten.d", "[D_σ, J_d] = D_σ^c", "[D_sigma, Jd_cl]", "D_sigma^c", {"D_sigma"});
    b.eq(2, "ten.e", "[D_σ^c, J_d] = -D_σ", "[D_sigma^c, Jd_cl]", "-D_sigma", {"D_sigma"});
    b.eq(2, "ten.f", "[D_σ, H_c] = i(3D_σ^c - L_{D_σω})", "[D_sigma, H_c]",
         "i*(3*D_sigma^c - Lcl(D_sigma(omega)))", {"D_sigma"});
    b.eq(2, "ten.g", "[D_σ^c, H_c] = -i(3D_σ + L_{D_σ^cω})", "[D_sigma^c, H_c]",
         "-i*(3*D_sigma + Lcl(D_sigma^c(omega)))", {"D_sigma"});
    b.eq(2, "ten.h", "[D_σ - L_{Dω}, H_c] = 3i(D_σ^c - L_{D^cω})", "[D_sigma - Lcl(D(omega)), H_c]",
         "3i*(D_sigma^c - Lcl(D^c(omega)))", {"D_sigma - Lcl(D(omega))"});
    b.eq(2, "ten.i", "[D_σ^c - L_{D^cω}, H_c] = -3i(D_σ - L_{Dω})", "[D_sigma^c - Lcl(D^c(omega)), H_c]",
         "-3i*(D_sigma - Lcl(D(omega)))", {"D_sigma - Lcl(D(omega))"});
    b.eq(2, "ten.j1", "D_σ - L_{Dω} is self-adjoint", "(D_sigma - Lcl(D(omega)))^*", "D_sigma - Lcl(D(omega))",
         {"D_sigma - Lcl(D(omega))"});
    b.eq(2, "ten.j2", "D_σ^c - L_{D^cω} is self-adjoint", "(D_sigma^c - Lcl(D^c(omega)))^*",
         "D_sigma^c - Lcl(D^c(omega))", {"D_sigma^c - Lcl(D^c(omega))"});
    b.eq(2, "ten.dsigma_adj", "D_σ* = D_σ - 2L_{(J*θ)^♯}", "D_sigma^*", "D_sigma - 2*Lcl(Jtheta)",
         {"D_sigma", "theta"});
    b.eq(2, "ten.ldomega_adj", "L_{Dω}* = L_{Dω} - 2L_{(J*θ)^♯}", "Lcl(D(omega))^*",
         "Lcl(D(omega)) - 2*Lcl(Jtheta)", {"Lcl(D(omega))", "theta"});

    // ---- Group 3: the exterior suite.
    for (const auto& [xi, label] : std::vector<std::pair<std::string, std::string>>{
             {"mu_omega", "μω"}, {"del_omega", "∂ω"}, {"delbar_omega", "∂̄ω"}, {"mubar_omega", "μ̄ω"}, {"domega", "dω"}}) {
      // The sign of r matches ρ = -r; the printed statement has +r.
      auto& e = b.eq(3, "clifmult." + xi, "(ξ^♯·φ^♯)^♭ = ξ∧φ - r_ξ(φ) - (r_ξ̄)*(φ) + ξ⌟φ for ξ = " + label,
                     "T(Lcl(" + xi + "))", "E(" + xi + ") - r(" + xi + ") - r(bar(" + xi + "))^* + I(" + xi + ")",
                     {"E(" + xi + ")"});
      e.printed = "E(" + xi + ") + r(" + xi + ") + r(bar(" + xi + "))^* + I(" + xi + ")";
      e.note = "printed with +r; the expansion in its proof gives -r";
    }
    b.eq(3, "clifmult.vector", "(α^♯·φ^♯)^♭ = α∧φ - α^♯⌟φ for α = J*θ", "T(Lcl(Jtheta))", "E(Jtheta) - I(Jtheta)",
         {"theta"});
    for (const auto& [xi, bd] : std::vector<std::pair<std::string, Bidegree>>{
             {"mu_omega", {2, -1}}, {"del_omega", {1, 0}}, {"delbar_omega", {0, 1}}, {"mubar_omega", {-1, 2}}}) {
      b.bidegree(3, "clifmult.bideg." + xi, "r_ξ has bidegree (r-1, s-1) for ξ = " + xi, "r(" + xi + ")", {bd})
          .guards = {"r(" + xi + ")"};
    }
    b.eq(3, "domega.transport", "L_{Dω} ≅ λ + ρ + E_{J*θ} + ρ* + λ* - I_{J*θ}", "T(Lcl(D(omega)))",
         "lambda + rho + E(Jtheta) + rho^* + lambda^* - I(Jtheta)", {"lambda"});
    struct Xi {
      const char* key;
      const char* expr;
      const char* label;
    };
    static const Xi xis[] = {{"domega", "domega", "dω"},
                             {"domega_plus", "domega_plus", "dω⁺"},
                             {"mu_omega", "mu_omega", "μω"},
                             {"del_omega", "del_omega", "∂ω"},
                             {"coframe", "e1", "θ¹"},
                             {"mixed", "wedge(e1, wedge(e2, Je2))", "θ¹∧θ²∧J*θ²"}};
    for (const auto& x : xis) {
      const std::string xi = x.expr;
      b.eq(3, std::string("lambdaxi.") + x.key,
           std::string("[Λ, E_ξ] = E_{Λξ} + Σ (e_C⌟ξ)∧(Je_C⌟·) for ξ = ") + x.label, "[Lambda, E(" + xi + ")]",
           "E(Lambda(" + xi + ")) + s(" + xi + ")", {"E(" + xi + ")"});
      b.derivation(3, std::string("lambdaxi.der.") + x.key,
                   std::string("[Λ, E_ξ] - E_{Λξ} is a derivation for ξ = ") + x.label,
                   "[Lambda, E(" + xi + ")] - E(Lambda(" + xi + "))");
    }
    b.eq(3, "rhotau.mu", "τ_μ = iρ_μ", "tau_mu", "i*rho_mu", {"tau_mu"});
    b.eq(3, "rhotau.mubar", "τ_μ̄ = -iρ_μ̄", "tau_mubar", "-i*rho_mubar", {"tau_mubar"});
    b.eq(3, "rhotau.minus", "ρ₋ = -τ₋^c", "rho_minus", "-tau_minus^c", {"rho_minus"});
    b.derivation(3, "rhotau.derivation", "τ_μ is a derivation of degree 1", "tau_mu");
    b.eq(3, "taucal.a", "τ₊ψ = θ∧ψ + Σ (e_C⌟dω⁺)∧(Je_C⌟ψ)", "tau_plus", "E(theta) + s(domega_plus)", {"tau_plus"});
    b.custom(3, "taucal.b", "τ₊^c(α) = -J*θ∧α + ½Σ dω⁺(Je_A,e_C,Je_B) α(e_C) θ^A∧θ^B", "taucal_b");
    b.derivation(3, "dsigma.ext_derivation", "D_σ^ext is a derivation of degree 1", "Dsig_ext");
    b.eq(3, "dsigma.ext", "D_σ^ext = ρ₊ + τ₊^c + E_{J*θ}", "Dsig_ext", "rho_plus + tau_plus^c + E(Jtheta)",
         {"Dsig_ext"});
    b.eq(3, "dsigma.int", "D_σ^int = -(D_σ^ext)* + 2I_{J*θ}", "Dsig_int", "-Dsig_ext^* + 2*I(Jtheta)", {"Dsig_int"});
    b.eq(3, "dsigma.split", "D_σ ≅ D_σ^ext - D_σ^int", "T(D_sigma)", "Dsig_ext - Dsig_int", {"D_sigma"});
    b.eq(3, "dsigma.transport", "D_σ ≅ ρ₊ + τ₊^c + E_{J*θ} + ρ₊* + τ₊^c* - I_{J*θ}", "T(D_sigma)",
         "rho_plus + tau_plus^c + E(Jtheta) + rho_plus^* + tau_plus^c^* - I(Jtheta)", {"D_sigma"});
    b.eq(3, "dsigma.minus_ldomega", "D_σ - L_{Dω} ≅ τ^c - λ + τ^c* - λ*", "T(D_sigma - Lcl(D(omega)))",
         "tau^c - lambda + tau^c^* - lambda^*", {"tau", "lambda"});
    b.eq(3, "dsigma.minus_ldomega_conj", "D_σ^c - L_{Dω}^c ≅ τ + λ^c + τ* + λ*^c",
         "T(D_sigma^c - Lcl(D(omega))^c)", "tau + lambda^c + tau^* + lambda^*^c", {"tau", "lambda"});

    // ---- Group 4: the two main theorems.
    b.eq(4, "main1.full", "[d + d*, Λ - L] = d^c + τ^c - λ + d^c* + τ^c* - λ*", "[d + d^*, Lambda - L]",
         "d^c + tau^c - lambda + d^c^* + tau^c^* - lambda^*", {"lambda", "tau"});
    b.eq(4, "main1.dL", "[d, L] = λ", "[d, L]", "lambda", {"lambda"});
    b.eq(4, "main1.dLambda", "[d, Λ] = d^c* + τ^c*", "[d, Lambda]", "d^c^* + tau^c^*", {"d", "tau"});
    b.eq(4, "main1.dstarL", "[d*, L] = -d^c - τ^c", "[d^*, L]", "-d^c - tau^c", {"d", "tau"});
    b.eq(4, "main1.dstarLambda", "[d*, Λ] = -λ*", "[d^*, Lambda]", "-lambda^*", {"lambda"});
    b.eq(4, "main2.full", "[τ^c - λ + τ^c* - λ*, Λ - L] = 3(τ + λ^c + τ* + λ^c*)",
         "[tau^c - lambda + tau^c^* - lambda^*, Lambda - L]", "3*(tau + lambda^c + tau^* + lambda^c^*)",
         {"lambda", "tau"});
    b.eq(4, "main2.lambdaL", "[λ, L] = 0", "[lambda, L]", "0", {"lambda"});
    b.eq(4, "main2.lambdaLambda", "[λ, Λ] = -τ", "[lambda, Lambda]", "-tau", {"lambda", "tau"});
    b.eq(4, "main2.tauL", "[τ, L] = -3λ", "[tau, L]", "-3*lambda", {"lambda", "tau"});
    b.eq(4, "main2.tauLambda", "[τ, Λ] = -2τ^c*", "[tau, Lambda]", "-2*tau^c^*", {"tau"});

    // ---- Group 5: the bidegree-split corollary, with adjoints and conjugates.
    struct Cor {
      const char* id;
      const char* statement;
      const char* p;
      const char* x;
      const char* rhs;
      const char* guard;
    };
    static const Cor cor[] = {
        {"mu_Lambda", "[μ, Λ] = i(μ̄* + τ_μ̄*)", "mu", "Lambda", "i*(mubar^* + tau_mubar^*)", "mu"},
        {"tau_mu_Lambda", "[τ_μ, Λ] = -2iτ_μ̄*", "tau_mu", "Lambda", "-2i*tau_mubar^*", "tau_mu"},
        {"lambda_mu_Lambda", "[λ_μ, Λ] = -τ_μ", "lambda_mu", "Lambda", "-tau_mu", "lambda_mu"},
        {"mu_L", "[μ, L] = λ_μ", "mu", "L", "lambda_mu", "mu"},
        {"tau_mu_L", "[τ_μ, L] = -3λ_μ", "tau_mu", "L", "-3*lambda_mu", "tau_mu"},
        {"lambda_mu_L", "[λ_μ, L] = 0", "lambda_mu", "L", "0", "lambda_mu"},
        {"del_Lambda", "[∂, Λ] = -i(∂̄* + τ_∂̄*)", "del", "Lambda", "-i*(delbar^* + tau_delbar^*)", "del"},
        {"tau_del_Lambda", "[τ_∂, Λ] = 2iτ_∂̄*", "tau_del", "Lambda", "2i*tau_delbar^*", "tau_del"},
        {"lambda_del_Lambda", "[λ_∂, Λ] = -τ_∂", "lambda_del", "Lambda", "-tau_del", "lambda_del"},
        {"del_L", "[∂, L] = λ_∂", "del", "L", "lambda_del", "del"},
        {"tau_del_L", "[τ_∂, L] = -3λ_∂", "tau_del", "L", "-3*lambda_del", "tau_del"},
        {"lambda_del_L", "[λ_∂, L] = 0", "lambda_del", "L", "0", "lambda_del"},
    };
    for (const auto& c : cor) {
      const std::string id = std::string("cor.") + c.id;
      b.eq(5, id, c.statement, std::string("[") + c.p + ", " + c.x + "]", c.rhs, {c.guard});
    }
    for (const auto& c : cor) {
      detail::companions(b, 5, std::string("cor.") + c.id, c.statement, c.p, c.x, c.rhs, {c.guard},
                         Condition::always);
    }
    // Reorder so each identity is followed by its companions only in the
    // adjoint/conjugate blocks: all twelve, then twelve adjoints, then twelve conjugates.
    {
      auto first = std::find_if(b.entries.begin(), b.entries.end(), [](const IdentityEntry& e) {
        return e.id.rfind("cor.", 0) == 0 && (e.id.size() > 4 && e.id.substr(e.id.size() - 4) == ".adj");
      });
      std::stable_partition(first, b.entries.end(), [](const IdentityEntry& e) {
        return !(e.id.size() > 5 && e.id.substr(e.id.size() - 5) == ".conj");
      });
    }

    // ---- Group 6: commutator table, sixty cells.
    for (const auto& r : figure1_printed()) {
      auto [lam, l] = figure1_expected(r);
      const bool ext = std::string(r.row).find("rho_") == 0;
      for (int col = 0; col < 2; ++col) {
        const std::string x = col == 0 ? "Lambda" : "L";
        const std::string expected = col == 0 ? lam : l;
        const std::string printed = col == 0 ? r.lambda_cell : r.l_cell;
        auto& e = b.eq(6, "fig1.row." + slug(r.row) + "." + x,
                       std::string("[") + r.label + ", " + (col == 0 ? "Λ" : "L") + "] cell",
                       "[" + std::string(r.row) + ", " + x + "]", expected, {std::string(r.row)});
        e.external = ext;
        if (printed != expected) {
          e.printed = printed;
          const bool swapped = printed == (col == 0 ? std::string(r.l_cell) : std::string(r.lambda_cell));
          e.note = swapped ? "printed value sits in the other column"
                           : "printed value differs beyond the column exchange";
        }
      }
    }

    // ---- Group 7: bidegree placements.
    for (const auto& [op, bd] : figure2_placements()) {
      b.bidegree(7, "fig2." + slug(op), op + " at (" + std::to_string(bd.first) + "," + std::to_string(bd.second) + ")",
                 op, {bd})
          .guards = {op};
    }

    // ---- Group 8: the almost-Kähler reduction, enabled when dω = 0.
    struct Ak {
      const char* id;
      const char* statement;
      const char* p;
      const char* x;
      const char* rhs;
      const char* guard;
    };
    static const Ak ak[] = {
        {"mu_Lambda", "[μ, Λ] = iμ̄*", "mu", "Lambda", "i*mubar^*", "mu"},
        {"mu_L", "[μ, L] = 0", "mu", "L", "0", "mu"},
        {"del_Lambda", "[∂, Λ] = -i∂̄*", "del", "Lambda", "-i*delbar^*", "del"},
        {"del_L", "[∂, L] = 0", "del", "L", "0", "del"},
    };
    for (const auto& a : ak) {
      b.eq(8, std::string("ak.") + a.id, a.statement, std::string("[") + a.p + ", " + a.x + "]", a.rhs, {a.guard})
          .condition = Condition::almost_kahler;
    }
    for (const auto& a : ak) {
      detail::companions(b, 8, std::string("ak.") + a.id, a.statement, a.p, a.x, a.rhs, {a.guard},
                         Condition::almost_kahler);
    }
    for (const char* z : {"lambda", "tau", "rho"}) {
      b.eq(8, std::string("ak.") + z + "_zero", std::string(z) + " = 0 when dω = 0", z, "0", {"d"}).condition =
          Condition::almost_kahler;
    }
    return b.entries;
  }();
  return entries;
}

/// Number of entries per group; the catalog test pins these.
inline std::map<int, int> catalog_manifest() {
  std::map<int, int> m;
  for (const auto& e : catalog()) ++m[e.group];
  return m;
}

}  // namespace kahler
