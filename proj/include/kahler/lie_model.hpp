#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kahler/scalar.hpp"

namespace kahler {

/// Malformed model input (bad JSON, bad literal, index out of range).
class ModelParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model that parsed but breaks an algebraic invariant.
class ModelValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unimodular Lie algebra with an orthonormal frame adapted to J
/// (J e_i = e_{i+n}). Indices are 0-based internally and 1-based in files
/// and messages.
class LieModel {
 public:
  LieModel(std::string name, int n) : name_(std::move(name)), n_(n) {
    if (n < 1 || n > 4) throw ModelParseError("model half-dimension n must be between 1 and 4");
    c_.assign(static_cast<std::size_t>(dim() * dim() * dim()), Rational(0));
  }

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  int dim() const { return 2 * n_; }

  /// c^C_{AB}: [e_A, e_B] = Σ_C c^C_{AB} e_C.
  const Rational& c(int upper, int a, int b) const { return c_[index(upper, a, b)]; }
  Rational& c(int upper, int a, int b) { return c_[index(upper, a, b)]; }

  /// Set [e_a, e_b] ⊇ v e_c and complete antisymmetrically.
  LieModel& bracket(int a, int b, int upper, Rational v) {
    c(upper, a, b) = v;
    c(upper, b, a) = -v;
    return *this;
  }

  bool is_abelian() const {
    for (const auto& v : c_) {
      if (!v.is_zero()) return false;
    }
    return true;
  }

 private:
  std::size_t index(int upper, int a, int b) const {
    if (upper < 0 || a < 0 || b < 0 || upper >= dim() || a >= dim() || b >= dim()) {
      throw std::out_of_range("structure constant index out of range");
    }
    return static_cast<std::size_t>((upper * dim() + a) * dim() + b);
  }

  std::string name_;
  int n_;
  std::vector<Rational> c_;
};

struct ValidationIssue {
  std::string invariant;  // "antisymmetry", "jacobi", "unimodularity"
  std::vector<int> indices;  // 1-based witness
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool antisymmetry = true;
  bool jacobi = true;
  bool unimodular = true;

  bool ok() const { return issues.empty(); }

  std::string summary() const {
    if (ok()) return "valid";
    std::ostringstream os;
    for (const auto& i : issues) os << i.message << "\n";
    return os.str();
  }
};

inline std::string index_tuple(const std::vector<int>& idx) {
  std::string s = "(";
  for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? "," : "") + std::to_string(idx[k]);
  return s + ")";
}

/// Checks antisymmetry, the Jacobi identity and unimodularity, reporting the
/// first witnessing index tuple of each violated invariant.
inline ValidationReport validate_model(const LieModel& m) {
  ValidationReport rep;
  const int N = m.dim();
  auto fail = [&](std::string inv, std::vector<int> idx, const std::string& what) {
    for (auto& i : idx) ++i;
    rep.issues.push_back({inv, idx, inv + " violated at " + index_tuple(idx) + ": " + what});
  };

  for (int a = 0; a < N && rep.antisymmetry; ++a) {
    for (int b = 0; b < N && rep.antisymmetry; ++b) {
      for (int up = 0; up < N; ++up) {
        if (!(m.c(up, a, b) == -m.c(up, b, a))) {
          rep.antisymmetry = false;
          fail("antisymmetry", {a, b, up}, "c^C_{AB} != -c^C_{BA}");
          break;
        }
      }
    }
  }

  for (int a = 0; a < N && rep.jacobi; ++a) {
    for (int b = 0; b < N && rep.jacobi; ++b) {
      for (int c = 0; c < N && rep.jacobi; ++c) {
        for (int e = 0; e < N; ++e) {
          Rational s(0);
          for (int d = 0; d < N; ++d) {
            s += m.c(d, a, b) * m.c(e, d, c) + m.c(d, b, c) * m.c(e, d, a) + m.c(d, c, a) * m.c(e, d, b);
          }
          if (!s.is_zero()) {
            rep.jacobi = false;
            fail("jacobi", {a, b, c, e}, "cyclic sum of brackets is " + s.str());
            break;
          }
        }
      }
    }
  }

  for (int b = 0; b < N; ++b) {
    Rational tr(0);
    for (int a = 0; a < N; ++a) tr += m.c(a, a, b);
    if (!tr.is_zero()) {
      rep.unimodular = false;
      fail("unimodularity", {b}, "trace of ad(e_B) is " + tr.str());
      break;
    }
  }
  return rep;
}

/// Parse the JSON model format:
/// { "name": str, "n": int, "brackets": [ {"a":1,"b":2,"c":3,"v":"p/q"}, ... ] }.
/// Entries with a < b are completed antisymmetrically; any other entry is
/// stored verbatim so that validation reports it against the antisymmetry
/// invariant.
inline LieModel parse_model(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ModelParseError("model must be a JSON object");
    for (const char* key : {"name", "n", "brackets"}) {
      if (!j.contains(key)) throw ModelParseError(std::string("model is missing \"") + key + "\"");
    }
    if (!j["name"].is_string()) throw ModelParseError("\"name\" must be a string");
    if (!j["n"].is_number_integer()) throw ModelParseError("\"n\" must be an integer");
    if (!j["brackets"].is_array()) throw ModelParseError("\"brackets\" must be an array");
    LieModel m(j["name"].get<std::string>(), j["n"].get<int>());
    const int N = m.dim();
    for (const auto& e : j["brackets"]) {
      if (!e.is_object()) throw ModelParseError("bracket entries must be objects");
      for (const char* key : {"a", "b", "c"}) {
        if (!e.contains(key) || !e[key].is_number_integer()) {
          throw ModelParseError(std::string("bracket entry needs integer \"") + key + "\"");
        }
      }
      if (!e.contains("v") || !e["v"].is_string()) throw ModelParseError("bracket entry needs a rational string \"v\"");
      int a = e["a"].get<int>(), b = e["b"].get<int>(), c = e["c"].get<int>();
      for (int idx : {a, b, c}) {
        if (idx < 1 || idx > N) {
          throw ModelParseError("bracket index " + std::to_string(idx) + " outside 1.." + std::to_string(N));
        }
      }
      Rational v;
      try {
        v = Rational::parse(e["v"].get<std::string>());
      } catch (const std::exception& ex) {
        throw ModelParseError(ex.what());
      }
      if (a < b) {
        m.bracket(a - 1, b - 1, c - 1, v);
      } else {
        m.c(c - 1, a - 1, b - 1) = v;
      }
    }
    return m;
  } catch (const nlohmann::json::exception& ex) {
    throw ModelParseError(ex.what());
  }
}

inline LieModel parse_model_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw ModelParseError(std::string("invalid JSON: ") + ex.what());
  }
  return parse_model(j);
}

inline LieModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelParseError("cannot open model file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model_text(ss.str());
}

inline nlohmann::ordered_json model_to_json(const LieModel& m) {
  nlohmann::ordered_json j;
  j["name"] = m.name();
  j["n"] = m.n();
  auto arr = nlohmann::ordered_json::array();
  for (int a = 0; a < m.dim(); ++a) {
    for (int b = a + 1; b < m.dim(); ++b) {
      for (int c = 0; c < m.dim(); ++c) {
        if (m.c(c, a, b).is_zero()) continue;
        arr.push_back({{"a", a + 1}, {"b", b + 1}, {"c", c + 1}, {"v", m.c(c, a, b).str()}});
      }
    }
  }
  j["brackets"] = arr;
  return j;
}

namespace models {

inline LieModel torus(int n) { return LieModel("t" + std::to_string(2 * n), n); }

/// Kodaira–Thurston type: [e1,e2] = e3. Almost Kähler, not integrable.
inline LieModel kt4() {
  LieModel m("kt4", 2);
  m.bracket(0, 1, 2, 1);
  return m;
}

/// Realified complex Heisenberg algebra with dφ³ = -φ¹∧φ², φ^j = θ^j + iθ^{j+3}:
/// dθ³ = -θ¹∧θ² + θ⁴∧θ⁵, dθ⁶ = -θ¹∧θ⁵ + θ²∧θ⁴. Integrable, not Kähler.
inline LieModel iwa6() {
  LieModel m("iwa6", 3);
  m.bracket(0, 1, 2, 1);
  m.bracket(3, 4, 2, -1);
  m.bracket(0, 4, 5, 1);
  m.bracket(1, 3, 5, -1);
  return m;
}

/// [e1,e2] = -e4, [e1,e3] = -e5, [e2,e3] = -e6. Non-integrable with both
/// dω⁺ and dω⁻ nonzero.
inline LieModel nil6() {
  LieModel m("nil6", 3);
  m.bracket(0, 1, 3, -1);
  m.bracket(0, 2, 4, -1);
  m.bracket(1, 2, 5, -1);
  return m;
}

/// Primary Kodaira surface: [e1,e3] = e2. Integrable and not Kähler, with
/// nonzero Lee form θ = -θ⁴, so τ, ρ and D_σ do not all vanish.
inline LieModel pks4() {
  LieModel m("pks4", 2);
  m.bracket(0, 2, 1, 1);
  return m;
}

/// [e1,e2] = e3, [e1,e4] = e3. Neither integrable nor almost Kähler, with
/// θ, μ, ∂ and all four parts of dω nonzero at once.
inline LieModel gen6() {
  LieModel m("gen6", 3);
  m.bracket(0, 1, 2, 1);
  m.bracket(0, 3, 2, 1);
  return m;
}

inline std::vector<std::string> builtin_names() { return {"t2", "t4", "t6", "kt4", "iwa6", "nil6", "pks4", "gen6"}; }

inline LieModel builtin(const std::string& name) {
  if (name == "t2") return torus(1);
  if (name == "t4") return torus(2);
  if (name == "t6") return torus(3);
  if (name == "kt4") return kt4();
  if (name == "iwa6") return iwa6();
  if (name == "nil6") return nil6();
  if (name == "pks4") return pks4();
  if (name == "gen6") return gen6();
  throw ModelParseError("unknown built-in model '" + name + "'");
}

inline bool is_builtin(const std::string& name) {
  for (const auto& b : builtin_names()) {
    if (b == name) return true;
  }
  return false;
}

}  // namespace models
}  // namespace kahler
