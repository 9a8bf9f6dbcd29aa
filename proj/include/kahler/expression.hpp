#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kahler/dirac.hpp"
#include "kahler/zoo.hpp"

namespace kahler {

/// Malformed expression text (as opposed to a well-formed expression that is
/// not meaningful for a model, which raises StructuralError).
class ExpressionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Result of evaluating an expression: a scalar, an operator with its
/// picture, or a multivector.
template <Scalar S>
struct Value {
  enum class Kind { scalar, op, vec };
  Kind kind = Kind::scalar;
  S s{};
  Matrix<S> m;
  Picture pic = Picture::exterior;
  Multivector<S> v;

  static Value scalar(S x) { return {Kind::scalar, x, {}, Picture::exterior, {}}; }
  static Value op(Matrix<S> mat, Picture p) { return {Kind::op, S{}, std::move(mat), p, {}}; }
  static Value vec(Multivector<S> x) { return {Kind::vec, S{}, {}, Picture::exterior, std::move(x)}; }

  bool is_zero(double tol) const {
    switch (kind) {
      case Kind::scalar: return ScalarTraits<S>::is_zero(s, tol);
      case Kind::op: return m.is_zero(tol);
      default: return v.is_zero(tol);
    }
  }

  /// Largest entry (by magnitude) of the underlying coefficients.
  S max_entry() const {
    if (kind == Kind::scalar) return s;
    if (kind == Kind::op) return m.max_entry();
    S best{};
    double mag = -1;
    for (const auto& c : v.coeffs()) {
      if (ScalarTraits<S>::magnitude(c) > mag) {
        mag = ScalarTraits<S>::magnitude(c);
        best = c;
      }
    }
    return best;
  }
};

inline const char* kind_name(int k) {
  static const char* names[] = {"scalar", "operator", "multivector"};
  return names[k];
}

/// Everything an expression can refer to for one model. Operator names come
/// from the exterior and Clifford zoos; the environment adds the J extensions,
/// named forms, and frame-indexed families (e3, Je3, sigma3, ...).
///
/// Syntax summary:
///   a + b, a - b, -a, a * b (composition / scaling / application), a / b (scalar b)
///   P^*  adjoint,  P^c  conjugate,  [P, Q]  supercommutator,  P(v)  application
///   literals 2, 3/2 (via division), i, 2i
///   functions E(v) I(v) Lcl(v) Rcl(v) r(v) s(v) bar(v) T(P) J(v) Jstar(v)
///             wedge(a,b) clif(a,b) contract(a,b) inner(a,b) proj(p,q) even(P) odd(P)
///             grade(v,k) bideg(v,p,q)
template <Scalar S>
class Environment {
 public:
  Environment(const ModelSpace<S>& ms, const ExteriorZoo<S>& ext, const CliffordZoo<S>& cl)
      : ms_(ms), ext_(ext), cl_(cl) {
    const auto& js = ms.structure();
    extra_ops_.emplace("Ja", Value<S>::op(js.ja, Picture::exterior));
    extra_ops_.emplace("Ja_inv", Value<S>::op(js.ja_inv, Picture::exterior));
    extra_ops_.emplace("Jd", Value<S>::op(js.jd, Picture::exterior));
    extra_ops_.emplace("Jv", Value<S>::op(js.jstar_vector, Picture::exterior));
    extra_ops_.emplace("Jv_cl", Value<S>::op(js.j_vector, Picture::clifford));
    extra_ops_.emplace("parity", Value<S>::op(js.parity, Picture::exterior));
    extra_ops_.emplace("parity_cl", Value<S>::op(js.parity, Picture::clifford));
    vectors_.emplace("Domega", cl.d_omega());
    vectors_.emplace("Dcomega", cl.dc_omega());
  }

  const ModelSpace<S>& model() const { return ms_; }
  const ExteriorZoo<S>& exterior() const { return ext_; }
  const CliffordZoo<S>& clifford() const { return cl_; }

  /// Evaluate, memoizing every bracket, postfix, and call by its source text.
  Value<S> evaluate(const std::string& text) const;

  /// Evaluate and require an operator.
  Value<S> evaluate_op(const std::string& text) const {
    auto v = evaluate(text);
    if (v.kind != Value<S>::Kind::op) throw StructuralError("'" + text + "' is not an operator");
    return v;
  }

  /// a - b with the same promotion rules as the expression language.
  Value<S> difference(const Value<S>& a, const Value<S>& b) const {
    Parser p(*this, "<difference>");
    return p.add(a, b, S(-1));
  }

  std::optional<Value<S>> lookup(const std::string& name) const {
    if (ext_.has(name)) return Value<S>::op(ext_.get(name).matrix, Picture::exterior);
    if (cl_.has(name)) {
      const auto& o = cl_.get(name);
      return Value<S>::op(o.matrix, o.picture);
    }
    if (auto it = extra_ops_.find(name); it != extra_ops_.end()) return it->second;
    if (ext_.has_form(name)) return Value<S>::vec(ext_.form(name));
    if (auto it = vectors_.find(name); it != vectors_.end()) return Value<S>::vec(it->second);
    // Frame families: e<k> and Je<k>, k 1-based.
    auto frame_index = [&](const std::string& prefix) -> int {
      if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return -1;
      int k = 0;
      for (std::size_t p = prefix.size(); p < name.size(); ++p) {
        if (!std::isdigit(static_cast<unsigned char>(name[p]))) return -1;
        k = 10 * k + (name[p] - '0');
      }
      return (k >= 1 && k <= ms_.dim()) ? k - 1 : -1;
    };
    if (int k = frame_index("e"); k >= 0) return Value<S>::vec(ms_.e(k));
    if (int k = frame_index("Je"); k >= 0) return Value<S>::vec(ms_.j(ms_.e(k)));
    return std::nullopt;
  }

 private:
  class Parser {
   public:
    Parser(const Environment& env, const std::string& text) : env_(env), text_(text) {}

    Value<S> parse_all() {
      auto v = expr();
      skip_ws();
      if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
      return v;
    }

   private:
    using V = Value<S>;
    using K = typename V::Kind;

    [[noreturn]] void fail(const std::string& what) const {
      throw ExpressionError("in '" + text_ + "' at " + std::to_string(pos_) + ": " + what);
    }
    void skip_ws() {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == c) {
        ++pos_;
        return true;
      }
      return false;
    }
    void expect(char c) {
      if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    std::string source(std::size_t from) const {
      std::string s = text_.substr(from, pos_ - from);
      std::string out;
      for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
      }
      return out;
    }

    V expr() {
      V acc = term();
      for (;;) {
        if (accept('+')) acc = add(acc, term(), S(1));
        else if (accept('-')) acc = add(acc, term(), S(-1));
        else return acc;
      }
    }

    V term() {
      V acc = unary();
      for (;;) {
        if (accept('*')) {
          acc = mul(acc, unary());
        } else if (accept('/')) {
          V d = unary();
          if (d.kind != K::scalar) fail("division by a non-scalar");
          if (ScalarTraits<S>::is_zero(d.s, 0.0)) fail("division by zero");
          acc = mul(acc, V::scalar(S(1) / d.s));
        } else {
          return acc;
        }
      }
    }

    V unary() {
      if (accept('-')) return mul(V::scalar(S(-1)), unary());
      if (accept('+')) return unary();
      return postfix();
    }

    V postfix() {
      std::size_t start = (skip_ws(), pos_);
      V v = primary();
      for (;;) {
        skip_ws();
        if (pos_ + 1 < text_.size() && text_[pos_] == '^' && (text_[pos_ + 1] == '*' || text_[pos_ + 1] == 'c')) {
          char which = text_[pos_ + 1];
          pos_ += 2;
          std::string key = source(start);
          if (auto hit = env_.cached(key)) {
            v = *hit;
            continue;
          }
          if (v.kind != K::op) fail(which == '*' ? "adjoint of a non-operator" : "conjugate of a non-operator");
          if (which == '*') v = V::op(v.m.adjoint(), v.pic);
          else v = V::op(conjugate(env_.ms_.structure(), v.m, v.pic), v.pic);
          env_.store(key, v);
        } else if (pos_ < text_.size() && text_[pos_] == '(' && v.kind == K::op) {
          ++pos_;
          V arg = expr();
          expect(')');
          if (arg.kind != K::vec) fail("operators apply to multivectors only");
          v = V::vec(act(v.m, arg.v));
        } else {
          return v;
        }
      }
    }

    V primary() {
      skip_ws();
      if (pos_ >= text_.size()) fail("unexpected end of expression");
      const std::size_t start = pos_;
      char c = text_[pos_];
      if (c == '(') {
        ++pos_;
        V v = expr();
        expect(')');
        return v;
      }
      if (c == '[') {
        ++pos_;
        V a = expr();
        expect(',');
        V b = expr();
        expect(']');
        std::string key = source(start);
        if (auto hit = env_.cached(key)) return *hit;
        if (a.kind != K::op || b.kind != K::op) fail("supercommutator needs two operators");
        if (a.pic != b.pic) fail("supercommutator of operators from different pictures");
        V out = V::op(supercommutator(a.m, b.m, env_.ms_.tolerance()), a.pic);
        env_.store(key, out);
        return out;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::int64_t num = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          num = 10 * num + (text_[pos_++] - '0');
        }
        if (pos_ < text_.size() && text_[pos_] == 'i' &&
            (pos_ + 1 == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
          ++pos_;
          return V::scalar(ScalarTraits<S>::from(Rational(0), Rational(num)));
        }
        return V::scalar(ScalarTraits<S>::from(Rational(num)));
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          ++pos_;
        }
        std::string name = text_.substr(start, pos_ - start);
        if (name == "i") return V::scalar(ScalarTraits<S>::i());
        skip_ws();
        if (is_function(name) && pos_ < text_.size() && text_[pos_] == '(') {
          ++pos_;
          std::vector<V> args;
          if (!accept(')')) {
            do {
              args.push_back(expr());
            } while (accept(','));
            expect(')');
          }
          std::string key = source(start);
          if (auto hit = env_.cached(key)) return *hit;
          V out = call(name, args);
          env_.store(key, out);
          return out;
        }
        auto v = env_.lookup(name);
        if (!v) throw StructuralError("unknown name '" + name + "' for model " + env_.ms_.name());
        return *v;
      }
      fail("unexpected '" + std::string(1, c) + "'");
    }

    static bool is_function(const std::string& n) {
      static const char* fns[] = {"E",     "I",    "Lcl",   "Rcl",  "r",     "s",    "bar",  "T",
                                  "J",     "Jstar", "wedge", "clif", "contract", "inner", "proj", "even",
                                  "odd",   "grade", "bideg"};
      for (const char* f : fns) {
        if (n == f) return true;
      }
      return false;
    }

    const Multivector<S>& need_vec(const std::vector<V>& args, std::size_t k, const std::string& fn) {
      if (args.size() <= k || args[k].kind != K::vec) fail(fn + " expects a multivector argument");
      return args[k].v;
    }
    int need_int(const std::vector<V>& args, std::size_t k, const std::string& fn) {
      if (args.size() <= k || args[k].kind != K::scalar) fail(fn + " expects an integer argument");
      S x = args[k].s;
      if constexpr (ScalarTraits<S>::exact) {
        if (!x.imag().is_zero() || x.real().den() != 1) fail(fn + " expects an integer argument");
        return static_cast<int>(x.real().num());
      } else {
        return static_cast<int>(std::lround(x.real()));
      }
    }
    void arity(const std::vector<V>& args, std::size_t n, const std::string& fn) {
      if (args.size() != n) fail(fn + " takes " + std::to_string(n) + " argument(s)");
    }

    V call(const std::string& fn, const std::vector<V>& args) {
      const auto& ms = env_.ms_;
      if (fn == "E") return arity(args, 1, fn), V::op(ext_mult(need_vec(args, 0, fn)), Picture::exterior);
      if (fn == "I") return arity(args, 1, fn), V::op(int_mult(need_vec(args, 0, fn)), Picture::exterior);
      if (fn == "Lcl") return arity(args, 1, fn), V::op(clifford_left(need_vec(args, 0, fn)), Picture::clifford);
      if (fn == "Rcl") return arity(args, 1, fn), V::op(clifford_right(need_vec(args, 0, fn)), Picture::clifford);
      if (fn == "r") return arity(args, 1, fn), V::op(r_xi(need_vec(args, 0, fn)), Picture::exterior);
      if (fn == "s") return arity(args, 1, fn), V::op(twisted_contraction(need_vec(args, 0, fn)), Picture::exterior);
      if (fn == "bar") return arity(args, 1, fn), V::vec(need_vec(args, 0, fn).bar());
      if (fn == "J") return arity(args, 1, fn), V::vec(ms.j(need_vec(args, 0, fn)));
      if (fn == "Jstar") return arity(args, 1, fn), V::vec(act(ms.structure().jstar_vector, need_vec(args, 0, fn)));
      if (fn == "wedge") return arity(args, 2, fn), V::vec(wedge(need_vec(args, 0, fn), need_vec(args, 1, fn)));
      if (fn == "clif") return arity(args, 2, fn), V::vec(clifford_mul(need_vec(args, 0, fn), need_vec(args, 1, fn)));
      if (fn == "contract") {
        return arity(args, 2, fn), V::vec(contract(need_vec(args, 0, fn), need_vec(args, 1, fn)));
      }
      if (fn == "inner") return arity(args, 2, fn), V::scalar(inner(need_vec(args, 0, fn), need_vec(args, 1, fn)));
      if (fn == "grade") return arity(args, 2, fn), V::vec(need_vec(args, 0, fn).grade(need_int(args, 1, fn)));
      if (fn == "bideg") {
        arity(args, 3, fn);
        return V::vec(ms.bigrading().project(need_vec(args, 0, fn), need_int(args, 1, fn), need_int(args, 2, fn)));
      }
      if (fn == "proj") {
        arity(args, 2, fn);
        return V::op(ms.bigrading().projector(need_int(args, 0, fn), need_int(args, 1, fn)), Picture::exterior);
      }
      if (fn == "T") {
        arity(args, 1, fn);
        if (args[0].kind != K::op) fail("T expects an operator");
        if (args[0].pic != Picture::clifford) fail("T expects a Clifford-picture operator");
        return V::op(args[0].m, Picture::exterior);
      }
      if (fn == "even" || fn == "odd") {
        arity(args, 1, fn);
        if (args[0].kind != K::op) fail(fn + " expects an operator");
        auto [e, o] = split_parity(args[0].m);
        return V::op(fn == "even" ? e : o, args[0].pic);
      }
      fail("unknown function " + fn);
    }

   public:
    V add(const V& a, const V& b, const S& sign) {
      if (a.kind == K::scalar && b.kind == K::scalar) return V::scalar(a.s + sign * b.s);
      if (a.kind == K::op && b.kind == K::op) {
        if (a.pic != b.pic) fail("sum of operators from different pictures");
        return V::op(a.m + sign * b.m, a.pic);
      }
      if (a.kind == K::op && b.kind == K::scalar) {
        return V::op(a.m + (sign * b.s) * Matrix<S>::identity(a.m.dim()), a.pic);
      }
      if (a.kind == K::scalar && b.kind == K::op) {
        return V::op(a.s * Matrix<S>::identity(b.m.dim()) + sign * b.m, b.pic);
      }
      if (a.kind == K::vec && b.kind == K::vec) return V::vec(a.v + sign * b.v);
      if (a.kind == K::vec && b.kind == K::scalar) {
        return V::vec(a.v + Multivector<S>::scalar(a.v.n(), sign * b.s));
      }
      if (a.kind == K::scalar && b.kind == K::vec) {
        return V::vec(Multivector<S>::scalar(b.v.n(), a.s) + sign * b.v);
      }
      fail(std::string("cannot add ") + kind_name(static_cast<int>(a.kind)) + " and " +
           kind_name(static_cast<int>(b.kind)));
    }

    V mul(const V& a, const V& b) {
      if (a.kind == K::scalar && b.kind == K::scalar) return V::scalar(a.s * b.s);
      if (a.kind == K::scalar && b.kind == K::op) return V::op(a.s * b.m, b.pic);
      if (a.kind == K::op && b.kind == K::scalar) return V::op(b.s * a.m, a.pic);
      if (a.kind == K::scalar && b.kind == K::vec) return V::vec(a.s * b.v);
      if (a.kind == K::vec && b.kind == K::scalar) return V::vec(b.s * a.v);
      if (a.kind == K::op && b.kind == K::op) {
        if (a.pic != b.pic) fail("composition of operators from different pictures");
        return V::op(a.m * b.m, a.pic);
      }
      if (a.kind == K::op && b.kind == K::vec) return V::vec(act(a.m, b.v));
      fail(std::string("cannot multiply ") + kind_name(static_cast<int>(a.kind)) + " by " +
           kind_name(static_cast<int>(b.kind)) + "; use wedge or clif");
    }

   private:
    const Environment& env_;
    std::string text_;
    std::size_t pos_ = 0;
  };

  std::optional<Value<S>> cached(const std::string& key) const {
    auto it = cache_.find(key);
    if (it == cache_.end()) return std::nullopt;
    return it->second;
  }
  void store(const std::string& key, const Value<S>& v) const { cache_.emplace(key, v); }

  const ModelSpace<S>& ms_;
  const ExteriorZoo<S>& ext_;
  const CliffordZoo<S>& cl_;
  std::map<std::string, Value<S>> extra_ops_;
  std::map<std::string, Multivector<S>> vectors_;
  mutable std::map<std::string, Value<S>> cache_;
};

template <Scalar S>
Value<S> Environment<S>::evaluate(const std::string& text) const {
  Parser p(*this, text);
  return p.parse_all();
}

/// Expand frame templates: every `{X}` placeholder for a loop letter X is
/// replaced by a 1-based index, and `sum_X(body)` becomes the parenthesized
/// sum of body over X = 1..dim.
inline std::string expand_sums(const std::string& text, int dim) {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text.compare(pos, 4, "sum_") == 0 && pos + 5 < text.size() && text[pos + 5] == '(') {
      const char letter = text[pos + 4];
      std::size_t open = pos + 5, depth = 0, close = open;
      for (; close < text.size(); ++close) {
        if (text[close] == '(') ++depth;
        else if (text[close] == ')' && --depth == 0) break;
      }
      if (close >= text.size()) throw ExpressionError("unbalanced sum_" + std::string(1, letter) + "( in '" + text + "'");
      std::string body = expand_sums(text.substr(open + 1, close - open - 1), dim);
      const std::string placeholder = std::string("{") + letter + "}";
      out += "(";
      for (int k = 1; k <= dim; ++k) {
        std::string term = body;
        for (std::size_t at = term.find(placeholder); at != std::string::npos; at = term.find(placeholder, at)) {
          term.replace(at, placeholder.size(), std::to_string(k));
        }
        out += (k > 1 ? "+(" : "(") + term + ")";
      }
      out += ")";
      pos = close + 1;
    } else {
      out += text[pos++];
    }
  }
  return out;
}

inline std::string substitute(std::string text, char letter, int index) {
  const std::string placeholder = std::string("{") + letter + "}";
  for (std::size_t at = text.find(placeholder); at != std::string::npos; at = text.find(placeholder, at)) {
    text.replace(at, placeholder.size(), std::to_string(index));
  }
  return text;
}

}  // namespace kahler
