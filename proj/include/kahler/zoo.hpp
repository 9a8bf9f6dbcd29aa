#pragma once

#include <map>
#include <string>
#include <vector>

#include "kahler/geometry.hpp"
#include "kahler/operator.hpp"

namespace kahler {

/// The exterior-side operators of one model: d and its four bidegree parts,
/// the Lefschetz triple, and λ, τ, ρ in all their variants. Every operator is
/// registered under a short ASCII name so expressions can refer to it.
template <Scalar S>
class ExteriorZoo {
 public:
  explicit ExteriorZoo(const ModelSpace<S>& ms) : ms_(ms) {
    const int n = ms.n();
    const std::size_t dim = ms.space_dim();
    const double tol = ms.tolerance();
    const auto& bg = ms.bigrading();

    add("id", Matrix<S>::identity(dim), Bidegree{0, 0});
    add("d", ms.d());
    add("d*", ms.d_star());

    static const std::pair<const char*, Bidegree> d_parts[] = {
        {"mu", {2, -1}}, {"del", {1, 0}}, {"delbar", {0, 1}}, {"mubar", {-1, 2}}};
    auto parts = bg.decompose(ms.d(), tol);
    for (const auto& [shift, m] : parts) {
      bool known = false;
      for (const auto& [name, bd] : d_parts) known = known || bd == shift;
      if (!known) {
        throw ConventionError("d has a component of unexpected bidegree (" + std::to_string(shift.first) + "," +
                              std::to_string(shift.second) + ")");
      }
    }
    for (const auto& [name, bd] : d_parts) {
      auto it = parts.find(bd);
      Matrix<S> m = it == parts.end() ? Matrix<S>(dim) : it->second;
      add(name, m, bd);
      add(std::string(name) + "*", m.adjoint(), Bidegree{-bd.first, -bd.second});
    }

    const Multivector<S>& w = ms.omega();
    add("L", ext_mult(w), Bidegree{1, 1});
    add("Lambda", get("L").matrix.adjoint(), Bidegree{-1, -1});
    add("H", supercommutator(get("L").matrix, get("Lambda").matrix, tol), Bidegree{0, 0});

    // μω, ∂ω, ∂̄ω, μ̄ω of bidegrees (3,0), (2,1), (1,2), (0,3).
    static const std::pair<const char*, Bidegree> omega_parts[] = {
        {"mu", {3, 0}}, {"del", {2, 1}}, {"delbar", {1, 2}}, {"mubar", {0, 3}}};
    const Matrix<S>& lambda_op = get("Lambda").matrix;
    for (const auto& [name, bd] : omega_parts) {
      Multivector<S> xi = act(get(name).matrix, w);
      forms_[std::string(name) + "_omega"] = xi;
      add(std::string("lambda_") + name, ext_mult(xi), bd);
      add(std::string("tau_") + name, supercommutator(lambda_op, get(std::string("lambda_") + name).matrix, tol),
          Bidegree{bd.first - 1, bd.second - 1});
      add(std::string("rho_") + name, -r_xi(xi), Bidegree{bd.first - 1, bd.second - 1});
    }
    for (const char* fam : {"lambda", "tau", "rho"}) {
      std::string f(fam);
      add(f + "_plus", get(f + "_del").matrix + get(f + "_delbar").matrix);
      add(f + "_minus", get(f + "_mu").matrix + get(f + "_mubar").matrix);
      add(f, get(f + "_plus").matrix + get(f + "_minus").matrix);
    }
    for (const char* base : {"lambda", "tau", "rho"}) {
      for (const char* suffix : {"_mu", "_del", "_delbar", "_mubar", "_plus", "_minus", ""}) {
        const auto& op = get(std::string(base) + suffix);
        std::optional<Bidegree> bd;
        if (op.declared_bidegree) bd = Bidegree{-op.declared_bidegree->first, -op.declared_bidegree->second};
        add(op.name + "*", op.matrix.adjoint(), bd);
      }
    }
    add("L*", get("Lambda").matrix, Bidegree{-1, -1});
    add("Lambda*", get("L").matrix, Bidegree{1, 1});

    forms_["omega"] = w;
    forms_["domega"] = ms.d_omega();
    forms_["domega_plus"] = ms.d_omega_plus();
    forms_["domega_minus"] = ms.d_omega_minus();
    forms_["theta"] = ms.lee_form();
    forms_["Jtheta"] = ms.jstar_lee_form();
    forms_["one"] = Multivector<S>::scalar(n, S(1));

    // τ(1) is the Lee form; a mismatch means λ or Λ picked up a wrong sign.
    Multivector<S> tau_one = act(get("tau").matrix, forms_["one"]);
    if (!(tau_one - ms.lee_form()).is_zero(tol)) {
      throw ConventionError("τ(1) = " + tau_one.str() + " differs from the Lee form " + ms.lee_form().str());
    }
  }

  const ModelSpace<S>& model() const { return ms_; }

  bool has(const std::string& name) const { return ops_.count(name) != 0; }

  const LinearOperator<S>& get(const std::string& name) const {
    auto it = ops_.find(name);
    if (it == ops_.end()) throw StructuralError("unknown exterior operator '" + name + "'");
    return it->second;
  }

  /// Registration order, which is also the order used by the table solver.
  const std::vector<std::string>& names() const { return order_; }

  bool has_form(const std::string& name) const { return forms_.count(name) != 0; }
  const Multivector<S>& form(const std::string& name) const {
    auto it = forms_.find(name);
    if (it == forms_.end()) throw StructuralError("unknown form '" + name + "'");
    return it->second;
  }
  const std::map<std::string, Multivector<S>>& forms() const { return forms_; }

 private:
  void add(const std::string& name, Matrix<S> m, std::optional<Bidegree> bd = std::nullopt) {
    if (!ops_.count(name)) order_.push_back(name);
    ops_[name] = LinearOperator<S>{name, std::move(m), Picture::exterior, bd};
  }

  const ModelSpace<S>& ms_;
  std::map<std::string, LinearOperator<S>> ops_;
  std::vector<std::string> order_;
  std::map<std::string, Multivector<S>> forms_;
};

}  // namespace kahler
