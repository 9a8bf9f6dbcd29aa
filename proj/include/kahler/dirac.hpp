#pragma once

#include <map>
#include <string>
#include <vector>

#include "kahler/geometry.hpp"
#include "kahler/operator.hpp"

namespace kahler {

/// D = Σ_A e_A · ∇_{e_A} on the Clifford picture.
template <Scalar S>
Matrix<S> dirac_operator(const ModelSpace<S>& ms) {
  Matrix<S> out(ms.space_dim());
  for (int a = 0; a < ms.dim(); ++a) out += clifford_left(ms.e(a)) * ms.nabla_cl(a);
  return out;
}

/// H_c = (1/2i)(L_ω + R_ω).
template <Scalar S>
Matrix<S> hc_operator(const ModelSpace<S>& ms) {
  const S factor = S(1) / (S(2) * ScalarTraits<S>::i());
  return factor * (clifford_left(ms.omega()) + clifford_right(ms.omega()));
}

/// σ_{e_A} = ∇_{e_A} J_d + J_a^{-1} ∘ ∇_{J e_A} J_a, with ∇_X J_d = [∇_X, J_d]
/// and J_a^{-1} ∘ (∇_Y J_a) = J_a^{-1} ∇_Y J_a - ∇_Y.
template <Scalar S>
Matrix<S> sigma_operator(const ModelSpace<S>& ms, int a) {
  const auto& js = ms.structure();
  const Matrix<S>& nx = ms.nabla_cl(a);
  Matrix<S> njx = ms.nabla_cl_j(a);
  return (nx * js.jd_cl - js.jd_cl * nx) + js.ja_cl_inv * njx * js.ja_cl - njx;
}

/// σ^♭_{e_A} = -∇_{e_A} J_d* + (J_a*)^{-1} ∘ ∇_{J e_A} J_a*, built from the
/// exterior-side connection and the exterior J extensions.
template <Scalar S>
Matrix<S> sigma_flat_operator(const ModelSpace<S>& ms, int a) {
  const auto& js = ms.structure();
  const Matrix<S>& nx = ms.nabla_ext(a);
  Matrix<S> njx = ms.nabla_ext_j(a);
  return -(nx * js.jd - js.jd * nx) + js.ja_inv * njx * js.ja - njx;
}

/// σ_{e_A} on vectors through dω⁺: σ_X(Y) = Σ_B (dω⁺(X,Y,e_B) - dω⁺(X,JY,Je_B)) e_B.
template <Scalar S>
Multivector<S> sigma_by_formula(const ModelSpace<S>& ms, int a, const Multivector<S>& y) {
  const auto& psi = ms.d_omega_plus();
  Multivector<S> x = ms.e(a), jy = ms.j(y), out(ms.n());
  for (int b = 0; b < ms.dim(); ++b) {
    Multivector<S> eb = ms.e(b);
    S coeff = evaluate(psi, {x, y, eb}) - evaluate(psi, {x, jy, ms.j(eb)});
    out.at(Blade{1} << b) = coeff;
  }
  return out;
}

/// The Clifford-side operators of one model, registered by name like the
/// exterior zoo. Frame-indexed families use 1-based suffixes (sigma1, ...).
template <Scalar S>
class CliffordZoo {
 public:
  explicit CliffordZoo(const ModelSpace<S>& ms) : ms_(ms) {
    const std::size_t dim = ms.space_dim();
    const auto& js = ms.structure();

    add("id_cl", Matrix<S>::identity(dim));
    add("D", dirac_operator(ms));
    add("Dc", conjugate(js, get("D").matrix, Picture::clifford));
    add("H_c", hc_operator(ms));
    add("Jd_cl", js.jd_cl);
    add("Ja_cl", js.ja_cl);
    add("Ja_cl_inv", js.ja_cl_inv);
    add("L_omega", clifford_left(ms.omega()));
    add("R_omega", clifford_right(ms.omega()));

    d_omega_cl_ = act(get("D").matrix, ms.omega());
    dc_omega_cl_ = act(get("Dc").matrix, ms.omega());
    jtheta_vec_ = ms.jstar_lee_form();
    add("L_Domega", clifford_left(d_omega_cl_));
    add("L_Dcomega", clifford_left(dc_omega_cl_));
    add("L_Jtheta", clifford_left(jtheta_vec_));

    Matrix<S> dsig(dim), dsig_ext(dim), dsig_int(dim);
    for (int a = 0; a < ms.dim(); ++a) {
      const std::string idx = std::to_string(a + 1);
      Matrix<S> sig = sigma_operator(ms, a);
      Matrix<S> sig_flat = sigma_flat_operator(ms, a);
      dsig += clifford_left(ms.e(a)) * sig;
      dsig_ext += ext_mult(ms.e(a)) * sig_flat;
      dsig_int += int_mult(ms.e(a)) * sig_flat;
      add("sigma" + idx, std::move(sig));
      add("sigmaJ" + idx, sigma_operator_of_j(a));
      add("nabla" + idx, ms.nabla_cl(a));
      add("nablaJ" + idx, ms.nabla_cl_j(a));
      add_ext("sigmaf" + idx, std::move(sig_flat));
      add_ext("nablaf" + idx, ms.nabla_ext(a));
    }
    add("D_sigma", dsig);
    add("D_sigma_c", conjugate(js, dsig, Picture::clifford));
    add_ext("Dsig_ext", dsig_ext);
    add_ext("Dsig_int", dsig_int);
    d_sigma_omega_ = act(dsig, ms.omega());
    d_sigma_c_omega_ = act(get("D_sigma_c").matrix, ms.omega());
  }

  const ModelSpace<S>& model() const { return ms_; }

  bool has(const std::string& name) const { return ops_.count(name) != 0; }
  const LinearOperator<S>& get(const std::string& name) const {
    auto it = ops_.find(name);
    if (it == ops_.end()) throw StructuralError("unknown Clifford operator '" + name + "'");
    return it->second;
  }
  const std::vector<std::string>& names() const { return order_; }

  /// Dω, D^cω, D_σω and D_σ^cω as Clifford elements.
  const Multivector<S>& d_omega() const { return d_omega_cl_; }
  const Multivector<S>& dc_omega() const { return dc_omega_cl_; }
  const Multivector<S>& d_sigma_omega() const { return d_sigma_omega_; }
  const Multivector<S>& d_sigma_c_omega() const { return d_sigma_c_omega_; }

  /// σ_{J e_A}: J e_A = ±e_B, so this is ±σ_{e_B}.
  Matrix<S> sigma_operator_of_j(int a) const {
    auto img = j_of_frame(ms_.n(), a);
    return S(img.sign) * sigma_operator(ms_, img.target);
  }

 private:
  void add(const std::string& name, Matrix<S> m) {
    if (!ops_.count(name)) order_.push_back(name);
    ops_[name] = LinearOperator<S>{name, std::move(m), Picture::clifford, std::nullopt};
  }
  void add_ext(const std::string& name, Matrix<S> m) {
    if (!ops_.count(name)) order_.push_back(name);
    ops_[name] = LinearOperator<S>{name, std::move(m), Picture::exterior, std::nullopt};
  }

  const ModelSpace<S>& ms_;
  std::map<std::string, LinearOperator<S>> ops_;
  std::vector<std::string> order_;
  Multivector<S> d_omega_cl_, dc_omega_cl_, jtheta_vec_, d_sigma_omega_, d_sigma_c_omega_;
};

}  // namespace kahler
