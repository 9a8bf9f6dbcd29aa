#pragma once

#include <map>
#include <memory>
#include <string>

#include "kahler/dirac.hpp"
#include "kahler/zoo.hpp"

namespace testing_support {

using G = kahler::GaussianRational;

/// Model space and both operator zoos for a built-in model, built once per
/// test binary.
struct ModelFixture {
  explicit ModelFixture(const std::string& name)
      : ms(kahler::models::builtin(name)), ext(ms), cl(ms) {}
  kahler::ModelSpace<G> ms;
  kahler::ExteriorZoo<G> ext;
  kahler::CliffordZoo<G> cl;

  const kahler::Matrix<G>& op(const std::string& name) const { return ext.has(name) ? ext.get(name).matrix : cl.get(name).matrix; }
};

inline const ModelFixture& fixture(const std::string& name) {
  static std::map<std::string, std::unique_ptr<ModelFixture>> cache;
  auto& slot = cache[name];
  if (!slot) slot = std::make_unique<ModelFixture>(name);
  return *slot;
}

inline kahler::Multivector<G> th(int n, std::initializer_list<int> one_based) {
  auto acc = kahler::Multivector<G>::scalar(n, G(1));
  for (int k : one_based) acc = kahler::wedge(acc, kahler::Multivector<G>::basis(n, k - 1));
  return acc;
}

}  // namespace testing_support
