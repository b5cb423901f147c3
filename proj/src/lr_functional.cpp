#include "boxqi/lr_functional.hpp"

#include <stdexcept>

namespace boxqi {

std::vector<std::vector<NestingEntry>> nesting_sets(std::span<const TensorBSpline> generators) {
  const std::size_t m = generators.size();
  std::vector<Box> supports;
  supports.reserve(m);
  for (const auto& g : generators) supports.push_back(g.support());
  std::vector<std::vector<NestingEntry>> out(m);
  for (std::size_t phi = 0; phi < m; ++phi) {
    for (std::size_t psi = 0; psi < m; ++psi) {
      if (psi == phi || !supports[psi].contains(supports[phi])) continue;
      if (auto c = nesting_relation(generators[phi], generators[psi])) out[phi].push_back({psi, *c});
    }
  }
  return out;
}

namespace {

void unfold(std::size_t phi, const std::vector<std::vector<NestingEntry>>& nesting,
            std::vector<int>& state, std::vector<std::map<std::size_t, double>>& z) {
  if (state[phi] == 2) return;
  if (state[phi] == 1) throw std::logic_error("nesting relation has a cycle");
  state[phi] = 1;
  std::map<std::size_t, double> acc{{phi, 1.0}};
  for (const auto& e : nesting[phi]) {
    unfold(e.ancestor, nesting, state, z);
    for (const auto& [chi, v] : z[e.ancestor]) acc[chi] -= e.coefficient * v;
  }
  z[phi] = std::move(acc);
  state[phi] = 2;
}

}  // namespace

std::vector<std::map<std::size_t, double>> lr_unfold(const std::vector<std::vector<NestingEntry>>& nesting) {
  std::vector<int> state(nesting.size(), 0);
  std::vector<std::map<std::size_t, double>> z(nesting.size());
  for (std::size_t phi = 0; phi < nesting.size(); ++phi) unfold(phi, nesting, state, z);
  return z;
}

LRFunctionals lr_functionals(std::span<const TensorBSpline> generators, std::span<const Box> eta) {
  if (eta.size() != generators.size()) throw std::invalid_argument("one functional domain per generator");
  LRFunctionals out;
  out.nesting = nesting_sets(generators);
  out.z = lr_unfold(out.nesting);
  out.functionals.reserve(generators.size());
  for (std::size_t phi = 0; phi < generators.size(); ++phi) {
    std::vector<FunctionalTerm> terms{{1.0, GFunctional(generators[phi], eta[phi])}};
    const Box supp = generators[phi].support();
    for (const auto& [chi, v] : out.z[phi])
      if (chi != phi) terms.push_back({v, GFunctional(generators[chi], supp)});
    out.functionals.emplace_back(std::move(terms));
  }
  return out;
}

DualFunctional lr_lambda(std::size_t phi, std::span<const TensorBSpline> generators,
                         std::span<const Box> eta) {
  if (phi >= generators.size()) throw std::out_of_range("generator index out of range");
  return lr_functionals(generators, eta).functionals[phi];
}

}  // namespace boxqi
