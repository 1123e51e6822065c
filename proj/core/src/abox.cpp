#include "elrw/abox.hpp"

#include <algorithm>

namespace elrw {

Abox::Abox(std::vector<ConceptAssertion> concepts, std::vector<RoleAssertion> roles,
           std::vector<Symbol> declared_individuals)
    : concepts_(std::move(concepts)), roles_(std::move(roles)) {
  auto by_text_pair = [](const ConceptAssertion& a, const ConceptAssertion& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  };
  auto by_text_triple = [](const RoleAssertion& a, const RoleAssertion& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
    return std::get<2>(a) < std::get<2>(b);
  };
  std::sort(concepts_.begin(), concepts_.end(), by_text_pair);
  concepts_.erase(std::unique(concepts_.begin(), concepts_.end()), concepts_.end());
  std::sort(roles_.begin(), roles_.end(), by_text_triple);
  roles_.erase(std::unique(roles_.begin(), roles_.end()), roles_.end());

  std::set<Symbol> inds(declared_individuals.begin(), declared_individuals.end());
  for (const auto& [a, ind] : concepts_) inds.insert(ind);
  for (const auto& [r, from, to] : roles_) {
    inds.insert(from);
    inds.insert(to);
  }
  individuals_.assign(inds.begin(), inds.end());
}

bool Abox::has_individual(Symbol a) const {
  return std::binary_search(individuals_.begin(), individuals_.end(), a);
}

bool Abox::has_concept(Symbol concept_name, Symbol individual) const {
  return std::find(concepts_.begin(), concepts_.end(),
                   ConceptAssertion{concept_name, individual}) != concepts_.end();
}

bool Abox::has_role(Symbol role, Symbol from, Symbol to) const {
  return std::find(roles_.begin(), roles_.end(), RoleAssertion{role, from, to}) != roles_.end();
}

Abox Abox::with_concept_assertions(const std::vector<ConceptAssertion>& more) const {
  std::vector<ConceptAssertion> cs = concepts_;
  cs.insert(cs.end(), more.begin(), more.end());
  return Abox(std::move(cs), roles_, individuals_);
}

std::string Abox::code() const {
  std::string code;
  for (const auto& [a, ind] : concepts_) {
    code += a.str() + "(" + ind.str() + ");";
  }
  for (const auto& [r, from, to] : roles_) {
    code += r.str() + "(" + from.str() + "," + to.str() + ");";
  }
  code += "|";
  for (Symbol i : individuals_) code += i.str() + ",";
  return code;
}

}  // namespace elrw
