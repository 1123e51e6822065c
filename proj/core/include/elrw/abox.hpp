#pragma once

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "elrw/symbol.hpp"

namespace elrw {

// Finite set of concept assertions A(a) and role assertions r(a,b).
// The individual universe may declare individuals beyond those occurring in
// assertions (needed when a CQ with equality-only variables is viewed as an
// ABox). Immutable after construction.
class Abox {
 public:
  using ConceptAssertion = std::pair<Symbol, Symbol>;          // (A, a)
  using RoleAssertion = std::tuple<Symbol, Symbol, Symbol>;    // (r, a, b)

  Abox() = default;
  Abox(std::vector<ConceptAssertion> concepts, std::vector<RoleAssertion> roles,
       std::vector<Symbol> declared_individuals = {});

  const std::vector<ConceptAssertion>& concept_assertions() const { return concepts_; }
  const std::vector<RoleAssertion>& role_assertions() const { return roles_; }

  // Ind(A): individuals in assertions plus declared ones, sorted.
  const std::vector<Symbol>& individuals() const { return individuals_; }
  bool has_individual(Symbol a) const;

  bool has_concept(Symbol concept_name, Symbol individual) const;
  bool has_role(Symbol role, Symbol from, Symbol to) const;

  Abox with_concept_assertions(const std::vector<ConceptAssertion>& more) const;

  bool empty() const { return concepts_.empty() && roles_.empty(); }
  std::string code() const;

 private:
  std::vector<ConceptAssertion> concepts_;  // sorted unique
  std::vector<RoleAssertion> roles_;        // sorted unique
  std::vector<Symbol> individuals_;         // sorted unique
};

}  // namespace elrw
