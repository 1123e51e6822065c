#pragma once

#include <map>
#include <string>

#include "elrw/query.hpp"
#include "elrw/structure.hpp"

namespace elrw {

// Bidirectional tables for the generated names of the reductions:
// superscripted copies A^x / r^x, the A^x_{∃r.E} names of the tqCQ
// construction, and the A_C names of quantified-tree elimination. Rendered
// names carry the reserved prefix and are deduplicated deterministically.
class NameTables {
 public:
  Symbol sup_concept(Symbol base, Symbol var) const;  // A^x, interned on demand
  Symbol sup_role(Symbol base, Symbol var) const;      // r^x
  Symbol ex_name(Symbol role, const Concept& filler, Symbol var) const;  // A^x_{∃r.E}
  Symbol tree_name(Symbol role, const Concept& filler) const;            // A_{∃r.E}

  bool is_sup_concept(Symbol name) const { return sup_concept_inv_.count(name) > 0; }
  bool is_sup_role(Symbol name) const { return sup_role_inv_.count(name) > 0; }
  bool is_ex_name(Symbol name) const { return ex_inv_.count(name) > 0; }
  bool is_tree_name(Symbol name) const { return tree_inv_.count(name) > 0; }

  std::pair<Symbol, Symbol> sup_concept_base(Symbol name) const;  // (A, x)
  std::pair<Symbol, Symbol> sup_role_base(Symbol name) const;     // (r, x)
  Concept tree_concept(Symbol name) const;                        // ∃r.E for A_{∃r.E}

  // C^x_L and C^x_R of the constructions (C a flat conjunction).
  Concept sup_left(const Concept& c, Symbol var) const;
  Concept sup_right(const Concept& c, Symbol var) const;

 private:
  Symbol fresh(const std::string& wanted) const;
  mutable std::map<std::pair<Symbol, Symbol>, Symbol> sup_concept_;
  mutable std::map<std::pair<Symbol, Symbol>, Symbol> sup_role_;
  mutable std::map<std::pair<std::string, Symbol>, Symbol> ex_;  // (code ∃r.E, x)
  mutable std::map<std::string, Symbol> tree_;                   // code ∃r.E
  mutable std::map<Symbol, std::pair<Symbol, Symbol>> sup_concept_inv_;
  mutable std::map<Symbol, std::pair<Symbol, Symbol>> sup_role_inv_;
  mutable std::map<Symbol, std::pair<Symbol, Concept>> ex_inv_;
  mutable std::map<Symbol, Concept> tree_inv_;
  mutable std::set<Symbol> used_;
};

// Quantified-tree elimination: every quantified branch ∃r.E at an answer
// variable becomes the atom A_{∃r.E}(x), with ∃r.E ⊑ A_{∃r.E} added to the
// TBox; concept atoms at answer variables stay. The result is equivalent to
// the input OMQ and its query mentions only answer variables.
struct TreeElimination {
  Omq original;
  Omq eliminated;
  NameTables names;
};

TreeElimination eliminate_quantified_trees(const Omq& omq);

// The (EL, tqCQ) → (EL, AQ) construction: Q' = (T', Σ', N(x)).
struct TqReduction {
  Omq source;   // post tree-elimination; answer variables only
  Omq target;   // (T', Σ', N(x0))
  NameTables names;
  Symbol n_name;
  Symbol target_var;
};

TqReduction build_aq_reduction(const Omq& eliminated);
TqReduction build_aq_reduction(TreeElimination elimination);

// Conformance: superscripted names only at the answer variable, plain names
// only at quantified variables.
bool is_conformant(const ConjQuery& q, const NameTables& names, Symbol answer_var);
bool is_conformant(const UnionQuery& u, const TqReduction& red);

// The corresponding UCQ for Q: A^x(x0) → A(x), r^x(x0,y) → r(x,y), plus the
// answer-variable role atoms of q0.
UnionQuery to_source_ucq(const UnionQuery& u, const TqReduction& red);

// The corresponding UCQ for Q' on derivatives of q0: A(x) at answer x →
// A^x(x0), r(x,y) into the quantified part → r^x(x0,y); answer-variable role
// atoms are dropped.
UnionQuery to_target_ucq(const UnionQuery& u, const TqReduction& red);

}  // namespace elrw
