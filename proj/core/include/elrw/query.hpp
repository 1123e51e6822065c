#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "elrw/abox.hpp"
#include "elrw/concepts.hpp"

namespace elrw {

// Query atom. Equality atoms may only relate answer variables of the
// enclosing query; the query constructor normalizes them so that the second
// variable of an equality occurs in no other atom.
struct Atom {
  enum class Kind { kConcept, kRole, kEq };

  Kind kind;
  Symbol pred;  // concept or role name; unused for kEq
  Symbol x;
  Symbol y;     // unused for kConcept

  static Atom concept_atom(Symbol name, Symbol var) { return {Kind::kConcept, name, var, Symbol()}; }
  static Atom role(Symbol name, Symbol from, Symbol to) { return {Kind::kRole, name, from, to}; }
  static Atom eq(Symbol a, Symbol b) { return {Kind::kEq, Symbol(), a, b}; }

  std::string code() const;
  bool operator==(const Atom& o) const { return code() == o.code(); }
  bool operator<(const Atom& o) const { return code() < o.code(); }
  std::string to_string() const;
};

// Partition of the answer variables induced by the equality atoms.
class EqClasses {
 public:
  EqClasses() = default;
  EqClasses(const std::vector<Symbol>& answer_vars, const std::vector<Atom>& eq_atoms);

  Symbol representative(Symbol v) const;  // identity for unknown variables
  bool same(Symbol a, Symbol b) const { return representative(a) == representative(b); }
  std::vector<std::vector<Symbol>> classes() const;
  const std::vector<Symbol>& class_of(Symbol v) const;

 private:
  std::map<Symbol, Symbol> rep_;
  std::map<Symbol, std::vector<Symbol>> members_;
};

// Tree/core decomposition of a CQ: the minimal variable set `core` containing
// all answer variables such that dropping the role atoms internal to it
// leaves a disjoint union of tree-shaped CQs hanging off core variables.
struct CoreDecomposition {
  struct Branch {
    Symbol role;
    Symbol child;     // root variable of the subtree
    Concept subtree;  // subtree below `child` as a concept
  };
  std::vector<Symbol> core;                           // sorted by text
  std::map<Symbol, std::vector<Symbol>> names_at;     // concept atoms at core vars
  std::map<Symbol, std::vector<Branch>> branches_at;  // quantified branches at core vars
  std::vector<Atom> core_role_atoms;                  // both endpoints in core

  bool in_core(Symbol v) const;
  // The tree at a core variable as a concept: names ⊓ ∃role.subtree ...
  Concept tree_concept_at(Symbol v) const;
};

// Conjunctive query with distinguished answer variables. Immutable; the
// constructor enforces the equality-atom discipline and deduplicates atoms.
// Canonical codes are injective up to isomorphism (answer variables are
// significant by position, quantified variables up to renaming).
class ConjQuery {
 public:
  ConjQuery(std::vector<Symbol> answer_vars, std::vector<Atom> atoms);

  const std::vector<Symbol>& answer_vars() const;
  const std::vector<Atom>& atoms() const;  // sorted, unique
  size_t arity() const { return answer_vars().size(); }

  const std::vector<Symbol>& vars() const;  // answer vars ∪ atom vars, sorted
  std::vector<Symbol> quantified_vars() const;
  bool is_answer_var(Symbol v) const;

  bool has_equality() const;
  const EqClasses& eq_classes() const;

  const CoreDecomposition& decomposition() const;
  const std::string& code() const;

  size_t atom_count() const { return atoms().size(); }

  bool operator==(const ConjQuery& o) const { return code() == o.code(); }
  bool operator!=(const ConjQuery& o) const { return !(*this == o); }
  bool operator<(const ConjQuery& o) const { return code() < o.code(); }

 private:
  struct Rep;
  std::shared_ptr<const Rep> rep_;
};

// Disjunction of CQs sharing the same answer variable tuple. Disjuncts are
// stored sorted by canonical code and deduplicated. The answer variable list
// is kept explicitly so that the empty union still has a definite arity.
class UnionQuery {
 public:
  UnionQuery() = default;
  explicit UnionQuery(std::vector<ConjQuery> disjuncts);
  UnionQuery(std::vector<Symbol> answer_vars, std::vector<ConjQuery> disjuncts);

  const std::vector<ConjQuery>& disjuncts() const { return disjuncts_; }
  const std::vector<Symbol>& answer_vars() const { return answer_vars_; }
  size_t arity() const { return answer_vars_.size(); }
  bool empty() const { return disjuncts_.empty(); }

  std::string code() const;
  bool operator==(const UnionQuery& o) const { return code() == o.code(); }

 private:
  std::vector<Symbol> answer_vars_;
  std::vector<ConjQuery> disjuncts_;
};

// Ontology-mediated query (TBox, ABox signature, CQ). The query part of an
// OMQ may not contain equality atoms.
struct Omq {
  TBox tbox;
  Signature sigma;
  ConjQuery query;

  Omq(TBox t, Signature s, ConjQuery q);
};

// Every EL concept can be viewed as a tree-shaped CQ rooted at `root` and
// vice versa.
ConjQuery concept_to_tree_cq(const Concept& c, Symbol root);
Concept tree_cq_to_concept(const ConjQuery& q);  // rejects non-tree input

// Views a CQ as an ABox: equality atoms are dropped and every variable
// becomes a distinct individual. Returns the ABox and the variable→individual
// bijection.
std::pair<Abox, std::map<Symbol, Symbol>> cq_as_abox(const ConjQuery& q);

}  // namespace elrw
