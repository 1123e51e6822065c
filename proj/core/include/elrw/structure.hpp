#pragma once

#include <map>
#include <optional>
#include <vector>

#include "elrw/query.hpp"
#include "elrw/reasoner.hpp"

namespace elrw {

enum class QueryClass { kAq, kTreeCq, kTqCq, kRCq, kUnsupported };

std::string to_string(QueryClass c);

// Most specific applicable class: AQ ⊂ TreeCQ ⊂ TqCQ ⊂ RCQ. Boolean and
// non-rooted queries are Unsupported.
QueryClass classify(const ConjQuery& q);

// Closure of {q0} under single fork eliminations, deduplicated by canonical
// code; always contains q0. When both fork sources are answer variables both
// merge directions are produced.
std::vector<ConjQuery> fork_rewritings(const ConjQuery& q0);

// core(q) plus the trees hanging off it (re-exported from the decomposition).
std::vector<Symbol> core_of(const ConjQuery& q);

// Tree subquery with link r(x,y): the restriction of q to the variables
// reachable from y, when it is tree-shaped, answer-variable-free and r(x,y)
// is its only incoming atom.
struct TreeSubquery {
  Atom link;                    // r(x, y)
  std::vector<Atom> tree_atoms; // atoms of the subquery rooted at link.y
  Concept as_concept() const;   // the subquery as a concept rooted at link.y
};

std::vector<TreeSubquery> tree_subqueries(const ConjQuery& q);

// All q' ≺ q: one tree subquery dropped together with its link.
std::vector<ConjQuery> prec_children(const ConjQuery& q);

// q1 ⊆_T q0, via certain answers over q1 viewed as an ABox with its equality
// classes collapsed.
bool contained_in(const TBox& t, const ConjQuery& q1, const ConjQuery& q0);
bool contained_in(const Reasoner& r, const ConjQuery& q1, const ConjQuery& q0);

// Deterministic greedy ≺-minimization: repeatedly replaces q by its first
// (canonical-order) ≺-child still contained in q0. Requires q ⊆_T q0.
ConjQuery minimize(const ConjQuery& q, const TBox& t, const ConjQuery& q0);
ConjQuery minimize(const ConjQuery& q, const Reasoner& r, const ConjQuery& q0);

// Splitting ⟨R, S_1..S_l, r_1..r_l, μ, ν⟩ of a query w.r.t. an ABox.
struct Splitting {
  std::vector<Symbol> r_vars;               // R, sorted
  std::vector<std::vector<Symbol>> parts;   // S_i variable sets
  std::vector<Symbol> part_roles;           // r_i
  std::vector<Symbol> part_roots;           // root of q|S_i
  std::vector<Symbol> mu;                   // μ(i) ∈ R
  std::map<Symbol, Symbol> nu;              // ν : R → Ind(A)
  std::vector<Concept> part_concepts;       // C_{q|S_i}

  std::string to_string() const;
};

std::vector<Splitting> splittings(const ConjQuery& q, const Abox& a);

// Lemma-1 style entailment check: searches fork rewritings of the OMQ's
// query and their splittings w.r.t. the ABox for a witness. Agrees with
// certain_answer on all inputs.
bool lemma1_entails(const Omq& omq, const Abox& a, const std::vector<Symbol>& tuple);

}  // namespace elrw
