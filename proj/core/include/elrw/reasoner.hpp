#pragma once

#include <map>
#include <memory>
#include <set>
#include <vector>

#include "elrw/abox.hpp"
#include "elrw/concepts.hpp"
#include "elrw/query.hpp"

namespace elrw {

// Right-hand-side conjunction-free form: every inclusion is C ⊑ A or
// C ⊑ ∃r.D (trivial C ⊑ ⊤ dropped). No fresh names are introduced; the
// normalization is conservative for subsumption over the original vocabulary.
struct NormalTBox {
  TBox original;
  TBox normalized;
  std::set<Symbol> fresh_names;  // always empty for this normalization
};

NormalTBox normalize(const TBox& t);

// Derived labels and successors of the anonymous elements a TBox can
// generate. Every anonymous chase element is the root of the canonical model
// of some filler concept, so the (finitely many) filler concepts act as node
// types of the infinite anonymous forest.
class TypeGraph {
 public:
  explicit TypeGraph(const TBox& normalized);

  int type_id(const Concept& c) const;  // -1 when c is not a filler type
  size_t type_count() const { return types_.size(); }
  const Concept& type_concept(int t) const { return types_[t]; }
  const std::set<Symbol>& names(int t) const { return names_[t]; }
  const std::vector<std::pair<Symbol, int>>& children(int t) const { return children_[t]; }

  // c holds at the root of the canonical model of type t
  bool holds(const Concept& c, int t) const;

 private:
  std::vector<Concept> types_;
  std::map<std::string, int> index_;
  std::vector<std::set<Symbol>> names_;
  std::vector<std::vector<std::pair<Symbol, int>>> children_;
};

// Finite prefix of the chase of an ABox: the saturated named part plus the
// anonymous forest unfolded to a fixed depth. Immutable and shareable.
class ChaseModel {
 public:
  struct AnonNode {
    int parent;       // -1 when attached to a named individual
    Symbol owner;     // the named individual this subtree hangs under
    Symbol role;      // role of the edge from the parent
    int type;         // TypeGraph type
    int depth;        // 1 for children of named individuals
    std::vector<int> children;
  };

  const Abox& base() const { return base_; }  // saturated
  int depth() const { return depth_; }

  const std::vector<int>& anon_roots(Symbol individual) const;
  const AnonNode& node(int id) const { return nodes_[id]; }
  size_t anon_count() const { return nodes_.size(); }
  const std::set<Symbol>& anon_names(int id) const;

  bool named_has_concept(Symbol individual, Symbol concept_name) const;
  const std::vector<std::pair<Symbol, Symbol>>& named_successors(Symbol individual) const;
  const std::vector<std::pair<Symbol, Symbol>>& named_predecessors(Symbol individual) const;

 private:
  friend class Reasoner;
  Abox base_;
  int depth_ = 0;
  std::vector<AnonNode> nodes_;
  std::map<Symbol, std::vector<int>> roots_;
  std::map<Symbol, std::set<Symbol>> labels_;
  std::map<Symbol, std::vector<std::pair<Symbol, Symbol>>> out_;  // ind -> (role, succ)
  std::map<Symbol, std::vector<std::pair<Symbol, Symbol>>> in_;   // ind -> (role, pred)
  std::shared_ptr<const TypeGraph> types_;
};

// EL reasoning engine bound to one TBox. All operations are pure; instances
// are safe to share between threads once constructed.
class Reasoner {
 public:
  explicit Reasoner(const TBox& t);

  const NormalTBox& tbox() const { return nt_; }
  const TypeGraph& types() const { return *types_; }

  // t ⊨ c ⊑ d
  bool subsumes(const Concept& c, const Concept& d) const;

  // a extended with every entailed concept-name assertion on named individuals
  Abox saturate(const Abox& a) const;

  ChaseModel chase(const Abox& a, int depth) const;

  // a, t ⊨ q(tuple); tuple members must be individuals of a
  bool certain_answer(const Abox& a, const ConjQuery& q,
                      const std::vector<Symbol>& tuple) const;
  bool certain_answer(const ChaseModel& m, const ConjQuery& q,
                      const std::vector<Symbol>& tuple) const;

  // a, t ⊨ C(individual)
  bool entails_concept_at(const Abox& a, Symbol individual, const Concept& c) const;

 private:
  struct Saturation {
    std::map<Symbol, std::set<Symbol>> labels;
    std::map<Symbol, std::set<std::pair<Symbol, int>>> anon;  // ind -> (role, type)
    std::map<Symbol, std::vector<std::pair<Symbol, Symbol>>> out;
    std::map<Symbol, std::vector<std::pair<Symbol, Symbol>>> in;
  };
  Saturation saturate_state(const Abox& a) const;
  bool eval_named(const Concept& c, Symbol b, const Saturation& s) const;

  NormalTBox nt_;
  std::shared_ptr<const TypeGraph> types_;
};

// Spec-surface wrappers constructing a Reasoner per call. Prefer holding a
// Reasoner in loops.
bool subsumes(const TBox& t, const Concept& c, const Concept& d);
Abox saturate(const Abox& a, const TBox& t);
ChaseModel chase(const Abox& a, const TBox& t, int depth);
bool certain_answer(const Abox& a, const TBox& t, const ConjQuery& q,
                    const std::vector<Symbol>& tuple);

// Shared empty-TBox reasoner for structural (∅ ⊨ C ⊑ D) checks.
const Reasoner& empty_tbox_reasoner();

}  // namespace elrw
