#pragma once

// Test-only brute-force chase oracle, independent of the production reasoner:
// materializes an explicit finite chase prefix by applying the original
// (unnormalized) inclusions as rules, then answers CQs by exhaustive
// homomorphism search. Depth-capped; tests verify cap insensitivity.

#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "elrw/abox.hpp"
#include "elrw/concepts.hpp"
#include "elrw/query.hpp"

namespace elrw::testing {

class NaiveChase {
 public:
  NaiveChase(const Abox& a, const TBox& t, int depth_cap) : tbox_(t), cap_(depth_cap) {
    for (Symbol i : a.individuals()) {
      ind_index_[i] = static_cast<int>(labels_.size());
      labels_.push_back({});
      depth_.push_back(0);
    }
    for (const auto& [name, ind] : a.concept_assertions()) labels_[ind_index_[ind]].insert(name);
    for (const auto& [role, from, to] : a.role_assertions())
      edges_.emplace_back(role, ind_index_[from], ind_index_[to]);
    run();
  }

  bool holds(const Concept& c, int node) const {
    switch (c.kind()) {
      case Concept::Kind::kTop:
        return true;
      case Concept::Kind::kName:
        return labels_[node].count(c.concept_name()) > 0;
      case Concept::Kind::kExists:
        for (const auto& [role, from, to] : edges_)
          if (from == node && role == c.role() && holds(c.filler(), to)) return true;
        return false;
      case Concept::Kind::kAnd:
        for (const Concept& part : c.conjuncts())
          if (!holds(part, node)) return false;
        return true;
    }
    return false;
  }

  bool entails(const ConjQuery& q, const std::vector<Symbol>& tuple) const {
    std::map<Symbol, int> binding;
    for (size_t i = 0; i < tuple.size(); ++i) {
      auto it = ind_index_.find(tuple[i]);
      if (it == ind_index_.end()) return false;
      Symbol v = q.answer_vars()[i];
      auto bit = binding.find(v);
      if (bit != binding.end() && bit->second != it->second) return false;
      binding[v] = it->second;
    }
    for (const Atom& a : q.atoms())
      if (a.kind == Atom::Kind::kEq && binding.at(a.x) != binding.at(a.y)) return false;
    std::vector<Symbol> free;
    for (Symbol v : q.vars())
      if (!binding.count(v)) free.push_back(v);
    return try_assign(q, binding, free, 0);
  }

  int node_count() const { return static_cast<int>(labels_.size()); }
  const std::set<Symbol>& labels_of(int node) const { return labels_[node]; }

 private:
  void run() {
    std::set<std::pair<int, int>> applied;  // (inclusion idx, node)
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t ci = 0; ci < tbox_.inclusions().size(); ++ci) {
        for (int node = 0; node < static_cast<int>(labels_.size()); ++node) {
          if (depth_[node] > cap_) continue;
          if (applied.count({static_cast<int>(ci), node})) continue;
          if (!holds(tbox_.inclusions()[ci].lhs, node)) continue;
          applied.insert({static_cast<int>(ci), node});
          attach(tbox_.inclusions()[ci].rhs, node);
          changed = true;
        }
      }
    }
  }

  void attach(const Concept& d, int node) {
    for (Symbol n : d.top_level_names()) labels_[node].insert(n);
    for (const auto& [role, filler] : d.top_level_existentials()) {
      labels_.push_back({});
      depth_.push_back(depth_[node] + 1);
      int child = static_cast<int>(labels_.size()) - 1;
      edges_.emplace_back(role, node, child);
      attach(filler, child);
    }
  }

  bool try_assign(const ConjQuery& q, std::map<Symbol, int>& binding,
                  const std::vector<Symbol>& free, size_t idx) const {
    if (idx == free.size()) {
      for (const Atom& a : q.atoms()) {
        if (a.kind == Atom::Kind::kConcept && !labels_[binding.at(a.x)].count(a.pred))
          return false;
        if (a.kind == Atom::Kind::kRole) {
          bool found = false;
          for (const auto& [role, from, to] : edges_)
            if (role == a.pred && from == binding.at(a.x) && to == binding.at(a.y)) found = true;
          if (!found) return false;
        }
      }
      return true;
    }
    for (int node = 0; node < static_cast<int>(labels_.size()); ++node) {
      binding[free[idx]] = node;
      if (try_assign(q, binding, free, idx + 1)) return true;
    }
    binding.erase(free[idx]);
    return false;
  }

  TBox tbox_;
  int cap_;
  std::map<Symbol, int> ind_index_;
  std::vector<std::set<Symbol>> labels_;
  std::vector<int> depth_;
  std::vector<std::tuple<Symbol, int, int>> edges_;
};

inline int naive_depth_cap(const TBox& t, const ConjQuery& q) {
  int lhs_depth = 0;
  for (const ConceptInclusion& ci : t.inclusions()) lhs_depth = std::max(lhs_depth, ci.lhs.depth());
  return static_cast<int>(q.vars().size()) + lhs_depth + 3;
}

inline bool naive_certain_answer(const Abox& a, const TBox& t, const ConjQuery& q,
                                 const std::vector<Symbol>& tuple) {
  return NaiveChase(a, t, naive_depth_cap(t, q)).entails(q, tuple);
}

}  // namespace elrw::testing
