#include "elrw/reasoner.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace elrw {

NormalTBox normalize(const TBox& t) {
  std::vector<ConceptInclusion> out;
  std::function<void(const Concept&, const Concept&)> split = [&](const Concept& lhs,
                                                                  const Concept& rhs) {
    switch (rhs.kind()) {
      case Concept::Kind::kTop:
        break;  // trivially satisfied
      case Concept::Kind::kAnd:
        for (const Concept& c : rhs.conjuncts()) split(lhs, c);
        break;
      default:
        out.push_back({lhs, rhs});
    }
  };
  for (const ConceptInclusion& ci : t.inclusions()) split(ci.lhs, ci.rhs);
  return NormalTBox{t, TBox(std::move(out)), {}};
}

TypeGraph::TypeGraph(const TBox& normalized) {
  // collect filler types: targets of existential restrictions on right-hand
  // sides, closed under nested existentials
  std::function<void(const Concept&)> collect = [&](const Concept& c) {
    for (const auto& [role, filler] : c.top_level_existentials()) {
      if (!index_.count(filler.code())) {
        index_[filler.code()] = static_cast<int>(types_.size());
        types_.push_back(filler);
        collect(filler);
      }
    }
  };
  for (const ConceptInclusion& ci : normalized.inclusions()) {
    if (ci.rhs.kind() == Concept::Kind::kExists) collect(Concept::conj({ci.rhs}));
  }
  names_.resize(types_.size());
  children_.resize(types_.size());

  std::vector<std::set<std::pair<Symbol, int>>> child_sets(types_.size());
  for (size_t t = 0; t < types_.size(); ++t) {
    for (Symbol n : types_[t].top_level_names()) names_[t].insert(n);
    for (const auto& [role, filler] : types_[t].top_level_existentials())
      child_sets[t].insert({role, index_.at(filler.code())});
  }

  auto sync_children = [&]() {
    for (size_t t = 0; t < types_.size(); ++t)
      children_[t].assign(child_sets[t].begin(), child_sets[t].end());
  };
  sync_children();

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t t = 0; t < types_.size(); ++t) {
      for (const ConceptInclusion& ci : normalized.inclusions()) {
        if (!holds(ci.lhs, static_cast<int>(t))) continue;
        if (ci.rhs.kind() == Concept::Kind::kName) {
          if (names_[t].insert(ci.rhs.concept_name()).second) changed = true;
        } else {  // ∃r.D
          std::pair<Symbol, int> child{ci.rhs.role(), index_.at(ci.rhs.filler().code())};
          if (child_sets[t].insert(child).second) {
            changed = true;
            sync_children();
          }
        }
      }
    }
  }
  sync_children();
}

int TypeGraph::type_id(const Concept& c) const {
  auto it = index_.find(c.code());
  return it == index_.end() ? -1 : it->second;
}

bool TypeGraph::holds(const Concept& c, int t) const {
  switch (c.kind()) {
    case Concept::Kind::kTop:
      return true;
    case Concept::Kind::kName:
      return names_[t].count(c.concept_name()) > 0;
    case Concept::Kind::kExists: {
      for (const auto& [role, child] : children_[t])
        if (role == c.role() && holds(c.filler(), child)) return true;
      return false;
    }
    case Concept::Kind::kAnd:
      for (const Concept& part : c.conjuncts())
        if (!holds(part, t)) return false;
      return true;
  }
  return false;
}

const std::vector<int>& ChaseModel::anon_roots(Symbol individual) const {
  static const std::vector<int> kEmpty;
  auto it = roots_.find(individual);
  return it == roots_.end() ? kEmpty : it->second;
}

const std::set<Symbol>& ChaseModel::anon_names(int id) const {
  return types_->names(nodes_[id].type);
}

bool ChaseModel::named_has_concept(Symbol individual, Symbol concept_name) const {
  auto it = labels_.find(individual);
  return it != labels_.end() && it->second.count(concept_name) > 0;
}

const std::vector<std::pair<Symbol, Symbol>>& ChaseModel::named_successors(Symbol b) const {
  static const std::vector<std::pair<Symbol, Symbol>> kEmpty;
  auto it = out_.find(b);
  return it == out_.end() ? kEmpty : it->second;
}

const std::vector<std::pair<Symbol, Symbol>>& ChaseModel::named_predecessors(Symbol b) const {
  static const std::vector<std::pair<Symbol, Symbol>> kEmpty;
  auto it = in_.find(b);
  return it == in_.end() ? kEmpty : it->second;
}

Reasoner::Reasoner(const TBox& t) : nt_(normalize(t)) {
  types_ = std::make_shared<const TypeGraph>(nt_.normalized);
}

Reasoner::Saturation Reasoner::saturate_state(const Abox& a) const {
  Saturation s;
  for (Symbol i : a.individuals()) s.labels[i];
  for (const auto& [name, ind] : a.concept_assertions()) s.labels[ind].insert(name);
  for (const auto& [role, from, to] : a.role_assertions()) {
    s.out[from].emplace_back(role, to);
    s.in[to].emplace_back(role, from);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const ConceptInclusion& ci : nt_.normalized.inclusions()) {
      for (Symbol b : a.individuals()) {
        if (!eval_named(ci.lhs, b, s)) continue;
        if (ci.rhs.kind() == Concept::Kind::kName) {
          if (s.labels[b].insert(ci.rhs.concept_name()).second) changed = true;
        } else {
          std::pair<Symbol, int> child{ci.rhs.role(), types_->type_id(ci.rhs.filler())};
          if (s.anon[b].insert(child).second) changed = true;
        }
      }
    }
  }
  return s;
}

bool Reasoner::eval_named(const Concept& c, Symbol b, const Saturation& s) const {
  switch (c.kind()) {
    case Concept::Kind::kTop:
      return true;
    case Concept::Kind::kName: {
      auto it = s.labels.find(b);
      return it != s.labels.end() && it->second.count(c.concept_name()) > 0;
    }
    case Concept::Kind::kExists: {
      auto oit = s.out.find(b);
      if (oit != s.out.end()) {
        for (const auto& [role, succ] : oit->second)
          if (role == c.role() && eval_named(c.filler(), succ, s)) return true;
      }
      auto ait = s.anon.find(b);
      if (ait != s.anon.end()) {
        for (const auto& [role, type] : ait->second)
          if (role == c.role() && types_->holds(c.filler(), type)) return true;
      }
      return false;
    }
    case Concept::Kind::kAnd:
      for (const Concept& part : c.conjuncts())
        if (!eval_named(part, b, s)) return false;
      return true;
  }
  return false;
}

Abox Reasoner::saturate(const Abox& a) const {
  Saturation s = saturate_state(a);
  std::vector<Abox::ConceptAssertion> extra;
  for (const auto& [ind, names] : s.labels)
    for (Symbol n : names) extra.emplace_back(n, ind);
  return a.with_concept_assertions(extra);
}

ChaseModel Reasoner::chase(const Abox& a, int depth) const {
  Saturation s = saturate_state(a);
  ChaseModel m;
  m.depth_ = depth;
  m.types_ = types_;
  m.base_ = [&] {
    std::vector<Abox::ConceptAssertion> extra;
    for (const auto& [ind, names] : s.labels)
      for (Symbol n : names) extra.emplace_back(n, ind);
    return a.with_concept_assertions(extra);
  }();
  for (const auto& [ind, names] : s.labels) m.labels_[ind] = names;
  m.out_ = s.out;
  m.in_ = s.in;

  // breadth-first unfolding of the anonymous forest
  std::vector<int> frontier;
  for (Symbol ind : a.individuals()) {
    auto it = s.anon.find(ind);
    if (it == s.anon.end() || depth < 1) continue;
    for (const auto& [role, type] : it->second) {
      ChaseModel::AnonNode node{-1, ind, role, type, 1, {}};
      int id = static_cast<int>(m.nodes_.size());
      m.nodes_.push_back(node);
      m.roots_[ind].push_back(id);
      frontier.push_back(id);
    }
  }
  size_t next = 0;
  while (next < frontier.size()) {
    int id = frontier[next++];
    if (m.nodes_[id].depth >= depth) continue;
    for (const auto& [role, child_type] : types_->children(m.nodes_[id].type)) {
      ChaseModel::AnonNode node{id, m.nodes_[id].owner, role, child_type,
                                m.nodes_[id].depth + 1, {}};
      int cid = static_cast<int>(m.nodes_.size());
      m.nodes_.push_back(node);
      m.nodes_[id].children.push_back(cid);
      frontier.push_back(cid);
      if (m.nodes_.size() > 2000000)
        throw std::runtime_error("chase: anonymous forest exceeds the per-query node limit");
    }
  }
  return m;
}

namespace {

// One mapped element: a named individual or an anonymous chase node.
struct Element {
  bool anon = false;
  Symbol ind;
  int node = -1;

  bool operator==(const Element& o) const {
    return anon == o.anon && ind == o.ind && node == o.node;
  }
};

struct HomSearch {
  const ChaseModel& m;
  const ConjQuery& q;
  std::map<Symbol, Element> binding;
  std::vector<Symbol> order;  // quantified variables in assignment order

  bool element_has_name(const Element& e, Symbol name) const {
    return e.anon ? m.anon_names(e.node).count(name) > 0 : m.named_has_concept(e.ind, name);
  }

  std::vector<Element> successors(const Element& e, Symbol role) const {
    std::vector<Element> out;
    if (e.anon) {
      const auto& n = m.node(e.node);
      for (int c : n.children)
        if (m.node(c).role == role) out.push_back({true, Symbol(), c});
    } else {
      for (const auto& [r, succ] : m.named_successors(e.ind))
        if (r == role) out.push_back({false, succ, -1});
      for (int root : m.anon_roots(e.ind))
        if (m.node(root).role == role) out.push_back({true, Symbol(), root});
    }
    return out;
  }

  std::vector<Element> predecessors(const Element& e, Symbol role) const {
    std::vector<Element> out;
    if (e.anon) {
      const auto& n = m.node(e.node);
      if (n.role == role) {
        if (n.parent < 0)
          out.push_back({false, n.owner, -1});
        else
          out.push_back({true, Symbol(), n.parent});
      }
    } else {
      for (const auto& [r, pred] : m.named_predecessors(e.ind))
        if (r == role) out.push_back({false, pred, -1});
    }
    return out;
  }

  std::vector<Element> all_elements() const {
    std::vector<Element> out;
    for (Symbol i : m.base().individuals()) out.push_back({false, i, -1});
    for (size_t n = 0; n < m.anon_count(); ++n) out.push_back({true, Symbol(), static_cast<int>(n)});
    return out;
  }

  bool atom_holds_if_bound(const Atom& a) const {
    if (a.kind == Atom::Kind::kConcept) {
      auto it = binding.find(a.x);
      if (it == binding.end()) return true;
      return element_has_name(it->second, a.pred);
    }
    if (a.kind == Atom::Kind::kRole) {
      auto ix = binding.find(a.x);
      auto iy = binding.find(a.y);
      if (ix == binding.end() || iy == binding.end()) return true;
      for (const Element& e : successors(ix->second, a.pred))
        if (e == iy->second) return true;
      return false;
    }
    return true;
  }

  bool consistent_with(Symbol v) const {
    for (const Atom& a : q.atoms()) {
      if (a.kind == Atom::Kind::kEq) continue;
      if (a.x == v || a.y == v) {
        if (!atom_holds_if_bound(a)) return false;
      }
    }
    return true;
  }

  bool assign(size_t idx) {
    if (idx == order.size()) return true;
    Symbol v = order[idx];
    // candidates from any atom connecting v to a bound variable
    std::vector<Element> candidates;
    bool constrained = false;
    for (const Atom& a : q.atoms()) {
      if (a.kind != Atom::Kind::kRole) continue;
      if (a.y == v && binding.count(a.x)) {
        candidates = successors(binding.at(a.x), a.pred);
        constrained = true;
        break;
      }
      if (a.x == v && binding.count(a.y)) {
        candidates = predecessors(binding.at(a.y), a.pred);
        constrained = true;
        break;
      }
    }
    if (!constrained) candidates = all_elements();
    for (const Element& e : candidates) {
      binding[v] = e;
      if (consistent_with(v) && assign(idx + 1)) return true;
      binding.erase(v);
    }
    return false;
  }
};

}  // namespace

bool Reasoner::certain_answer(const ChaseModel& m, const ConjQuery& q,
                              const std::vector<Symbol>& tuple) const {
  if (tuple.size() != q.answer_vars().size())
    throw std::invalid_argument("certain_answer: tuple arity mismatch");
  for (Symbol ind : tuple)
    if (!m.base().has_individual(ind))
      throw std::invalid_argument("certain_answer: tuple member is not an ABox individual");

  HomSearch search{m, q, {}, {}};
  for (size_t i = 0; i < tuple.size(); ++i) {
    Symbol v = q.answer_vars()[i];
    Element e{false, tuple[i], -1};
    auto it = search.binding.find(v);
    if (it != search.binding.end() && !(it->second == e)) return false;
    search.binding[v] = e;
  }
  // equality atoms: identity on the tuple
  for (const Atom& a : q.atoms()) {
    if (a.kind != Atom::Kind::kEq) continue;
    if (!(search.binding.at(a.x) == search.binding.at(a.y))) return false;
  }
  for (const Atom& a : q.atoms()) {
    if (a.kind == Atom::Kind::kEq) continue;
    if (!search.atom_holds_if_bound(a)) return false;
  }

  // quantified variables: connectivity-respecting order, bound-adjacency first
  std::set<Symbol> pending;
  for (Symbol v : q.vars())
    if (!search.binding.count(v)) pending.insert(v);
  std::vector<std::pair<Symbol, Symbol>> edges;
  for (const Atom& a : q.atoms())
    if (a.kind == Atom::Kind::kRole) edges.emplace_back(a.x, a.y);
  std::set<Symbol> placed;
  for (const auto& [v, e] : search.binding) placed.insert(v);
  while (!pending.empty()) {
    Symbol best;
    int best_links = -1;
    for (Symbol v : pending) {
      int links = 0;
      for (const auto& [x, y] : edges) {
        if ((x == v && placed.count(y)) || (y == v && placed.count(x))) links++;
      }
      if (links > best_links) {
        best_links = links;
        best = v;
      }
    }
    search.order.push_back(best);
    placed.insert(best);
    pending.erase(best);
  }
  return search.assign(0);
}

bool Reasoner::certain_answer(const Abox& a, const ConjQuery& q,
                              const std::vector<Symbol>& tuple) const {
  ChaseModel m = chase(a, static_cast<int>(q.vars().size()));
  return certain_answer(m, q, tuple);
}

bool Reasoner::entails_concept_at(const Abox& a, Symbol individual, const Concept& c) const {
  Symbol root = Symbol::intern("__root");
  ConjQuery q = concept_to_tree_cq(c, root);
  return certain_answer(a, q, {individual});
}

bool Reasoner::subsumes(const Concept& c, const Concept& d) const {
  if (d.is_top() || c == d) return true;
  Symbol root = Symbol::intern("__e0");
  ConjQuery cq = concept_to_tree_cq(c, root);
  auto [abox, map] = cq_as_abox(cq);
  ConjQuery dq = concept_to_tree_cq(d, root);
  ChaseModel m = chase(abox, d.depth());
  return certain_answer(m, dq, {root});
}

bool subsumes(const TBox& t, const Concept& c, const Concept& d) {
  return Reasoner(t).subsumes(c, d);
}

Abox saturate(const Abox& a, const TBox& t) { return Reasoner(t).saturate(a); }

ChaseModel chase(const Abox& a, const TBox& t, int depth) { return Reasoner(t).chase(a, depth); }

bool certain_answer(const Abox& a, const TBox& t, const ConjQuery& q,
                    const std::vector<Symbol>& tuple) {
  return Reasoner(t).certain_answer(a, q, tuple);
}

const Reasoner& empty_tbox_reasoner() {
  static const Reasoner r{TBox()};
  return r;
}

}  // namespace elrw
