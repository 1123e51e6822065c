#include "elrw/structure.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace elrw {

std::string to_string(QueryClass c) {
  switch (c) {
    case QueryClass::kAq:
      return "AQ";
    case QueryClass::kTreeCq:
      return "TreeCQ";
    case QueryClass::kTqCq:
      return "TqCQ";
    case QueryClass::kRCq:
      return "RCQ";
    case QueryClass::kUnsupported:
      return "Unsupported";
  }
  return "Unsupported";
}

namespace {

bool is_rooted(const ConjQuery& q) {
  if (q.answer_vars().empty()) return false;
  std::set<Symbol> reached(q.answer_vars().begin(), q.answer_vars().end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Atom& a : q.atoms()) {
      if (a.kind != Atom::Kind::kRole) continue;
      if (reached.count(a.x) && !reached.count(a.y)) reached.insert(a.y), changed = true;
      if (reached.count(a.y) && !reached.count(a.x)) reached.insert(a.x), changed = true;
    }
  }
  for (Symbol v : q.vars())
    if (!reached.count(v)) return false;
  return true;
}

}  // namespace

QueryClass classify(const ConjQuery& q) {
  if (!is_rooted(q)) return QueryClass::kUnsupported;
  const CoreDecomposition& d = q.decomposition();
  std::vector<Symbol> avars(q.answer_vars().begin(), q.answer_vars().end());
  std::sort(avars.begin(), avars.end());
  bool tq = d.core == avars;
  if (tq && q.answer_vars().size() == 1 && d.core_role_atoms.empty()) {
    if (q.atoms().size() == 1 && q.atoms()[0].kind == Atom::Kind::kConcept)
      return QueryClass::kAq;
    return QueryClass::kTreeCq;
  }
  if (tq) return QueryClass::kTqCq;
  return QueryClass::kRCq;
}

namespace {

ConjQuery merge_vars(const ConjQuery& q, Symbol keep, Symbol drop, bool add_equality) {
  auto sub = [&](Symbol v) { return v == drop ? keep : v; };
  std::vector<Atom> atoms;
  for (const Atom& a : q.atoms()) {
    switch (a.kind) {
      case Atom::Kind::kConcept:
        atoms.push_back(Atom::concept_atom(a.pred, sub(a.x)));
        break;
      case Atom::Kind::kRole:
        atoms.push_back(Atom::role(a.pred, sub(a.x), sub(a.y)));
        break;
      case Atom::Kind::kEq:
        atoms.push_back(Atom::eq(sub(a.x), sub(a.y)));
        break;
    }
  }
  if (add_equality) atoms.push_back(Atom::eq(keep, drop));
  return ConjQuery(q.answer_vars(), std::move(atoms));
}

}  // namespace

std::vector<ConjQuery> fork_rewritings(const ConjQuery& q0) {
  std::map<std::string, ConjQuery> seen;
  std::vector<ConjQuery> work{q0};
  seen.emplace(q0.code(), q0);
  while (!work.empty()) {
    ConjQuery q = work.back();
    work.pop_back();
    const auto& atoms = q.atoms();
    for (size_t i = 0; i < atoms.size(); ++i) {
      for (size_t j = i + 1; j < atoms.size(); ++j) {
        const Atom& a1 = atoms[i];
        const Atom& a2 = atoms[j];
        if (a1.kind != Atom::Kind::kRole || a2.kind != Atom::Kind::kRole) continue;
        if (a1.pred != a2.pred || a1.y != a2.y) continue;
        if (q.is_answer_var(a1.y)) continue;  // fork target must be quantified
        if (a1.x == a2.x) continue;
        bool ans1 = q.is_answer_var(a1.x), ans2 = q.is_answer_var(a2.x);
        std::vector<ConjQuery> results;
        if (ans1 && ans2) {
          results.push_back(merge_vars(q, a1.x, a2.x, true));
          results.push_back(merge_vars(q, a2.x, a1.x, true));
        } else if (ans1) {
          results.push_back(merge_vars(q, a1.x, a2.x, false));
        } else if (ans2) {
          results.push_back(merge_vars(q, a2.x, a1.x, false));
        } else {
          results.push_back(merge_vars(q, a1.x, a2.x, false));
          results.push_back(merge_vars(q, a2.x, a1.x, false));
        }
        for (ConjQuery& r : results) {
          if (seen.emplace(r.code(), r).second) work.push_back(r);
        }
      }
    }
  }
  std::vector<ConjQuery> out;
  for (const auto& [code, q] : seen) out.push_back(q);
  return out;
}

std::vector<Symbol> core_of(const ConjQuery& q) {
  if (classify(q) == QueryClass::kUnsupported)
    throw std::invalid_argument("core_of: query is not rooted");
  return q.decomposition().core;
}

Concept TreeSubquery::as_concept() const {
  ConjQuery tree({link.y}, tree_atoms);
  return tree_cq_to_concept(tree);
}

std::vector<TreeSubquery> tree_subqueries(const ConjQuery& q) {
  std::vector<TreeSubquery> out;
  for (const Atom& link : q.atoms()) {
    if (link.kind != Atom::Kind::kRole) continue;
    // variables reachable from link.y
    std::set<Symbol> reach{link.y};
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Atom& a : q.atoms())
        if (a.kind == Atom::Kind::kRole && reach.count(a.x) && !reach.count(a.y))
          reach.insert(a.y), changed = true;
    }
    if (reach.count(link.x)) continue;  // cycle through the link source
    bool has_answer = false;
    for (Symbol v : reach)
      if (q.is_answer_var(v)) has_answer = true;
    if (has_answer) continue;

    std::vector<Atom> internal;
    std::map<Symbol, int> indeg;
    bool ok = true;
    size_t internal_roles = 0;
    for (const Atom& a : q.atoms()) {
      if (a.kind == Atom::Kind::kConcept && reach.count(a.x)) internal.push_back(a);
      if (a.kind != Atom::Kind::kRole) continue;
      bool xin = reach.count(a.x) > 0, yin = reach.count(a.y) > 0;
      if (xin && yin) {
        internal.push_back(a);
        indeg[a.y]++;
        internal_roles++;
      } else if (!xin && yin) {
        if (!(a == link)) ok = false;  // second incoming atom
      }
    }
    if (!ok) continue;
    if (internal_roles != reach.size() - 1) continue;  // not a tree
    if (indeg.count(link.y)) continue;
    bool tree = true;
    for (Symbol v : reach)
      if (v != link.y && indeg[v] != 1) tree = false;
    if (!tree) continue;
    out.push_back({link, std::move(internal)});
  }
  std::sort(out.begin(), out.end(), [](const TreeSubquery& a, const TreeSubquery& b) {
    if (!(a.link == b.link)) return a.link < b.link;
    return a.as_concept() < b.as_concept();
  });
  return out;
}

std::vector<ConjQuery> prec_children(const ConjQuery& q) {
  std::vector<ConjQuery> out;
  std::set<std::string> seen;
  for (const TreeSubquery& t : tree_subqueries(q)) {
    std::set<std::string> removed;
    removed.insert(t.link.code());
    for (const Atom& a : t.tree_atoms) removed.insert(a.code());
    std::vector<Atom> rest;
    for (const Atom& a : q.atoms())
      if (!removed.count(a.code())) rest.push_back(a);
    ConjQuery child(q.answer_vars(), std::move(rest));
    if (seen.insert(child.code()).second) out.push_back(child);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool contained_in(const Reasoner& r, const ConjQuery& q1, const ConjQuery& q0) {
  if (q1.answer_vars().size() != q0.answer_vars().size())
    throw std::invalid_argument("contained_in: arity mismatch");
  auto [abox, var_to_ind] = cq_as_abox(q1);
  std::vector<Symbol> tuple;
  for (Symbol v : q1.answer_vars())
    tuple.push_back(var_to_ind.at(q1.eq_classes().representative(v)));
  return r.certain_answer(abox, q0, tuple);
}

bool contained_in(const TBox& t, const ConjQuery& q1, const ConjQuery& q0) {
  return contained_in(Reasoner(t), q1, q0);
}

ConjQuery minimize(const ConjQuery& q, const Reasoner& r, const ConjQuery& q0) {
  if (!contained_in(r, q, q0))
    throw std::invalid_argument("minimize: query is not contained in the goal");
  ConjQuery current = q;
  bool descended = true;
  while (descended) {
    descended = false;
    for (const ConjQuery& child : prec_children(current)) {
      if (contained_in(r, child, q0)) {
        current = child;
        descended = true;
        break;
      }
    }
  }
  return current;
}

ConjQuery minimize(const ConjQuery& q, const TBox& t, const ConjQuery& q0) {
  return minimize(q, Reasoner(t), q0);
}

std::string Splitting::to_string() const {
  std::string s = "R{";
  for (Symbol v : r_vars) s += v.str() + ",";
  s += "} nu{";
  for (const auto& [v, ind] : nu) s += v.str() + "->" + ind.str() + ",";
  s += "}";
  for (size_t i = 0; i < parts.size(); ++i) {
    s += " S" + std::to_string(i) + "{";
    for (Symbol v : parts[i]) s += v.str() + ",";
    s += "}:" + part_roles[i].str() + ":" + mu[i].str() + ":" + part_concepts[i].code();
  }
  return s;
}

namespace {

struct PartCheck {
  bool ok = false;
  Symbol root;
  Symbol role;
  Symbol source;  // the one R-variable with cross edges into this part
  Concept concept_value = Concept::top();
};

PartCheck check_part(const ConjQuery& q, const std::set<Symbol>& part,
                     const std::set<Symbol>& r_vars) {
  PartCheck out;
  std::map<Symbol, int> indeg;
  std::map<Symbol, std::vector<std::pair<Symbol, Symbol>>> children;
  std::map<Symbol, std::vector<Symbol>> names;
  size_t internal_roles = 0;
  std::vector<std::pair<Symbol, Symbol>> incoming;  // (role, source) cross edges
  for (const Atom& a : q.atoms()) {
    if (a.kind == Atom::Kind::kConcept) {
      if (part.count(a.x)) names[a.x].push_back(a.pred);
      continue;
    }
    if (a.kind != Atom::Kind::kRole) continue;
    bool xin = part.count(a.x) > 0, yin = part.count(a.y) > 0;
    if (xin && yin) {
      indeg[a.y]++;
      children[a.x].emplace_back(a.pred, a.y);
      internal_roles++;
    } else if (yin) {
      if (!r_vars.count(a.x)) return out;  // cross edge not from R
      incoming.emplace_back(a.pred, a.x);
    } else if (xin) {
      return out;  // edge leaving the part
    }
  }
  if (internal_roles != part.size() - 1) return out;
  std::vector<Symbol> roots;
  for (Symbol v : part)
    if (!indeg.count(v)) roots.push_back(v);
  if (roots.size() != 1) return out;
  out.root = roots[0];
  for (Symbol v : part)
    if (v != out.root && indeg[v] != 1) return out;
  if (incoming.empty()) return out;  // every part hangs off mu(i)
  for (const auto& [role, src] : incoming)
    if (role != incoming[0].first || !(src == incoming[0].second)) return out;
  // every cross edge must land on the root
  for (const Atom& a : q.atoms()) {
    if (a.kind != Atom::Kind::kRole) continue;
    if (!part.count(a.x) && part.count(a.y) && a.y != out.root) return out;
  }
  out.role = incoming[0].first;
  out.source = incoming[0].second;
  std::function<Concept(Symbol)> build = [&](Symbol v) -> Concept {
    std::vector<Concept> cs;
    for (Symbol n : names[v]) cs.push_back(Concept::name(n));
    for (const auto& [role, child] : children[v]) cs.push_back(Concept::exists(role, build(child)));
    return Concept::conj(std::move(cs));
  };
  out.concept_value = build(out.root);
  out.ok = true;
  return out;
}

}  // namespace

std::vector<Splitting> splittings(const ConjQuery& q, const Abox& a) {
  std::vector<Splitting> out;
  std::vector<Symbol> quantified = q.quantified_vars();
  std::set<Symbol> avars(q.answer_vars().begin(), q.answer_vars().end());
  const std::vector<Symbol>& inds = a.individuals();
  if (q.answer_vars().empty()) return out;

  // assignments of quantified variables to R (label 0) or parts (labels >= 1),
  // in restricted-growth form so each partition appears once
  std::vector<int> label(quantified.size(), 0);
  std::function<void(size_t, int)> enumerate = [&](size_t idx, int max_label) {
    if (idx == quantified.size()) {
      int part_count = max_label;
      std::set<Symbol> r_vars = avars;
      std::vector<std::set<Symbol>> parts(part_count);
      for (size_t i = 0; i < quantified.size(); ++i) {
        if (label[i] == 0)
          r_vars.insert(quantified[i]);
        else
          parts[label[i] - 1].insert(quantified[i]);
      }
      std::vector<PartCheck> checks;
      for (const auto& part : parts) {
        PartCheck c = check_part(q, part, r_vars);
        if (!c.ok) return;
        checks.push_back(c);
      }
      std::vector<Symbol> r_sorted(r_vars.begin(), r_vars.end());
      std::vector<Atom> r_edges;
      for (const Atom& atom : q.atoms())
        if (atom.kind == Atom::Kind::kRole && r_vars.count(atom.x) && r_vars.count(atom.y))
          r_edges.push_back(atom);
      std::map<Symbol, Symbol> nu;
      std::function<void(size_t)> assign = [&](size_t vi) {
        if (vi == r_sorted.size()) {
          Splitting sp;
          sp.r_vars = r_sorted;
          for (const auto& part : parts) sp.parts.emplace_back(part.begin(), part.end());
          for (const PartCheck& c : checks) {
            sp.part_roles.push_back(c.role);
            sp.part_roots.push_back(c.root);
            sp.mu.push_back(c.source);
            sp.part_concepts.push_back(c.concept_value);
          }
          sp.nu = nu;
          out.push_back(std::move(sp));
          return;
        }
        Symbol v = r_sorted[vi];
        for (Symbol ind : inds) {
          nu[v] = ind;
          bool consistent = true;
          for (const Atom& e : q.atoms()) {
            if (e.kind != Atom::Kind::kEq) continue;
            if ((e.x == v || e.y == v) && nu.count(e.x) && nu.count(e.y) &&
                nu.at(e.x) != nu.at(e.y))
              consistent = false;
          }
          if (consistent) {
            for (const Atom& e : r_edges) {
              if (nu.count(e.x) && nu.count(e.y) && !a.has_role(e.pred, nu.at(e.x), nu.at(e.y)))
                consistent = false;
            }
          }
          if (consistent) assign(vi + 1);
          nu.erase(v);
        }
      };
      assign(0);
      return;
    }
    for (int l = 0; l <= max_label + 1 && l <= static_cast<int>(quantified.size()); ++l) {
      label[idx] = l;
      enumerate(idx + 1, std::max(max_label, l));
    }
  };
  enumerate(0, 0);
  std::sort(out.begin(), out.end(),
            [](const Splitting& x, const Splitting& y) { return x.to_string() < y.to_string(); });
  return out;
}

bool lemma1_entails(const Omq& omq, const Abox& a, const std::vector<Symbol>& tuple) {
  if (tuple.size() != omq.query.answer_vars().size())
    throw std::invalid_argument("lemma1_entails: tuple arity mismatch");
  Reasoner r(omq.tbox);
  Abox saturated = r.saturate(a);
  ChaseModel m = r.chase(a, static_cast<int>(omq.query.vars().size()) + 1);
  const std::vector<Symbol>& avars = omq.query.answer_vars();
  for (const ConjQuery& q : fork_rewritings(omq.query)) {
    for (const Splitting& sp : splittings(q, a)) {
      bool ok = true;
      for (size_t i = 0; i < avars.size() && ok; ++i) {
        if (sp.nu.at(avars[i]) != tuple[i]) ok = false;
      }
      if (!ok) continue;
      std::set<Symbol> r_vars(sp.r_vars.begin(), sp.r_vars.end());
      for (const Atom& atom : q.atoms()) {
        if (atom.kind != Atom::Kind::kConcept || !r_vars.count(atom.x)) continue;
        if (!saturated.has_concept(atom.pred, sp.nu.at(atom.x))) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (size_t i = 0; i < sp.parts.size() && ok; ++i) {
        Concept link_concept = Concept::exists(sp.part_roles[i], sp.part_concepts[i]);
        ConjQuery probe = concept_to_tree_cq(link_concept, Symbol::intern("__probe"));
        if (!r.certain_answer(m, probe, {sp.nu.at(sp.mu[i])})) ok = false;
      }
      if (ok) return true;
    }
  }
  return false;
}

}  // namespace elrw
