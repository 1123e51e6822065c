#include "elrw/reduction_tq.hpp"

#include <algorithm>
#include <stdexcept>

namespace elrw {

namespace {

std::string sanitize(const std::string& code) {
  std::string out;
  for (char c : code) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
      out += c;
    else
      out += '_';
  }
  return out;
}

}  // namespace

Symbol NameTables::fresh(const std::string& wanted) const {
  std::string name = wanted;
  int suffix = 1;
  while (used_.count(Symbol::intern(name))) name = wanted + "_" + std::to_string(++suffix);
  Symbol s = Symbol::intern(name);
  used_.insert(s);
  return s;
}

Symbol NameTables::sup_concept(Symbol base, Symbol var) const {
  auto key = std::make_pair(base, var);
  auto it = sup_concept_.find(key);
  if (it != sup_concept_.end()) return it->second;
  Symbol s = fresh("__" + base.str() + "__at__" + var.str());
  sup_concept_.emplace(key, s);
  sup_concept_inv_.emplace(s, key);
  return s;
}

Symbol NameTables::sup_role(Symbol base, Symbol var) const {
  auto key = std::make_pair(base, var);
  auto it = sup_role_.find(key);
  if (it != sup_role_.end()) return it->second;
  Symbol s = fresh("__" + base.str() + "__at__" + var.str());
  sup_role_.emplace(key, s);
  sup_role_inv_.emplace(s, key);
  return s;
}

Symbol NameTables::ex_name(Symbol role, const Concept& filler, Symbol var) const {
  Concept whole = Concept::exists(role, filler);
  auto key = std::make_pair(whole.code(), var);
  auto it = ex_.find(key);
  if (it != ex_.end()) return it->second;
  Symbol s = fresh("__EX__" + role.str() + "__" + sanitize(filler.code()) + "__at__" + var.str());
  ex_.emplace(key, s);
  ex_inv_.emplace(s, std::make_pair(var, whole));
  return s;
}

Symbol NameTables::tree_name(Symbol role, const Concept& filler) const {
  Concept whole = Concept::exists(role, filler);
  auto it = tree_.find(whole.code());
  if (it != tree_.end()) return it->second;
  Symbol s = fresh("__C__" + role.str() + "__" + sanitize(filler.code()));
  tree_.emplace(whole.code(), s);
  tree_inv_.emplace(s, whole);
  return s;
}

std::pair<Symbol, Symbol> NameTables::sup_concept_base(Symbol name) const {
  return sup_concept_inv_.at(name);
}

std::pair<Symbol, Symbol> NameTables::sup_role_base(Symbol name) const {
  return sup_role_inv_.at(name);
}

Concept NameTables::tree_concept(Symbol name) const { return tree_inv_.at(name); }

Concept NameTables::sup_left(const Concept& c, Symbol var) const {
  std::vector<Concept> parts;
  for (Symbol n : c.top_level_names()) parts.push_back(Concept::name(sup_concept(n, var)));
  for (const auto& [role, filler] : c.top_level_existentials())
    parts.push_back(Concept::name(ex_name(role, filler, var)));
  return Concept::conj(std::move(parts));
}

Concept NameTables::sup_right(const Concept& c, Symbol var) const {
  std::vector<Concept> parts;
  for (Symbol n : c.top_level_names()) parts.push_back(Concept::name(sup_concept(n, var)));
  for (const auto& [role, filler] : c.top_level_existentials())
    parts.push_back(Concept::exists(sup_role(role, var), filler));
  return Concept::conj(std::move(parts));
}

TreeElimination eliminate_quantified_trees(const Omq& omq) {
  QueryClass cls = classify(omq.query);
  if (cls != QueryClass::kAq && cls != QueryClass::kTreeCq && cls != QueryClass::kTqCq)
    throw std::invalid_argument("eliminate_quantified_trees: query is not tree-quantified");

  const ConjQuery& q = omq.query;
  const CoreDecomposition& d = q.decomposition();
  NameTables names;
  std::vector<Atom> atoms;
  std::vector<ConceptInclusion> extra;
  for (const Atom& a : q.atoms()) {
    if (a.kind == Atom::Kind::kConcept) atoms.push_back(a);
    if (a.kind == Atom::Kind::kRole && d.in_core(a.x) && d.in_core(a.y)) atoms.push_back(a);
  }
  for (const auto& [var, branches] : d.branches_at) {
    for (const CoreDecomposition::Branch& b : branches) {
      Symbol tree = names.tree_name(b.role, b.subtree);
      atoms.push_back(Atom::concept_atom(tree, var));
      extra.push_back({Concept::exists(b.role, b.subtree), Concept::name(tree)});
    }
  }
  Omq eliminated(omq.tbox.extended(extra), omq.sigma, ConjQuery(q.answer_vars(), std::move(atoms)));
  return TreeElimination{omq, std::move(eliminated), std::move(names)};
}

namespace {

// Symbols of T ∪ q; a full signature is finitized to the non-reserved ones.
void relevant_symbols(const Omq& omq, std::set<Symbol>& concepts, std::set<Symbol>& roles) {
  for (const ConceptInclusion& ci : omq.tbox.inclusions()) {
    ci.lhs.collect_symbols(concepts, roles);
    ci.rhs.collect_symbols(concepts, roles);
  }
  for (const Atom& a : omq.query.atoms()) {
    if (a.kind == Atom::Kind::kConcept) concepts.insert(a.pred);
    if (a.kind == Atom::Kind::kRole) roles.insert(a.pred);
  }
}

// sub_L(T) restricted to existential restrictions, as (role, filler) pairs.
std::vector<std::pair<Symbol, Concept>> lhs_existentials(const TBox& t) {
  std::set<std::string> seen;
  std::vector<std::pair<Symbol, Concept>> out;
  std::vector<Concept> work;
  for (const ConceptInclusion& ci : t.inclusions()) work.push_back(ci.lhs);
  while (!work.empty()) {
    Concept c = work.back();
    work.pop_back();
    if (!seen.insert(c.code()).second) continue;
    switch (c.kind()) {
      case Concept::Kind::kAnd:
        for (const Concept& part : c.conjuncts()) work.push_back(part);
        break;
      case Concept::Kind::kExists:
        out.emplace_back(c.role(), c.filler());
        work.push_back(c.filler());
        break;
      default:
        break;
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return Concept::exists(a.first, a.second) < Concept::exists(b.first, b.second);
  });
  return out;
}

}  // namespace

TqReduction build_aq_reduction(TreeElimination elimination) {
  const Omq& omq = elimination.eliminated;
  const ConjQuery& q0 = omq.query;
  if (!q0.quantified_vars().empty())
    throw std::invalid_argument("build_aq_reduction: query must mention only answer variables");

  NameTables names = std::move(elimination.names);
  const TBox& t = omq.tbox;
  std::set<Symbol> cn, rn;
  relevant_symbols(omq, cn, rn);
  std::vector<std::pair<Symbol, Concept>> ex_subs = lhs_existentials(t);

  std::vector<ConceptInclusion> extra;
  // copies of the TBox per answer variable
  for (Symbol x : q0.answer_vars()) {
    for (const ConceptInclusion& ci : t.inclusions())
      extra.push_back({names.sup_left(ci.lhs, x), names.sup_right(ci.rhs, x)});
  }
  // ∃r^x.C ⊑ A^x_{∃r.C}
  for (Symbol x : q0.answer_vars()) {
    for (const auto& [role, filler] : ex_subs)
      extra.push_back({Concept::exists(names.sup_role(role, x), filler),
                       Concept::name(names.ex_name(role, filler, x))});
  }
  // C^y_L ⊑ A^x_{∃r.C} for role atoms r(x,y) of q0
  for (const Atom& a : q0.atoms()) {
    if (a.kind != Atom::Kind::kRole) continue;
    for (const auto& [role, filler] : ex_subs) {
      if (role != a.pred) continue;
      extra.push_back({names.sup_left(filler, a.y), Concept::name(names.ex_name(role, filler, a.x))});
    }
  }
  // conjunction of the query's concept atoms entails N
  Symbol n = Symbol::intern("__N");
  std::vector<Concept> query_parts;
  for (const Atom& a : q0.atoms())
    if (a.kind == Atom::Kind::kConcept)
      query_parts.push_back(Concept::name(names.sup_concept(a.pred, a.x)));
  extra.push_back({Concept::conj(std::move(query_parts)), Concept::name(n)});

  // Σ' = Σ ∪ superscripted names with admitted bases
  std::set<Symbol> sig_concepts, sig_roles;
  for (Symbol a : cn)
    if (omq.sigma.contains_concept(a)) sig_concepts.insert(a);
  for (Symbol r : rn)
    if (omq.sigma.contains_role(r)) sig_roles.insert(r);
  std::set<Symbol> sup_concepts, sup_roles;
  for (Symbol x : q0.answer_vars()) {
    for (Symbol a : sig_concepts) sup_concepts.insert(names.sup_concept(a, x));
    for (Symbol r : sig_roles) sup_roles.insert(names.sup_role(r, x));
  }
  sig_concepts.insert(sup_concepts.begin(), sup_concepts.end());
  sig_roles.insert(sup_roles.begin(), sup_roles.end());
  Signature sigma_prime = Signature::of(std::move(sig_concepts), std::move(sig_roles));

  Symbol x0 = Symbol::intern("__x0");
  Omq target(t.extended(extra), sigma_prime, ConjQuery({x0}, {Atom::concept_atom(n, x0)}));
  return TqReduction{omq, std::move(target), std::move(names), n, x0};
}

TqReduction build_aq_reduction(const Omq& eliminated) {
  return build_aq_reduction(TreeElimination{eliminated, eliminated, NameTables()});
}

bool is_conformant(const ConjQuery& q, const NameTables& names, Symbol answer_var) {
  if (q.answer_vars().size() != 1 || q.answer_vars()[0] != answer_var) return false;
  for (const Atom& a : q.atoms()) {
    switch (a.kind) {
      case Atom::Kind::kConcept: {
        bool sup = names.is_sup_concept(a.pred);
        if (sup && a.x != answer_var) return false;
        if (!sup && a.x == answer_var) return false;
        if (names.is_ex_name(a.pred) || names.is_tree_name(a.pred)) return false;
        break;
      }
      case Atom::Kind::kRole: {
        bool sup = names.is_sup_role(a.pred);
        if (sup && a.x != answer_var) return false;
        if (!sup && a.x == answer_var) return false;
        break;
      }
      case Atom::Kind::kEq:
        return false;
    }
  }
  return true;
}

bool is_conformant(const UnionQuery& u, const TqReduction& red) {
  for (const ConjQuery& q : u.disjuncts())
    if (!is_conformant(q, red.names, red.target_var)) return false;
  return true;
}

namespace {

// Renames the quantified variables of `q` away from `taken`.
ConjQuery rename_quantified_apart(const ConjQuery& q, const std::set<Symbol>& taken) {
  std::map<Symbol, Symbol> ren;
  int counter = 0;
  std::set<Symbol> used = taken;
  for (Symbol v : q.answer_vars()) used.insert(v);
  for (Symbol v : q.quantified_vars()) {
    if (!taken.count(v)) continue;
    Symbol fresh;
    do {
      fresh = Symbol::intern("__u" + std::to_string(counter++));
    } while (used.count(fresh));
    used.insert(fresh);
    ren[v] = fresh;
  }
  if (ren.empty()) return q;
  auto sub = [&](Symbol v) {
    auto it = ren.find(v);
    return it == ren.end() ? v : it->second;
  };
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
        atoms.push_back(a);
        break;
    }
  }
  return ConjQuery(q.answer_vars(), std::move(atoms));
}

}  // namespace

UnionQuery to_source_ucq(const UnionQuery& u, const TqReduction& red) {
  if (!is_conformant(u, red))
    throw std::invalid_argument("to_source_ucq: input is not a conformant tUCQ");
  const ConjQuery& q0 = red.source.query;
  std::set<Symbol> avars(q0.answer_vars().begin(), q0.answer_vars().end());
  std::vector<ConjQuery> out;
  for (const ConjQuery& raw : u.disjuncts()) {
    ConjQuery qp = rename_quantified_apart(raw, avars);
    std::vector<Atom> atoms;
    for (const Atom& a : qp.atoms()) {
      if (a.kind == Atom::Kind::kConcept) {
        if (red.names.is_tree_name(a.pred))
          throw std::logic_error("to_source_ucq: tree-elimination name survived the rewriting");
        if (red.names.is_sup_concept(a.pred)) {
          auto [base, var] = red.names.sup_concept_base(a.pred);
          atoms.push_back(Atom::concept_atom(base, var));
        } else {
          atoms.push_back(a);
        }
      } else if (a.kind == Atom::Kind::kRole) {
        if (red.names.is_sup_role(a.pred)) {
          auto [base, var] = red.names.sup_role_base(a.pred);
          atoms.push_back(Atom::role(base, var, a.y));
        } else {
          atoms.push_back(a);
        }
      }
    }
    for (const Atom& a : q0.atoms())
      if (a.kind == Atom::Kind::kRole) atoms.push_back(a);
    out.emplace_back(q0.answer_vars(), std::move(atoms));
  }
  return UnionQuery(q0.answer_vars(), std::move(out));
}

UnionQuery to_target_ucq(const UnionQuery& u, const TqReduction& red) {
  const ConjQuery& q0 = red.source.query;
  std::set<Symbol> avars(q0.answer_vars().begin(), q0.answer_vars().end());
  std::set<std::string> q0_role_atoms;
  for (const Atom& a : q0.atoms())
    if (a.kind == Atom::Kind::kRole) q0_role_atoms.insert(a.code());

  std::vector<ConjQuery> out;
  const NameTables& names = red.names;
  for (const ConjQuery& raw : u.disjuncts()) {
    ConjQuery q = rename_quantified_apart(raw, {red.target_var});
    // a derivative keeps all of q0's role atoms and hangs trees off answer vars
    for (const std::string& code : q0_role_atoms) {
      bool found = false;
      for (const Atom& a : q.atoms())
        if (a.code() == code) found = true;
      if (!found)
        throw std::invalid_argument("to_target_ucq: disjunct is not a derivative of the query");
    }
    std::vector<Atom> atoms;
    for (const Atom& a : q.atoms()) {
      if (a.kind == Atom::Kind::kEq)
        throw std::invalid_argument("to_target_ucq: derivatives cannot contain equality");
      if (a.kind == Atom::Kind::kConcept) {
        if (avars.count(a.x))
          atoms.push_back(Atom::concept_atom(names.sup_concept(a.pred, a.x), red.target_var));
        else
          atoms.push_back(a);
      } else {
        bool xa = avars.count(a.x) > 0, ya = avars.count(a.y) > 0;
        if (xa && ya) continue;  // dropped
        if (xa)
          atoms.push_back(Atom::role(names.sup_role(a.pred, a.x), red.target_var, a.y));
        else if (ya)
          throw std::invalid_argument("to_target_ucq: disjunct is not a derivative of the query");
        else
          atoms.push_back(a);
      }
    }
    out.emplace_back(std::vector<Symbol>{red.target_var}, std::move(atoms));
  }
  return UnionQuery({red.target_var}, std::move(out));
}

}  // namespace elrw
