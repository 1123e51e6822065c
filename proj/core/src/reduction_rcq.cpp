#include "elrw/reduction_rcq.hpp"

#include <algorithm>
#include <stdexcept>

namespace elrw {

RcqReduction build_rcq_reduction(const Omq& omq, const ConjQuery& q_r) {
  if (classify(omq.query) == QueryClass::kUnsupported)
    throw std::invalid_argument("build_rcq_reduction: query is not rooted");
  {
    std::vector<ConjQuery> forks = fork_rewritings(omq.query);
    if (std::find(forks.begin(), forks.end(), q_r) == forks.end())
      throw std::invalid_argument("build_rcq_reduction: q_r is not a fork rewriting of the query");
  }

  NameTables names;
  const CoreDecomposition& d = q_r.decomposition();
  const TBox& t = omq.tbox;

  std::vector<ConceptInclusion> extra;
  for (Symbol x : d.core) {
    for (const ConceptInclusion& ci : t.inclusions())
      extra.push_back({names.sup_right(ci.lhs, x), names.sup_right(ci.rhs, x)});
  }
  // trees of q_r entail N
  Symbol n = Symbol::intern("__N");
  std::vector<Concept> tree_parts;
  for (Symbol x : d.core) {
    Concept tree = d.tree_concept_at(x);
    if (!tree.is_top()) tree_parts.push_back(names.sup_right(tree, x));
  }
  Concept n_base_lhs = Concept::conj(tree_parts);
  extra.push_back({n_base_lhs, Concept::name(n)});
  TBox t_qr = t.extended(extra);

  // Σ_{q_r}: Σ plus the superscripted names used in T_{q_r} with admitted bases
  std::set<Symbol> sig_concepts, sig_roles;
  {
    std::set<Symbol> used_c, used_r;
    for (const ConceptInclusion& ci : extra) {
      ci.lhs.collect_symbols(used_c, used_r);
      ci.rhs.collect_symbols(used_c, used_r);
    }
    std::set<Symbol> base_c, base_r;
    for (const ConceptInclusion& ci : t.inclusions()) {
      ci.lhs.collect_symbols(base_c, base_r);
      ci.rhs.collect_symbols(base_c, base_r);
    }
    for (const Atom& a : omq.query.atoms()) {
      if (a.kind == Atom::Kind::kConcept) base_c.insert(a.pred);
      if (a.kind == Atom::Kind::kRole) base_r.insert(a.pred);
    }
    for (Symbol a : base_c)
      if (omq.sigma.contains_concept(a)) sig_concepts.insert(a);
    for (Symbol r : base_r)
      if (omq.sigma.contains_role(r)) sig_roles.insert(r);
    for (Symbol name : used_c) {
      if (!names.is_sup_concept(name)) continue;
      auto [base, var] = names.sup_concept_base(name);
      if (omq.sigma.contains_concept(base)) sig_concepts.insert(name);
    }
    for (Symbol name : used_r) {
      if (!names.is_sup_role(name)) continue;
      auto [base, var] = names.sup_role_base(name);
      if (omq.sigma.contains_role(base)) sig_roles.insert(name);
    }
  }
  Signature sigma_qr = Signature::of(std::move(sig_concepts), std::move(sig_roles));

  // T^min_{q_r}: one inclusion per fork rewriting of q0 and splitting of it
  // w.r.t. A_{q_r} that preserves answer variables modulo the equalities of q_r
  auto [abox_qr, var_to_ind] = cq_as_abox(q_r);
  std::map<Symbol, Symbol> ind_to_var;
  for (const auto& [v, i] : var_to_ind) ind_to_var[i] = v;
  const EqClasses& eq = q_r.eq_classes();

  std::vector<Concept> n_lhs{n_base_lhs};
  std::vector<ConceptInclusion> min_extra;
  for (const ConjQuery& q : fork_rewritings(omq.query)) {
    for (const Splitting& sp : splittings(q, abox_qr)) {
      bool preserves = true;
      for (Symbol x : q.answer_vars()) {
        Symbol target = ind_to_var.at(sp.nu.at(x));
        bool in_class = false;
        for (Symbol y : eq.class_of(x))
          if (y == target) in_class = true;
        if (!in_class) {
          preserves = false;
          break;
        }
      }
      if (!preserves) continue;
      std::set<Symbol> r_vars(sp.r_vars.begin(), sp.r_vars.end());
      std::vector<Concept> parts;
      for (const Atom& a : q.atoms()) {
        if (a.kind != Atom::Kind::kConcept || !r_vars.count(a.x)) continue;
        parts.push_back(Concept::name(names.sup_concept(a.pred, ind_to_var.at(sp.nu.at(a.x)))));
      }
      for (size_t i = 0; i < sp.parts.size(); ++i) {
        Symbol at = ind_to_var.at(sp.nu.at(sp.mu[i]));
        parts.push_back(
            Concept::exists(names.sup_role(sp.part_roles[i], at), sp.part_concepts[i]));
      }
      Concept lhs = Concept::conj(std::move(parts));
      min_extra.push_back({lhs, Concept::name(n)});
      n_lhs.push_back(lhs);
    }
  }
  TBox t_min = t_qr.extended(min_extra);
  {
    std::sort(n_lhs.begin(), n_lhs.end());
    n_lhs.erase(std::unique(n_lhs.begin(), n_lhs.end()), n_lhs.end());
  }

  Symbol x0 = Symbol::intern("__x0");
  Omq target(std::move(t_qr), std::move(sigma_qr),
             ConjQuery({x0}, {Atom::concept_atom(n, x0)}));
  return RcqReduction{q_r,        d.core, std::move(target), std::move(t_min),
                      std::move(n_lhs), std::move(names), n, x0};
}

namespace {

ConjQuery rename_quantified_away_from(const ConjQuery& q, const std::set<Symbol>& taken) {
  std::map<Symbol, Symbol> ren;
  int counter = 0;
  std::set<Symbol> used = taken;
  for (Symbol v : q.vars()) used.insert(v);
  for (Symbol v : q.quantified_vars()) {
    if (!taken.count(v)) continue;
    Symbol fresh;
    do {
      fresh = Symbol::intern("__w" + std::to_string(counter++));
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

ConjQuery tau(const ConjQuery& q, const RcqReduction& red) {
  std::set<Symbol> core(red.core.begin(), red.core.end());
  // check the derivative shape: q restricted to core equals q_r restricted
  // to core, and everything else is trees hanging off core variables
  {
    std::set<std::string> q_core_atoms, qr_core_atoms;
    for (const Atom& a : q.atoms())
      if (a.kind == Atom::Kind::kRole && core.count(a.x) && core.count(a.y))
        q_core_atoms.insert(a.code());
    for (const Atom& a : red.fork.atoms())
      if (a.kind == Atom::Kind::kRole && core.count(a.x) && core.count(a.y))
        qr_core_atoms.insert(a.code());
    if (q_core_atoms != qr_core_atoms)
      throw std::invalid_argument("tau: query is not a derivative of the fork rewriting");
    for (const Atom& a : q.atoms()) {
      if (a.kind != Atom::Kind::kRole) continue;
      if (!core.count(a.x) && core.count(a.y))
        throw std::invalid_argument("tau: role atom from a tree into the core");
    }
    if (q.answer_vars() != red.fork.answer_vars())
      throw std::invalid_argument("tau: answer variables differ from the fork rewriting");
  }
  ConjQuery renamed = rename_quantified_away_from(q, {red.target_var});
  std::vector<Atom> atoms;
  for (const Atom& a : renamed.atoms()) {
    switch (a.kind) {
      case Atom::Kind::kConcept:
        if (core.count(a.x))
          atoms.push_back(
              Atom::concept_atom(red.names.sup_concept(a.pred, a.x), red.target_var));
        else
          atoms.push_back(a);
        break;
      case Atom::Kind::kRole: {
        bool xc = core.count(a.x) > 0, yc = core.count(a.y) > 0;
        if (xc && yc) break;  // dropped
        if (xc)
          atoms.push_back(Atom::role(red.names.sup_role(a.pred, a.x), red.target_var, a.y));
        else
          atoms.push_back(a);
        break;
      }
      case Atom::Kind::kEq:
        break;  // restored by pi from the fork rewriting
    }
  }
  return ConjQuery({red.target_var}, std::move(atoms));
}

ConjQuery pi(const ConjQuery& qp, const RcqReduction& red) {
  if (!is_conformant(qp, red.names, red.target_var))
    throw std::invalid_argument("pi: input is not a conformant tCQ");
  std::set<Symbol> core(red.core.begin(), red.core.end());
  ConjQuery renamed = rename_quantified_away_from(qp, core);
  std::vector<Atom> atoms;
  for (const Atom& a : renamed.atoms()) {
    if (a.kind == Atom::Kind::kConcept) {
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
  for (const Atom& a : red.fork.atoms()) {
    if (a.kind == Atom::Kind::kRole && core.count(a.x) && core.count(a.y)) atoms.push_back(a);
    if (a.kind == Atom::Kind::kEq) atoms.push_back(a);
  }
  return ConjQuery(red.fork.answer_vars(), std::move(atoms));
}

}  // namespace elrw
