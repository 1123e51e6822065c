#include "elrw/query.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace elrw {

std::string Atom::code() const {
  switch (kind) {
    case Kind::kConcept:
      return "c:" + pred.str() + "(" + x.str() + ")";
    case Kind::kRole:
      return "r:" + pred.str() + "(" + x.str() + "," + y.str() + ")";
    case Kind::kEq:
      return "q:(" + x.str() + "," + y.str() + ")";
  }
  return "";
}

std::string Atom::to_string() const {
  switch (kind) {
    case Kind::kConcept:
      return pred.str() + "(" + x.str() + ")";
    case Kind::kRole:
      return pred.str() + "(" + x.str() + ", " + y.str() + ")";
    case Kind::kEq:
      return x.str() + " = " + y.str();
  }
  return "";
}

EqClasses::EqClasses(const std::vector<Symbol>& answer_vars, const std::vector<Atom>& eq_atoms) {
  for (Symbol v : answer_vars) rep_[v] = v;
  std::function<Symbol(Symbol)> find = [&](Symbol v) {
    while (rep_[v] != v) v = rep_[v] = rep_[rep_[v]];
    return v;
  };
  for (const Atom& a : eq_atoms) {
    if (a.kind != Atom::Kind::kEq) continue;
    Symbol rx = find(a.x), ry = find(a.y);
    if (rx == ry) continue;
    // union by first position in answer_vars, so representatives are stable
    auto pos = [&](Symbol v) {
      return std::find(answer_vars.begin(), answer_vars.end(), v) - answer_vars.begin();
    };
    if (pos(rx) <= pos(ry))
      rep_[ry] = rx;
    else
      rep_[rx] = ry;
  }
  for (Symbol v : answer_vars) {
    Symbol r = find(v);
    rep_[v] = r;
    members_[r].push_back(v);
  }
}

Symbol EqClasses::representative(Symbol v) const {
  auto it = rep_.find(v);
  return it == rep_.end() ? v : it->second;
}

std::vector<std::vector<Symbol>> EqClasses::classes() const {
  std::vector<std::vector<Symbol>> out;
  for (const auto& [rep, members] : members_) out.push_back(members);
  return out;
}

const std::vector<Symbol>& EqClasses::class_of(Symbol v) const {
  static const std::vector<Symbol> kEmpty;
  auto it = members_.find(representative(v));
  return it == members_.end() ? kEmpty : it->second;
}

bool CoreDecomposition::in_core(Symbol v) const {
  return std::binary_search(core.begin(), core.end(), v);
}

Concept CoreDecomposition::tree_concept_at(Symbol v) const {
  std::vector<Concept> parts;
  auto nit = names_at.find(v);
  if (nit != names_at.end())
    for (Symbol n : nit->second) parts.push_back(Concept::name(n));
  auto bit = branches_at.find(v);
  if (bit != branches_at.end())
    for (const Branch& b : bit->second) parts.push_back(Concept::exists(b.role, b.subtree));
  return Concept::conj(std::move(parts));
}

struct ConjQuery::Rep {
  std::vector<Symbol> answer_vars;
  std::vector<Atom> atoms;
  std::vector<Symbol> vars;
  EqClasses eq;
  bool has_eq = false;
  CoreDecomposition decomp;
  std::string code;
};

namespace {

// The minimal core: least set V ⊇ avar(q) closed under the rules forced by
// "the remainder is a disjoint union of trees hanging off V":
//  - a quantified variable with no incoming role atom cannot sit inside a tree;
//  - a variable with two distinct incoming role atoms, and all its in-neighbors,
//    must be internal (trees have in-degree one and unique links);
//  - variables on directed cycles must be internal;
//  - an edge from outside V into V is impossible, so sources of edges into V
//    join V.
std::set<Symbol> minimal_core(const std::vector<Symbol>& answer_vars,
                              const std::vector<Atom>& atoms,
                              const std::vector<Symbol>& all_vars) {
  std::set<Symbol> core(answer_vars.begin(), answer_vars.end());
  std::map<Symbol, std::vector<const Atom*>> in_atoms;
  std::map<Symbol, std::vector<Symbol>> out_edges;
  for (const Atom& a : atoms) {
    if (a.kind != Atom::Kind::kRole) continue;
    in_atoms[a.y].push_back(&a);
    out_edges[a.x].push_back(a.y);
  }
  for (Symbol v : all_vars) {
    if (core.count(v)) continue;
    if (in_atoms[v].empty()) core.insert(v);
  }
  for (Symbol v : all_vars) {
    if (in_atoms[v].size() >= 2) {
      core.insert(v);
      for (const Atom* a : in_atoms[v]) core.insert(a->x);
    }
  }
  // vertices on directed cycles: iteratively peel vertices of out-degree 0
  // (w.r.t. remaining vertices) and in-degree 0; leftovers lie on cycles.
  {
    std::set<Symbol> remaining(all_vars.begin(), all_vars.end());
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = remaining.begin(); it != remaining.end();) {
        Symbol v = *it;
        bool has_out = false, has_in = false;
        for (Symbol w : out_edges[v])
          if (remaining.count(w)) has_out = true;
        for (const Atom* a : in_atoms[v])
          if (remaining.count(a->x)) has_in = true;
        if (!has_out || !has_in) {
          it = remaining.erase(it);
          changed = true;
        } else {
          ++it;
        }
      }
    }
    core.insert(remaining.begin(), remaining.end());
  }
  // closure: sources of edges into the core join the core
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Atom& a : atoms) {
      if (a.kind != Atom::Kind::kRole) continue;
      if (core.count(a.y) && !core.count(a.x)) {
        core.insert(a.x);
        changed = true;
      }
    }
  }
  return core;
}

CoreDecomposition decompose(const std::vector<Symbol>& answer_vars,
                            const std::vector<Atom>& atoms,
                            const std::vector<Symbol>& all_vars) {
  CoreDecomposition d;
  std::set<Symbol> core = minimal_core(answer_vars, atoms, all_vars);
  d.core.assign(core.begin(), core.end());

  std::map<Symbol, std::vector<Symbol>> names;
  std::map<Symbol, std::vector<std::pair<Symbol, Symbol>>> children;  // var -> (role, child)
  for (const Atom& a : atoms) {
    if (a.kind == Atom::Kind::kConcept) {
      names[a.x].push_back(a.pred);
    } else if (a.kind == Atom::Kind::kRole) {
      if (core.count(a.x) && core.count(a.y))
        d.core_role_atoms.push_back(a);
      else
        children[a.x].emplace_back(a.pred, a.y);
    }
  }
  for (auto& [v, ns] : names) std::sort(ns.begin(), ns.end());

  std::function<Concept(Symbol)> subtree = [&](Symbol w) -> Concept {
    if (core.count(w)) throw std::logic_error("decompose: core variable inside a tree");
    std::vector<Concept> parts;
    for (Symbol n : names[w]) parts.push_back(Concept::name(n));
    for (const auto& [role, child] : children[w]) parts.push_back(Concept::exists(role, subtree(child)));
    return Concept::conj(std::move(parts));
  };

  for (Symbol v : d.core) {
    auto it = names.find(v);
    if (it != names.end()) d.names_at[v] = it->second;
    auto ct = children.find(v);
    if (ct != children.end()) {
      std::vector<CoreDecomposition::Branch> bs;
      for (const auto& [role, child] : ct->second)
        bs.push_back({role, child, subtree(child)});
      std::sort(bs.begin(), bs.end(), [](const auto& a, const auto& b) {
        if (a.role != b.role) return a.role < b.role;
        if (a.subtree.code() != b.subtree.code()) return a.subtree.code() < b.subtree.code();
        return a.child < b.child;
      });
      d.branches_at[v] = std::move(bs);
    }
  }
  return d;
}

std::string render_code(const std::vector<Symbol>& answer_vars, const CoreDecomposition& d,
                        const std::vector<Atom>& eq_atoms) {
  // quantified core variables are canonicalized by brute force over their
  // orderings; answer variables are fixed by position
  std::map<Symbol, int> base_index;
  for (size_t i = 0; i < answer_vars.size(); ++i) base_index[answer_vars[i]] = static_cast<int>(i);
  std::vector<Symbol> qcore;
  for (Symbol v : d.core)
    if (!base_index.count(v)) qcore.push_back(v);
  if (qcore.size() > 9)
    throw std::runtime_error("ConjQuery: too many quantified core variables for canonical encoding");

  std::string eq_part = "E[";
  {
    std::vector<std::string> pairs;
    for (const Atom& a : eq_atoms) {
      int i = base_index.at(a.x), j = base_index.at(a.y);
      pairs.push_back("(" + std::to_string(std::min(i, j)) + "," + std::to_string(std::max(i, j)) + ")");
    }
    std::sort(pairs.begin(), pairs.end());
    for (const std::string& p : pairs) eq_part += p;
  }
  eq_part += "]";

  auto var_block = [&](Symbol v) {
    std::string s = "{";
    auto nit = d.names_at.find(v);
    if (nit != d.names_at.end()) {
      for (Symbol n : nit->second) s += n.str() + std::string(",");
    }
    s += "|";
    auto bit = d.branches_at.find(v);
    if (bit != d.branches_at.end()) {
      std::vector<std::string> codes;
      for (const auto& b : bit->second)
        codes.push_back("e:" + b.role.str() + "(" + b.subtree.code() + ")");
      std::sort(codes.begin(), codes.end());
      for (const std::string& c : codes) s += c + ";";
    }
    return s + "}";
  };

  std::sort(qcore.begin(), qcore.end());
  std::string best;
  do {
    std::map<Symbol, int> index = base_index;
    for (size_t i = 0; i < qcore.size(); ++i)
      index[qcore[i]] = static_cast<int>(answer_vars.size() + i);
    std::string code = "q" + std::to_string(answer_vars.size()) + "/" +
                       std::to_string(answer_vars.size() + qcore.size()) + eq_part;
    std::vector<Symbol> ordered(d.core.begin(), d.core.end());
    std::sort(ordered.begin(), ordered.end(),
              [&](Symbol a, Symbol b) { return index.at(a) < index.at(b); });
    for (Symbol v : ordered) code += var_block(v);
    std::vector<std::string> edges;
    for (const Atom& a : d.core_role_atoms)
      edges.push_back("(" + a.pred.str() + "," + std::to_string(index.at(a.x)) + "," +
                      std::to_string(index.at(a.y)) + ")");
    std::sort(edges.begin(), edges.end());
    code += "R[";
    for (const std::string& e : edges) code += e;
    code += "]";
    if (best.empty() || code < best) best = code;
  } while (std::next_permutation(qcore.begin(), qcore.end()));
  if (best.empty())
    best = "q" + std::to_string(answer_vars.size()) + "/" + std::to_string(answer_vars.size()) +
           eq_part + "R[]";
  return best;
}

}  // namespace

ConjQuery::ConjQuery(std::vector<Symbol> answer_vars, std::vector<Atom> atoms) {
  auto rep = std::make_shared<Rep>();
  rep->answer_vars = std::move(answer_vars);
  {
    std::set<Symbol> seen;
    for (Symbol v : rep->answer_vars)
      if (!seen.insert(v).second)
        throw std::invalid_argument("ConjQuery: duplicate answer variable " + v.str());
  }
  auto is_answer = [&](Symbol v) {
    return std::find(rep->answer_vars.begin(), rep->answer_vars.end(), v) !=
           rep->answer_vars.end();
  };
  std::vector<Atom> eqs;
  for (const Atom& a : atoms) {
    if (a.kind == Atom::Kind::kEq) {
      if (!is_answer(a.x) || !is_answer(a.y))
        throw std::invalid_argument("ConjQuery: equality between non-answer variables");
      eqs.push_back(a);
    }
  }
  rep->eq = EqClasses(rep->answer_vars, eqs);
  rep->has_eq = false;

  std::vector<Atom> normalized;
  for (const Atom& a : atoms) {
    switch (a.kind) {
      case Atom::Kind::kConcept:
        normalized.push_back(Atom::concept_atom(a.pred, rep->eq.representative(a.x)));
        break;
      case Atom::Kind::kRole:
        normalized.push_back(
            Atom::role(a.pred, rep->eq.representative(a.x), rep->eq.representative(a.y)));
        break;
      case Atom::Kind::kEq:
        break;
    }
  }
  for (Symbol v : rep->answer_vars) {
    Symbol r = rep->eq.representative(v);
    if (r != v) {
      normalized.push_back(Atom::eq(r, v));
      rep->has_eq = true;
    }
  }
  std::sort(normalized.begin(), normalized.end());
  normalized.erase(std::unique(normalized.begin(), normalized.end()), normalized.end());
  rep->atoms = std::move(normalized);

  std::set<Symbol> vars(rep->answer_vars.begin(), rep->answer_vars.end());
  std::vector<Atom> eq_atoms;
  for (const Atom& a : rep->atoms) {
    if (a.kind == Atom::Kind::kEq) {
      eq_atoms.push_back(a);
      continue;
    }
    vars.insert(a.x);
    if (a.kind == Atom::Kind::kRole) vars.insert(a.y);
  }
  rep->vars.assign(vars.begin(), vars.end());
  rep->decomp = decompose(rep->answer_vars, rep->atoms, rep->vars);
  rep->code = render_code(rep->answer_vars, rep->decomp, eq_atoms);
  rep_ = std::move(rep);
}

const std::vector<Symbol>& ConjQuery::answer_vars() const { return rep_->answer_vars; }
const std::vector<Atom>& ConjQuery::atoms() const { return rep_->atoms; }
const std::vector<Symbol>& ConjQuery::vars() const { return rep_->vars; }

std::vector<Symbol> ConjQuery::quantified_vars() const {
  std::vector<Symbol> out;
  for (Symbol v : rep_->vars)
    if (!is_answer_var(v)) out.push_back(v);
  return out;
}

bool ConjQuery::is_answer_var(Symbol v) const {
  return std::find(rep_->answer_vars.begin(), rep_->answer_vars.end(), v) !=
         rep_->answer_vars.end();
}

bool ConjQuery::has_equality() const { return rep_->has_eq; }
const EqClasses& ConjQuery::eq_classes() const { return rep_->eq; }
const CoreDecomposition& ConjQuery::decomposition() const { return rep_->decomp; }
const std::string& ConjQuery::code() const { return rep_->code; }

UnionQuery::UnionQuery(std::vector<ConjQuery> disjuncts) {
  if (disjuncts.empty())
    throw std::invalid_argument("UnionQuery: empty union needs explicit answer variables");
  answer_vars_ = disjuncts.front().answer_vars();
  *this = UnionQuery(answer_vars_, std::move(disjuncts));
}

UnionQuery::UnionQuery(std::vector<Symbol> answer_vars, std::vector<ConjQuery> disjuncts)
    : answer_vars_(std::move(answer_vars)) {
  for (const ConjQuery& q : disjuncts) {
    if (q.answer_vars() != answer_vars_)
      throw std::invalid_argument("UnionQuery: disjuncts must share the same answer variables");
  }
  std::sort(disjuncts.begin(), disjuncts.end());
  disjuncts.erase(std::unique(disjuncts.begin(), disjuncts.end()), disjuncts.end());
  disjuncts_ = std::move(disjuncts);
}

std::string UnionQuery::code() const {
  std::string code = "u" + std::to_string(answer_vars_.size()) + "[";
  for (const ConjQuery& q : disjuncts_) code += q.code() + "|";
  return code + "]";
}

Omq::Omq(TBox t, Signature s, ConjQuery q)
    : tbox(std::move(t)), sigma(std::move(s)), query(std::move(q)) {
  if (query.has_equality())
    throw std::invalid_argument("Omq: equality atoms are not allowed in OMQ queries");
}

ConjQuery concept_to_tree_cq(const Concept& c, Symbol root) {
  std::vector<Atom> atoms;
  int counter = 0;
  std::function<void(const Concept&, Symbol)> expand = [&](const Concept& con, Symbol at) {
    for (Symbol n : con.top_level_names()) atoms.push_back(Atom::concept_atom(n, at));
    for (const auto& [role, filler] : con.top_level_existentials()) {
      Symbol child = Symbol::intern("__v" + std::to_string(++counter));
      atoms.push_back(Atom::role(role, at, child));
      expand(filler, child);
    }
  };
  expand(c, root);
  return ConjQuery({root}, std::move(atoms));
}

Concept tree_cq_to_concept(const ConjQuery& q) {
  if (q.answer_vars().size() != 1)
    throw std::invalid_argument("tree_cq_to_concept: expected a single answer variable");
  if (q.has_equality())
    throw std::invalid_argument("tree_cq_to_concept: equality atoms not allowed");
  Symbol root = q.answer_vars()[0];

  std::map<Symbol, std::vector<Symbol>> names;
  std::map<Symbol, std::vector<std::pair<Symbol, Symbol>>> children;
  std::map<Symbol, int> indeg;
  std::set<std::pair<Symbol, Symbol>> edges;
  for (const Atom& a : q.atoms()) {
    if (a.kind == Atom::Kind::kConcept) {
      names[a.x].push_back(a.pred);
    } else {
      children[a.x].emplace_back(a.pred, a.y);
      indeg[a.y]++;
      if (!edges.insert({a.x, a.y}).second)
        throw std::invalid_argument("tree_cq_to_concept: parallel edges, not tree-shaped");
    }
  }
  if (indeg.count(root)) throw std::invalid_argument("tree_cq_to_concept: root has a parent");
  for (Symbol v : q.vars())
    if (v != root && indeg[v] != 1)
      throw std::invalid_argument("tree_cq_to_concept: not tree-shaped");

  std::set<Symbol> visited;
  std::function<Concept(Symbol)> build = [&](Symbol v) -> Concept {
    if (!visited.insert(v).second)
      throw std::invalid_argument("tree_cq_to_concept: cyclic query");
    std::vector<Concept> parts;
    for (Symbol n : names[v]) parts.push_back(Concept::name(n));
    for (const auto& [role, child] : children[v]) parts.push_back(Concept::exists(role, build(child)));
    return Concept::conj(std::move(parts));
  };
  Concept c = build(root);
  if (visited.size() != q.vars().size())
    throw std::invalid_argument("tree_cq_to_concept: disconnected query");
  return c;
}

std::pair<Abox, std::map<Symbol, Symbol>> cq_as_abox(const ConjQuery& q) {
  std::map<Symbol, Symbol> var_to_ind;
  for (Symbol v : q.vars()) var_to_ind[v] = v;
  std::vector<Abox::ConceptAssertion> cs;
  std::vector<Abox::RoleAssertion> rs;
  for (const Atom& a : q.atoms()) {
    if (a.kind == Atom::Kind::kConcept) cs.emplace_back(a.pred, a.x);
    if (a.kind == Atom::Kind::kRole) rs.emplace_back(a.pred, a.x, a.y);
  }
  std::vector<Symbol> declared = q.vars();
  return {Abox(std::move(cs), std::move(rs), std::move(declared)), std::move(var_to_ind)};
}

}  // namespace elrw
