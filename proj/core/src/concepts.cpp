#include "elrw/concepts.hpp"

#include <algorithm>
#include <stdexcept>

namespace elrw {

struct Concept::Rep {
  Kind kind;
  Symbol sym;                     // name or role
  std::vector<Concept> children;  // And: conjuncts; Exists: single filler
  std::string code;
  int depth = 0;
  int size = 1;
};

namespace {

std::string make_code(Concept::Kind kind, Symbol sym, const std::vector<Concept>& children) {
  switch (kind) {
    case Concept::Kind::kTop:
      return "t";
    case Concept::Kind::kName:
      return "n:" + sym.str();
    case Concept::Kind::kExists:
      return "e:" + sym.str() + "(" + children[0].code() + ")";
    case Concept::Kind::kAnd: {
      std::string code = "a(";
      for (size_t i = 0; i < children.size(); ++i) {
        if (i) code += ",";
        code += children[i].code();
      }
      return code + ")";
    }
  }
  return "";
}

std::shared_ptr<const Concept::Rep> make_rep(Concept::Kind kind, Symbol sym,
                                             std::vector<Concept> children) {
  auto rep = std::make_shared<Concept::Rep>();
  rep->kind = kind;
  rep->sym = sym;
  rep->code = make_code(kind, sym, children);
  for (const Concept& c : children) {
    rep->depth = std::max(rep->depth, (kind == Concept::Kind::kExists ? 1 : 0) + c.depth());
    rep->size += c.size();
  }
  rep->children = std::move(children);
  return rep;
}

}  // namespace

const Concept& Concept::top() {
  static Concept t(make_rep(Kind::kTop, Symbol(), {}));
  return t;
}

Concept Concept::name(Symbol n) { return Concept(make_rep(Kind::kName, n, {})); }

Concept Concept::exists(Symbol role, const Concept& filler) {
  return Concept(make_rep(Kind::kExists, role, {filler}));
}

Concept Concept::conj(std::vector<Concept> parts) {
  std::vector<Concept> flat;
  for (const Concept& p : parts) {
    if (p.is_top()) continue;
    if (p.kind() == Kind::kAnd) {
      for (const Concept& c : p.conjuncts()) flat.push_back(c);
    } else {
      flat.push_back(p);
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.empty()) return top();
  if (flat.size() == 1) return flat[0];
  return Concept(make_rep(Kind::kAnd, Symbol(), std::move(flat)));
}

Concept::Kind Concept::kind() const { return rep_->kind; }

Symbol Concept::concept_name() const {
  if (kind() != Kind::kName) throw std::logic_error("Concept: not a name");
  return rep_->sym;
}

Symbol Concept::role() const {
  if (kind() != Kind::kExists) throw std::logic_error("Concept: not an existential");
  return rep_->sym;
}

const Concept& Concept::filler() const {
  if (kind() != Kind::kExists) throw std::logic_error("Concept: not an existential");
  return rep_->children[0];
}

const std::vector<Concept>& Concept::conjuncts() const {
  if (kind() != Kind::kAnd) throw std::logic_error("Concept: not a conjunction");
  return rep_->children;
}

std::vector<Symbol> Concept::top_level_names() const {
  std::vector<Symbol> out;
  switch (kind()) {
    case Kind::kName:
      out.push_back(rep_->sym);
      break;
    case Kind::kAnd:
      for (const Concept& c : rep_->children)
        if (c.kind() == Kind::kName) out.push_back(c.concept_name());
      break;
    default:
      break;
  }
  return out;
}

std::vector<std::pair<Symbol, Concept>> Concept::top_level_existentials() const {
  std::vector<std::pair<Symbol, Concept>> out;
  switch (kind()) {
    case Kind::kExists:
      out.emplace_back(rep_->sym, rep_->children[0]);
      break;
    case Kind::kAnd:
      for (const Concept& c : rep_->children)
        if (c.kind() == Kind::kExists) out.emplace_back(c.role(), c.filler());
      break;
    default:
      break;
  }
  return out;
}

const std::string& Concept::code() const { return rep_->code; }
int Concept::depth() const { return rep_->depth; }
int Concept::size() const { return rep_->size; }

void Concept::collect_symbols(std::set<Symbol>& concepts, std::set<Symbol>& roles) const {
  switch (kind()) {
    case Kind::kTop:
      break;
    case Kind::kName:
      concepts.insert(rep_->sym);
      break;
    case Kind::kExists:
      roles.insert(rep_->sym);
      rep_->children[0].collect_symbols(concepts, roles);
      break;
    case Kind::kAnd:
      for (const Concept& c : rep_->children) c.collect_symbols(concepts, roles);
      break;
  }
}

std::string Concept::to_string() const {
  switch (kind()) {
    case Kind::kTop:
      return "Top";
    case Kind::kName:
      return rep_->sym.str();
    case Kind::kExists:
      return "some(" + rep_->sym.str() + ", " + rep_->children[0].to_string() + ")";
    case Kind::kAnd: {
      std::string s = "and(";
      for (size_t i = 0; i < rep_->children.size(); ++i) {
        if (i) s += ", ";
        s += rep_->children[i].to_string();
      }
      return s + ")";
    }
  }
  return "";
}

std::string ConceptInclusion::to_string() const {
  return lhs.to_string() + " SubClassOf " + rhs.to_string();
}

TBox::TBox(std::vector<ConceptInclusion> inclusions) : incl_(std::move(inclusions)) {
  std::sort(incl_.begin(), incl_.end());
  incl_.erase(std::unique(incl_.begin(), incl_.end()), incl_.end());
}

bool TBox::contains(const ConceptInclusion& ci) const {
  return std::binary_search(incl_.begin(), incl_.end(), ci);
}

TBox TBox::extended(const std::vector<ConceptInclusion>& more) const {
  std::vector<ConceptInclusion> all = incl_;
  all.insert(all.end(), more.begin(), more.end());
  return TBox(std::move(all));
}

bool TBox::includes(const TBox& other) const {
  for (const ConceptInclusion& ci : other.incl_)
    if (!contains(ci)) return false;
  return true;
}

std::set<Symbol> TBox::concept_names() const {
  std::set<Symbol> concepts, roles;
  for (const ConceptInclusion& ci : incl_) {
    ci.lhs.collect_symbols(concepts, roles);
    ci.rhs.collect_symbols(concepts, roles);
  }
  return concepts;
}

std::set<Symbol> TBox::role_names() const {
  std::set<Symbol> concepts, roles;
  for (const ConceptInclusion& ci : incl_) {
    ci.lhs.collect_symbols(concepts, roles);
    ci.rhs.collect_symbols(concepts, roles);
  }
  return roles;
}

std::string TBox::code() const {
  std::string code;
  for (const ConceptInclusion& ci : incl_) {
    code += ci.code();
    code += ";";
  }
  return code;
}

Signature Signature::full() {
  Signature s;
  s.full_ = true;
  return s;
}

Signature Signature::of(std::set<Symbol> concept_names, std::set<Symbol> role_names) {
  Signature s;
  s.concepts_ = std::move(concept_names);
  s.roles_ = std::move(role_names);
  return s;
}

bool Signature::contains_concept(Symbol a) const {
  if (concepts_.count(a)) return true;
  return full_ && !is_reserved(a);
}

bool Signature::contains_role(Symbol r) const {
  if (roles_.count(r)) return true;
  return full_ && !is_reserved(r);
}

Signature Signature::with_concepts(const std::set<Symbol>& more) const {
  Signature s = *this;
  s.concepts_.insert(more.begin(), more.end());
  return s;
}

Signature Signature::with_roles(const std::set<Symbol>& more) const {
  Signature s = *this;
  s.roles_.insert(more.begin(), more.end());
  return s;
}

}  // namespace elrw
