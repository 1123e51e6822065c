#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "elrw/symbol.hpp"

namespace elrw {

// EL concept term: Top | concept name | conjunction | existential restriction.
// Values are immutable and cheap to copy. Conjunctions are kept flattened,
// sorted by canonical code and duplicate-free, and never contain Top, so two
// concepts are equal up to conjunct reordering iff their codes are equal.
class Concept {
 public:
  enum class Kind { kTop, kName, kAnd, kExists };

  Concept() : Concept(top()) {}

  static const Concept& top();
  static Concept name(Symbol n);
  static Concept exists(Symbol role, const Concept& filler);
  static Concept conj(std::vector<Concept> parts);

  Kind kind() const;
  bool is_top() const { return kind() == Kind::kTop; }

  Symbol concept_name() const;             // pre: kName
  Symbol role() const;                     // pre: kExists
  const Concept& filler() const;           // pre: kExists
  const std::vector<Concept>& conjuncts() const;  // pre: kAnd

  // Top-level view: names and existentials of the flattened conjunction
  // (a single name/existential is its own top level; Top has none).
  std::vector<Symbol> top_level_names() const;
  std::vector<std::pair<Symbol, Concept>> top_level_existentials() const;

  const std::string& code() const;
  int depth() const;  // nesting depth of existentials
  int size() const;   // number of subconcept nodes

  // Collects concept and role names occurring anywhere in the term.
  void collect_symbols(std::set<Symbol>& concepts, std::set<Symbol>& roles) const;

  bool operator==(const Concept& o) const { return code() == o.code(); }
  bool operator!=(const Concept& o) const { return !(*this == o); }
  bool operator<(const Concept& o) const { return code() < o.code(); }

  // Renders in the native text syntax: Top, A, and(...), some(r, C).
  std::string to_string() const;

  struct Rep;

 private:
  explicit Concept(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

struct ConceptInclusion {
  Concept lhs;
  Concept rhs;

  std::string code() const { return lhs.code() + "<" + rhs.code(); }
  bool operator==(const ConceptInclusion& o) const { return code() == o.code(); }
  bool operator<(const ConceptInclusion& o) const { return code() < o.code(); }
  std::string to_string() const;
};

// Finite set of concept inclusions, duplicate-free under canonical encoding.
class TBox {
 public:
  TBox() = default;
  explicit TBox(std::vector<ConceptInclusion> inclusions);

  const std::vector<ConceptInclusion>& inclusions() const { return incl_; }
  bool empty() const { return incl_.empty(); }
  size_t size() const { return incl_.size(); }
  bool contains(const ConceptInclusion& ci) const;

  TBox extended(const std::vector<ConceptInclusion>& more) const;
  bool includes(const TBox& other) const;  // other ⊆ this

  std::set<Symbol> concept_names() const;
  std::set<Symbol> role_names() const;

  std::string code() const;

 private:
  std::vector<ConceptInclusion> incl_;  // sorted by code, unique
};

// Admitted ABox symbols. Either an explicit finite name set or the full
// signature (every non-reserved name). Explicitly listed names are honored
// even when reserved, which is how reduction signatures admit A^x names.
class Signature {
 public:
  Signature() = default;
  static Signature full();
  static Signature of(std::set<Symbol> concept_names, std::set<Symbol> role_names);

  bool is_full() const { return full_; }
  bool contains_concept(Symbol a) const;
  bool contains_role(Symbol r) const;

  const std::set<Symbol>& concept_names() const { return concepts_; }
  const std::set<Symbol>& role_names() const { return roles_; }

  Signature with_concepts(const std::set<Symbol>& more) const;
  Signature with_roles(const std::set<Symbol>& more) const;

 private:
  bool full_ = false;
  std::set<Symbol> concepts_;
  std::set<Symbol> roles_;
};

}  // namespace elrw
