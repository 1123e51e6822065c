#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "elrw/query.hpp"

namespace elrw {

struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;

  std::string to_string() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const SourceSpan& span, const std::string& message);
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

// Native text formats. One inclusion per line: `<concept> SubClassOf <concept>`
// with concepts `Top`, names, `and(c, c, ...)`, `some(role, c)`. `#` starts a
// comment. Reserved-prefix names are rejected in all user input.
TBox parse_tbox(std::string_view text, std::string_view file = "<tbox>");

// `q(x, y) :- A(x), r(x, z), B(z), x = y.` — variables not in the head are
// quantified; equality only between head variables. `Top(v)` is accepted as a
// trivially true atom and dropped.
ConjQuery parse_cq(std::string_view text, std::string_view file = "<query>");

// Disjuncts separated by `|`.
UnionQuery parse_ucq(std::string_view text, std::string_view file = "<query>");

// ABox lines `A(a)` and `r(a, b)`.
Abox parse_abox(std::string_view text, std::string_view file = "<abox>");

// One name per line; a single `*` denotes the full signature.
Signature parse_signature(std::string_view text, std::string_view file = "<signature>");

// Deterministic canonical rendering; round-trips through parse_cq/parse_ucq
// up to canonical encoding (quantified variables are renamed).
std::string serialize_cq(const ConjQuery& q, std::string_view head = "q");
std::string serialize_ucq(const UnionQuery& u, std::string_view head = "q");

std::string serialize_abox(const Abox& a);

}  // namespace elrw
