#include "elrw/io.hpp"

#include <algorithm>
#include <cctype>

namespace elrw {

std::string SourceSpan::to_string() const {
  return file + ":" + std::to_string(line) + ":" + std::to_string(column);
}

ParseError::ParseError(const SourceSpan& span, const std::string& message)
    : std::runtime_error(span.to_string() + ": " + message), span_(span) {}

namespace {

struct Cursor {
  std::string_view text;
  size_t pos = 0;
  SourceSpan span;

  explicit Cursor(std::string_view t, std::string_view file) : text(t) {
    span.file = std::string(file);
  }

  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }

  void advance() {
    if (done()) return;
    if (text[pos] == '\n') {
      span.line++;
      span.column = 1;
    } else {
      span.column++;
    }
    pos++;
  }

  void skip_space_and_comments(bool stop_at_newline = false) {
    while (!done()) {
      char c = peek();
      if (c == '#') {
        while (!done() && peek() != '\n') advance();
      } else if (c == '\n' && stop_at_newline) {
        return;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(span, message); }

  bool try_consume(std::string_view token) {
    skip_space_and_comments();
    if (text.substr(pos, token.size()) != token) return false;
    for (size_t i = 0; i < token.size(); ++i) advance();
    return true;
  }

  void expect(std::string_view token) {
    if (!try_consume(token)) fail("expected '" + std::string(token) + "'");
  }

  std::string identifier(const char* what) {
    skip_space_and_comments();
    if (done() || !(std::isalpha(static_cast<unsigned char>(peek()))))
      fail(std::string("expected ") + what);
    std::string out;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
      out += peek();
      advance();
    }
    return out;
  }

  Symbol name(const char* what) {
    skip_space_and_comments();
    SourceSpan at = span;
    std::string id = identifier(what);
    if (is_reserved(id))
      throw ParseError(at, "reserved-prefix name '" + id + "' is not allowed here");
    return Symbol::intern(id);
  }
};

Concept parse_concept(Cursor& c) {
  c.skip_space_and_comments();
  if (c.try_consume("and(")) {
    std::vector<Concept> parts;
    parts.push_back(parse_concept(c));
    while (c.try_consume(",")) parts.push_back(parse_concept(c));
    c.expect(")");
    return Concept::conj(std::move(parts));
  }
  if (c.try_consume("some(")) {
    Symbol role = c.name("role name");
    c.expect(",");
    Concept filler = parse_concept(c);
    c.expect(")");
    return Concept::exists(role, filler);
  }
  SourceSpan at = c.span;
  std::string id = c.identifier("concept");
  if (id == "Top") return Concept::top();
  if (is_reserved(id)) throw ParseError(at, "reserved-prefix name '" + id + "' is not allowed here");
  return Concept::name(Symbol::intern(id));
}

}  // namespace

TBox parse_tbox(std::string_view text, std::string_view file) {
  Cursor c(text, file);
  std::vector<ConceptInclusion> inclusions;
  while (true) {
    c.skip_space_and_comments();
    if (c.done()) break;
    Concept lhs = parse_concept(c);
    c.expect("SubClassOf");
    Concept rhs = parse_concept(c);
    inclusions.push_back({lhs, rhs});
  }
  return TBox(std::move(inclusions));
}

namespace {

ConjQuery parse_cq_body(Cursor& c) {
  c.skip_space_and_comments();
  c.identifier("query head");  // head predicate name, not semantically relevant
  c.expect("(");
  std::vector<Symbol> head;
  if (!c.try_consume(")")) {
    head.push_back(Symbol::intern(c.identifier("variable")));
    while (c.try_consume(",")) head.push_back(Symbol::intern(c.identifier("variable")));
    c.expect(")");
  }
  std::vector<Atom> atoms;
  c.skip_space_and_comments();
  if (c.try_consume(":-")) {
    while (true) {
      c.skip_space_and_comments();
      if (c.peek() == '.') break;
      SourceSpan at = c.span;
      std::string first = c.identifier("atom");
      c.skip_space_and_comments();
      if (c.peek() == '=') {
        c.expect("=");
        Symbol lhs = Symbol::intern(first);
        Symbol rhs = Symbol::intern(c.identifier("variable"));
        auto is_head = [&](Symbol v) {
          return std::find(head.begin(), head.end(), v) != head.end();
        };
        if (!is_head(lhs) || !is_head(rhs))
          throw ParseError(at, "equality atoms may only relate head variables");
        atoms.push_back(Atom::eq(lhs, rhs));
      } else {
        c.expect("(");
        Symbol v1 = Symbol::intern(c.identifier("variable"));
        if (c.try_consume(",")) {
          Symbol v2 = Symbol::intern(c.identifier("variable"));
          c.expect(")");
          if (is_reserved(first))
            throw ParseError(at, "reserved-prefix name '" + first + "' is not allowed here");
          atoms.push_back(Atom::role(Symbol::intern(first), v1, v2));
        } else {
          c.expect(")");
          if (first == "Top") {
            // trivially true atom, dropped
          } else {
            if (is_reserved(first))
              throw ParseError(at, "reserved-prefix name '" + first + "' is not allowed here");
            atoms.push_back(Atom::concept_atom(Symbol::intern(first), v1));
          }
        }
      }
      if (!c.try_consume(",")) break;
    }
  }
  c.expect(".");
  try {
    return ConjQuery(std::move(head), std::move(atoms));
  } catch (const std::invalid_argument& e) {
    c.fail(e.what());
  }
}

}  // namespace

ConjQuery parse_cq(std::string_view text, std::string_view file) {
  Cursor c(text, file);
  ConjQuery q = parse_cq_body(c);
  c.skip_space_and_comments();
  if (!c.done()) c.fail("trailing input after query");
  return q;
}

UnionQuery parse_ucq(std::string_view text, std::string_view file) {
  Cursor c(text, file);
  std::vector<ConjQuery> disjuncts;
  disjuncts.push_back(parse_cq_body(c));
  while (c.try_consume("|")) disjuncts.push_back(parse_cq_body(c));
  c.skip_space_and_comments();
  if (!c.done()) c.fail("trailing input after query");
  try {
    return UnionQuery(std::move(disjuncts));
  } catch (const std::invalid_argument& e) {
    c.fail(e.what());
  }
}

Abox parse_abox(std::string_view text, std::string_view file) {
  Cursor c(text, file);
  std::vector<Abox::ConceptAssertion> cs;
  std::vector<Abox::RoleAssertion> rs;
  while (true) {
    c.skip_space_and_comments();
    if (c.done()) break;
    Symbol pred = c.name("assertion predicate");
    c.expect("(");
    Symbol a = c.name("individual");
    if (c.try_consume(",")) {
      Symbol b = c.name("individual");
      c.expect(")");
      rs.emplace_back(pred, a, b);
    } else {
      c.expect(")");
      cs.emplace_back(pred, a);
    }
  }
  return Abox(std::move(cs), std::move(rs));
}

Signature parse_signature(std::string_view text, std::string_view file) {
  Cursor c(text, file);
  std::set<Symbol> names;
  bool full = false;
  while (true) {
    c.skip_space_and_comments();
    if (c.done()) break;
    if (c.try_consume("*")) {
      full = true;
      continue;
    }
    names.insert(c.name("signature symbol"));
  }
  if (full) return Signature::full();
  // The file does not distinguish concept from role names; a listed name is
  // admitted in either position.
  return Signature::of(names, names);
}

namespace {

// Quantified variables are renamed to y0, y1, ... (skipping clashes with
// answer variable names) so that serialized output is parseable even for
// internally generated variables.
std::map<Symbol, Symbol> serialization_renaming(const ConjQuery& q) {
  std::map<Symbol, Symbol> ren;
  std::set<Symbol> taken(q.answer_vars().begin(), q.answer_vars().end());
  int counter = 0;
  auto fresh = [&]() {
    while (true) {
      Symbol cand = Symbol::intern("y" + std::to_string(counter++));
      if (!taken.count(cand)) {
        taken.insert(cand);
        return cand;
      }
    }
  };
  for (const Atom& a : q.atoms()) {
    if (a.kind == Atom::Kind::kEq) continue;
    for (Symbol v : {a.x, a.y}) {
      if (v.empty() || q.is_answer_var(v) || ren.count(v)) continue;
      ren[v] = fresh();
    }
  }
  return ren;
}

std::string render_cq(const ConjQuery& q, std::string_view head) {
  std::string out(head);
  out += "(";
  for (size_t i = 0; i < q.answer_vars().size(); ++i) {
    if (i) out += ", ";
    out += q.answer_vars()[i].str();
  }
  out += ") :- ";
  std::map<Symbol, Symbol> ren = serialization_renaming(q);
  auto var = [&](Symbol v) {
    auto it = ren.find(v);
    return it == ren.end() ? v.str() : it->second.str();
  };
  std::vector<std::string> parts;
  for (const Atom& a : q.atoms()) {
    switch (a.kind) {
      case Atom::Kind::kConcept:
        parts.push_back(a.pred.str() + "(" + var(a.x) + ")");
        break;
      case Atom::Kind::kRole:
        parts.push_back(a.pred.str() + "(" + var(a.x) + ", " + var(a.y) + ")");
        break;
      case Atom::Kind::kEq:
        parts.push_back(a.x.str() + " = " + a.y.str());
        break;
    }
  }
  if (parts.empty()) {
    if (q.answer_vars().empty())
      throw std::invalid_argument("serialize_cq: Boolean queries are not supported");
    parts.push_back("Top(" + q.answer_vars()[0].str() + ")");
  }
  std::sort(parts.begin(), parts.end());
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  out += ".";
  return out;
}

}  // namespace

std::string serialize_cq(const ConjQuery& q, std::string_view head) {
  return render_cq(q, head);
}

std::string serialize_ucq(const UnionQuery& u, std::string_view head) {
  std::string out;
  for (size_t i = 0; i < u.disjuncts().size(); ++i) {
    if (i) out += "\n| ";
    out += render_cq(u.disjuncts()[i], head);
  }
  return out;
}

std::string serialize_abox(const Abox& a) {
  std::string out;
  for (const auto& [name, ind] : a.concept_assertions())
    out += name.str() + "(" + ind.str() + ")\n";
  for (const auto& [role, from, to] : a.role_assertions())
    out += role.str() + "(" + from.str() + ", " + to.str() + ")\n";
  return out;
}

}  // namespace elrw
