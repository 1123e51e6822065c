#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "elrw/query.hpp"
#include "helpers.hpp"

using namespace elrw;
using elrw::testing::Rng;
using elrw::testing::S;

TEST_CASE("concept conjunctions are flattened, sorted and duplicate-free") {
  Concept a = Concept::name(S("A"));
  Concept b = Concept::name(S("B"));
  Concept nested = Concept::conj({a, Concept::conj({b, a})});
  REQUIRE(nested.kind() == Concept::Kind::kAnd);
  CHECK(nested.conjuncts().size() == 2);
  CHECK(Concept::conj({a, b}) == Concept::conj({b, a}));
  CHECK(Concept::conj({a, Concept::top()}) == a);
  CHECK(Concept::conj({}) == Concept::top());
  CHECK(Concept::conj({a, a}) == a);
}

TEST_CASE("concept codes are injective up to conjunct reordering") {
  Concept c1 = Concept::exists(S("r"), Concept::conj({Concept::name(S("B")), Concept::name(S("A"))}));
  Concept c2 = Concept::exists(S("r"), Concept::conj({Concept::name(S("A")), Concept::name(S("B"))}));
  CHECK(c1.code() == c2.code());
  Concept c3 = Concept::exists(S("s"), Concept::conj({Concept::name(S("A")), Concept::name(S("B"))}));
  CHECK(c1.code() != c3.code());
}

TEST_CASE("concept_to_tree_cq on the section-2 example concept") {
  // A ⊓ ∃r.(B ⊓ ∃s.A) rooted at x
  Concept c = Concept::conj(
      {Concept::name(S("A")),
       Concept::exists(S("r"), Concept::conj({Concept::name(S("B")),
                                              Concept::exists(S("s"), Concept::name(S("A")))}))});
  ConjQuery q = concept_to_tree_cq(c, S("x"));
  CHECK(q.answer_vars() == std::vector<Symbol>{S("x")});
  CHECK(q.atoms().size() == 5);
  CHECK(q.vars().size() == 3);
  CHECK(tree_cq_to_concept(q) == c);
}

TEST_CASE("concept_to_tree_cq trivial cases") {
  ConjQuery top = concept_to_tree_cq(Concept::top(), S("x"));
  CHECK(top.atoms().empty());
  CHECK(tree_cq_to_concept(top) == Concept::top());

  ConjQuery edge = concept_to_tree_cq(Concept::exists(S("r"), Concept::top()), S("x"));
  CHECK(edge.atoms().size() == 1);
  CHECK(edge.vars().size() == 2);
}

TEST_CASE("tree_cq_to_concept direct reading and rejection") {
  ConjQuery q({S("x")}, {Atom::concept_atom(S("A"), S("x")), Atom::role(S("r"), S("x"), S("y"))});
  CHECK(tree_cq_to_concept(q) ==
        Concept::conj({Concept::name(S("A")), Concept::exists(S("r"), Concept::top())}));

  // non-tree: y has two parents
  ConjQuery diamond({S("x")}, {Atom::role(S("r"), S("x"), S("y")), Atom::role(S("r"), S("x"), S("z")),
                               Atom::role(S("s"), S("z"), S("y"))});
  CHECK_THROWS_AS(tree_cq_to_concept(diamond), std::invalid_argument);
}

TEST_CASE("concept/tree round trip on random terms") {
  Rng rng(elrw::testing::corpus_seed());
  std::vector<Symbol> names = {S("A"), S("B"), S("C")};
  std::vector<Symbol> roles = {S("r"), S("s")};
  for (int i = 0; i < 300; ++i) {
    Concept c = elrw::testing::random_concept(rng, names, roles, 4);
    ConjQuery q = concept_to_tree_cq(c, S("x"));
    CHECK(tree_cq_to_concept(q) == c);
    // and the other direction: tree CQ -> concept -> tree CQ is iso (same code)
    ConjQuery q2 = concept_to_tree_cq(tree_cq_to_concept(q), S("x"));
    CHECK(q.code() == q2.code());
  }
}

TEST_CASE("cq_as_abox drops equality atoms and maps variables bijectively") {
  ConjQuery q({S("x")}, {Atom::concept_atom(S("A"), S("x")), Atom::role(S("r"), S("x"), S("y"))});
  auto [abox, map] = cq_as_abox(q);
  CHECK(abox.concept_assertions().size() == 1);
  CHECK(abox.role_assertions().size() == 1);
  CHECK(map.size() == 2);

  ConjQuery qe({S("x"), S("y")}, {Atom::role(S("r"), S("x"), S("y")), Atom::eq(S("x"), S("y"))});
  auto [abox2, map2] = cq_as_abox(qe);
  CHECK(abox2.concept_assertions().empty());
  CHECK(abox2.role_assertions().size() == 1);
  CHECK(map2.size() == 2);  // both variables present even though equated
  CHECK(abox2.individuals().size() == 2);
}

TEST_CASE("cq_as_abox on q3 of the splitting example yields 8 assertions over 4 individuals") {
  ConjQuery q3({S("x")}, {
      Atom::concept_atom(S("Person"), S("x")),
      Atom::role(S("hasDisease"), S("x"), S("y1")),
      Atom::concept_atom(S("MelaminDeficiency"), S("y1")),
      Atom::role(S("causedBy"), S("y1"), S("z")),
      Atom::role(S("hasDisease"), S("x"), S("y2")),
      Atom::concept_atom(S("ImpairedVision"), S("y2")),
      Atom::role(S("causedBy"), S("y2"), S("z")),
      Atom::concept_atom(S("GeneDefect"), S("z")),
  });
  auto [abox, map] = cq_as_abox(q3);
  CHECK(abox.concept_assertions().size() + abox.role_assertions().size() == 8);
  CHECK(abox.individuals().size() == 4);
}

TEST_CASE("equality atoms are normalized onto representatives") {
  ConjQuery q({S("x"), S("y")}, {Atom::concept_atom(S("B"), S("y")), Atom::eq(S("x"), S("y"))});
  // B(y) with x=y normalizes to B(x) ∧ x=y
  bool found = false;
  for (const Atom& a : q.atoms())
    if (a.kind == Atom::Kind::kConcept) {
      CHECK(a.x == S("x"));
      found = true;
    }
  CHECK(found);
  CHECK(q.has_equality());
  CHECK(q.eq_classes().same(S("x"), S("y")));

  CHECK_THROWS_AS(ConjQuery({S("x")}, {Atom::eq(S("x"), S("q"))}), std::invalid_argument);
}

TEST_CASE("canonical codes identify isomorphic queries and separate answer positions") {
  // same query up to renaming the quantified variable
  ConjQuery a({S("x")}, {Atom::role(S("r"), S("x"), S("u")), Atom::concept_atom(S("A"), S("u"))});
  ConjQuery b({S("x")}, {Atom::role(S("r"), S("x"), S("w")), Atom::concept_atom(S("A"), S("w"))});
  CHECK(a.code() == b.code());

  // answer variables are positional: A(x) vs A(y) in q(x,y) differ
  ConjQuery c({S("x"), S("y")}, {Atom::concept_atom(S("A"), S("x")), Atom::role(S("r"), S("x"), S("y"))});
  ConjQuery d({S("x"), S("y")}, {Atom::concept_atom(S("A"), S("y")), Atom::role(S("r"), S("x"), S("y"))});
  CHECK(c.code() != d.code());

  // quantified-core isomorphism: diamond with swapped middle names
  ConjQuery e({S("x")}, {Atom::role(S("r"), S("x"), S("u")), Atom::role(S("r"), S("x"), S("v")),
                         Atom::role(S("s"), S("u"), S("m")), Atom::role(S("s"), S("v"), S("m")),
                         Atom::concept_atom(S("A"), S("u"))});
  ConjQuery f({S("x")}, {Atom::role(S("r"), S("x"), S("v")), Atom::role(S("r"), S("x"), S("u")),
                         Atom::role(S("s"), S("v"), S("m")), Atom::role(S("s"), S("u"), S("m")),
                         Atom::concept_atom(S("A"), S("v"))});
  CHECK(e.code() == f.code());
}

TEST_CASE("core decomposition of a tqCQ keeps trees off the answer variables") {
  ConjQuery q({S("x1"), S("x2")},
              {Atom::role(S("r"), S("x1"), S("x2")), Atom::role(S("r"), S("x2"), S("x1")),
               Atom::role(S("r"), S("x1"), S("y1")), Atom::role(S("s"), S("x2"), S("y2"))});
  const CoreDecomposition& d = q.decomposition();
  CHECK(d.core == std::vector<Symbol>{S("x1"), S("x2")});
  CHECK(d.core_role_atoms.size() == 2);
  CHECK(d.branches_at.at(S("x1")).size() == 1);
  CHECK(d.branches_at.at(S("x2")).size() == 1);
}

TEST_CASE("UnionQuery deduplicates and enforces shared answer variables") {
  ConjQuery a({S("x")}, {Atom::concept_atom(S("A"), S("x"))});
  ConjQuery b({S("x")}, {Atom::concept_atom(S("B"), S("x"))});
  UnionQuery u({a, b, a});
  CHECK(u.disjuncts().size() == 2);
  ConjQuery other({S("z")}, {Atom::concept_atom(S("A"), S("z"))});
  CHECK_THROWS_AS(UnionQuery({a, other}), std::invalid_argument);
}

TEST_CASE("Omq rejects equality in its query") {
  TBox t;
  ConjQuery qe({S("x"), S("y")}, {Atom::role(S("r"), S("x"), S("y")), Atom::eq(S("x"), S("y"))});
  CHECK_THROWS_AS(Omq(t, Signature::full(), qe), std::invalid_argument);
}

TEST_CASE("signatures: full excludes reserved names, explicit entries win") {
  Signature full = Signature::full();
  CHECK(full.contains_concept(S("Person")));
  CHECK_FALSE(full.contains_concept(S("__tree1")));
  Signature s = Signature::of({S("A"), S("__special")}, {S("r")});
  CHECK(s.contains_concept(S("__special")));
  CHECK_FALSE(s.contains_concept(S("B")));
  CHECK(s.contains_role(S("r")));
}
