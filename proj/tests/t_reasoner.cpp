#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "elrw/io.hpp"
#include "elrw/reasoner.hpp"
#include "helpers.hpp"
#include "naive_oracle.hpp"

using namespace elrw;
using elrw::testing::Rng;
using elrw::testing::S;

namespace {

const char* kT1 =
    "Albinism SubClassOf HereditaryDisease\n"
    "and(Person, some(hasDisease, HereditaryDisease)) SubClassOf GeneticRiskPatient\n";

const char* kT2 =
    "Albinism SubClassOf HereditaryDisease\n"
    "and(Person, some(hasDisease, HereditaryDisease)) SubClassOf GeneticRiskPatient\n"
    "and(Person, some(hasParent, GeneticRiskPatient)) SubClassOf GeneticRiskPatient\n";

const char* kT3 =
    "Albinism SubClassOf HereditaryDisease\n"
    "and(Person, some(hasDisease, HereditaryDisease)) SubClassOf GeneticRiskPatient\n"
    "and(Person, some(hasParent, GeneticRiskPatient)) SubClassOf GeneticRiskPatient\n"
    "OCA1aPatient SubClassOf and(Person, some(hasDisease, OCA1aAlbinism))\n"
    "OCA1aAlbinism SubClassOf and(ImpairedVision, MelaninDeficiency)\n"
    "OCA1aAlbinism SubClassOf some(causedBy, GeneDefect)\n";

const char* kExample1Abox = "Person(a)\nhasDisease(a, oca1)\nAlbinism(oca1)\n";

}  // namespace

TEST_CASE("normalize splits top-level conjunctions on the right only") {
  TBox t = parse_tbox("A SubClassOf and(B, C)\n");
  NormalTBox nt = normalize(t);
  CHECK(nt.normalized.size() == 2);
  CHECK(nt.normalized.contains({Concept::name(S("A")), Concept::name(S("B"))}));
  CHECK(nt.normalized.contains({Concept::name(S("A")), Concept::name(S("C"))}));
  CHECK(nt.fresh_names.empty());

  TBox t3 = parse_tbox(kT3);
  NormalTBox nt3 = normalize(t3);
  CHECK(nt3.normalized.contains({Concept::name(S("OCA1aAlbinism")), Concept::name(S("ImpairedVision"))}));
  CHECK(nt3.normalized.contains({Concept::name(S("OCA1aAlbinism")), Concept::name(S("MelaninDeficiency"))}));

  // conjunction under an existential stays put
  TBox tu = parse_tbox("A SubClassOf some(r, and(B, C))\n");
  CHECK(normalize(tu).normalized.size() == 1);
  CHECK(normalize(tu).normalized.inclusions()[0].rhs.kind() == Concept::Kind::kExists);
}

TEST_CASE("subsumption: example entailments and structural cases") {
  TBox t1 = parse_tbox(kT1);
  Concept lhs = Concept::conj(
      {Concept::name(S("Person")), Concept::exists(S("hasDisease"), Concept::name(S("Albinism")))});
  CHECK(subsumes(t1, lhs, Concept::name(S("GeneticRiskPatient"))));

  TBox empty;
  CHECK(subsumes(empty, Concept::exists(S("r"), Concept::name(S("A"))),
                 Concept::exists(S("r"), Concept::top())));
  CHECK_FALSE(subsumes(empty, Concept::exists(S("r"), Concept::top()),
                       Concept::exists(S("r"), Concept::name(S("A")))));
}

TEST_CASE("reflexivity of subsumption on random concepts") {
  Rng rng(elrw::testing::corpus_seed() ^ 0x21);
  std::vector<Symbol> names = {S("A"), S("B")};
  std::vector<Symbol> roles = {S("r"), S("s")};
  TBox empty;
  Reasoner r(empty);
  for (int i = 0; i < 50; ++i) {
    Concept c = elrw::testing::random_concept(rng, names, roles, 3);
    CHECK(r.subsumes(c, c));
  }
}

TEST_CASE("saturate on the example data") {
  TBox t1 = parse_tbox(kT1);
  Abox a = parse_abox(kExample1Abox);
  Abox sat = saturate(a, t1);
  CHECK(sat.has_concept(S("HereditaryDisease"), S("oca1")));
  CHECK(sat.has_concept(S("GeneticRiskPatient"), S("a")));
  CHECK(sat.role_assertions().size() == a.role_assertions().size());

  // empty TBox: unchanged
  Abox same = saturate(a, TBox());
  CHECK(same.concept_assertions() == a.concept_assertions());

  // OCA1aPatient under T3: Person is entailed; GeneticRiskPatient is not,
  // since nothing links OCA1aAlbinism to HereditaryDisease
  TBox t3 = parse_tbox(kT3);
  Abox oca = parse_abox("OCA1aPatient(a)\n");
  Abox sat3 = saturate(oca, t3);
  CHECK(sat3.has_concept(S("Person"), S("a")));
  CHECK_FALSE(sat3.has_concept(S("GeneticRiskPatient"), S("a")));
}

TEST_CASE("saturate is idempotent and monotone") {
  Rng rng(elrw::testing::corpus_seed() ^ 0x22);
  std::vector<Symbol> names = {S("A"), S("B"), S("C")};
  std::vector<Symbol> roles = {S("r"), S("s")};
  for (int i = 0; i < 60; ++i) {
    TBox t = elrw::testing::random_tbox(rng, names, roles, 3);
    std::vector<Abox::ConceptAssertion> cs;
    std::vector<Abox::RoleAssertion> rs;
    std::vector<Symbol> inds = {S("a"), S("b")};
    for (Symbol ind : inds)
      if (rng.chance(0.7)) cs.emplace_back(names[rng.below(3)], ind);
    if (rng.chance(0.7)) rs.emplace_back(roles[rng.below(2)], inds[rng.below(2)], inds[rng.below(2)]);
    Abox a(cs, rs, inds);
    Reasoner r(t);
    Abox once = r.saturate(a);
    Abox twice = r.saturate(once);
    CHECK(once.concept_assertions() == twice.concept_assertions());
    // monotone: every original assertion survives
    for (const auto& ca : a.concept_assertions())
      CHECK(once.has_concept(ca.first, ca.second));
  }
}

TEST_CASE("chase examples") {
  // {B(a)}, {B ⊑ ∃r.A}, depth 1: one anonymous r-child labeled {A}
  TBox t = parse_tbox("B SubClassOf some(r, A)\n");
  Abox a = parse_abox("B(a)\n");
  ChaseModel m = chase(a, t, 1);
  REQUIRE(m.anon_roots(S("a")).size() == 1);
  int child = m.anon_roots(S("a"))[0];
  CHECK(m.node(child).role == S("r"));
  CHECK(m.anon_names(child).count(S("A")) == 1);

  // depth 0: base only
  ChaseModel m0 = chase(a, t, 0);
  CHECK(m0.anon_count() == 0);
  CHECK(m0.base().has_concept(S("B"), S("a")));

  // {OCA1aPatient(a)}, T3, depth 2
  TBox t3 = parse_tbox(kT3);
  ChaseModel m3 = chase(parse_abox("OCA1aPatient(a)\n"), t3, 2);
  REQUIRE(m3.anon_roots(S("a")).size() == 1);
  int d = m3.anon_roots(S("a"))[0];
  CHECK(m3.node(d).role == S("hasDisease"));
  CHECK(m3.anon_names(d).count(S("OCA1aAlbinism")) == 1);
  CHECK(m3.anon_names(d).count(S("ImpairedVision")) == 1);
  CHECK(m3.anon_names(d).count(S("MelaninDeficiency")) == 1);
  REQUIRE(m3.node(d).children.size() == 1);
  int g = m3.node(d).children[0];
  CHECK(m3.node(g).role == S("causedBy"));
  CHECK(m3.anon_names(g).count(S("GeneDefect")) == 1);
}

TEST_CASE("chase labels are monotone in the depth") {
  TBox t3 = parse_tbox(kT3);
  Abox a = parse_abox("OCA1aPatient(a)\n");
  Reasoner r(t3);
  ChaseModel m1 = r.chase(a, 1);
  ChaseModel m2 = r.chase(a, 3);
  REQUIRE(m1.anon_roots(S("a")).size() == m2.anon_roots(S("a")).size());
  for (size_t i = 0; i < m1.anon_roots(S("a")).size(); ++i) {
    int n1 = m1.anon_roots(S("a"))[i];
    int n2 = m2.anon_roots(S("a"))[i];
    for (Symbol l : m1.anon_names(n1)) CHECK(m2.anon_names(n2).count(l) == 1);
  }
}

TEST_CASE("certain answers on the running examples") {
  TBox t1 = parse_tbox(kT1);
  Abox a = parse_abox(kExample1Abox);
  ConjQuery q1 = parse_cq("q(x) :- GeneticRiskPatient(x).");
  CHECK(certain_answer(a, t1, q1, {S("a")}));
  CHECK_FALSE(certain_answer(a, t1, q1, {S("oca1")}));

  TBox t3 = parse_tbox(kT3);
  Abox oca = parse_abox("OCA1aPatient(a)\n");
  ConjQuery q3 = parse_cq(
      "q(x) :- Person(x), hasDisease(x,y1), MelaninDeficiency(y1), causedBy(y1,z), "
      "hasDisease(x,y2), ImpairedVision(y2), causedBy(y2,z), GeneDefect(z).");
  CHECK(certain_answer(oca, t3, q3, {S("a")}));

  // an "empty" ABox (one bare declared individual) answers nothing
  Abox empty({}, {}, {S("a")});
  ConjQuery qa = parse_cq("q(x) :- A(x).");
  CHECK_FALSE(certain_answer(empty, t1, qa, {S("a")}));

  CHECK_THROWS_AS(certain_answer(a, t1, q1, {S("a"), S("a")}), std::invalid_argument);
}

TEST_CASE("certain_answer is monotone in the ABox") {
  TBox t2 = parse_tbox(kT2);
  Abox small = parse_abox("Person(a)\nhasDisease(a, d)\nAlbinism(d)\n");
  Abox big = parse_abox("Person(a)\nhasDisease(a, d)\nAlbinism(d)\nPerson(b)\nhasParent(b, a)\n");
  ConjQuery q = parse_cq("q(x) :- GeneticRiskPatient(x).");
  CHECK(certain_answer(small, t2, q, {S("a")}));
  CHECK(certain_answer(big, t2, q, {S("a")}));
  CHECK(certain_answer(big, t2, q, {S("b")}));
}

TEST_CASE("subsumes agrees with certain_answer over the tree-CQ view (mutual oracle)") {
  Rng rng(elrw::testing::corpus_seed() ^ 0x23);
  std::vector<Symbol> names = {S("A"), S("B"), S("C")};
  std::vector<Symbol> roles = {S("r"), S("s")};
  for (int i = 0; i < 120; ++i) {
    TBox t = elrw::testing::random_tbox(rng, names, roles, 4, 2);
    Reasoner r(t);
    Concept c = elrw::testing::random_concept(rng, names, roles, 3);
    Concept d = elrw::testing::random_concept(rng, names, roles, 3);
    ConjQuery cq = concept_to_tree_cq(c, S("root"));
    auto [abox, map] = cq_as_abox(cq);
    ConjQuery dq = concept_to_tree_cq(d, S("root"));
    bool via_subsumes = r.subsumes(c, d);
    bool via_certain = r.certain_answer(abox, dq, {S("root")});
    CHECK(via_subsumes == via_certain);
  }
}

TEST_CASE("reasoner agrees with the naive chase oracle") {
  Rng rng(elrw::testing::corpus_seed() ^ 0x24);
  std::vector<Symbol> names = {S("A"), S("B"), S("C")};
  std::vector<Symbol> roles = {S("r"), S("s")};
  int checked = 0;
  for (int i = 0; i < 150; ++i) {
    TBox t = elrw::testing::random_tbox(rng, names, roles, 3, 2);
    std::vector<Abox::ConceptAssertion> cs;
    std::vector<Abox::RoleAssertion> rs;
    std::vector<Symbol> inds = {S("a"), S("b"), S("c")};
    int n_inds = 1 + rng.below(3);
    inds.resize(n_inds);
    for (Symbol ind : inds) {
      if (rng.chance(0.8)) cs.emplace_back(names[rng.below(3)], ind);
    }
    int n_edges = rng.below(3);
    for (int e = 0; e < n_edges; ++e)
      rs.emplace_back(roles[rng.below(2)], inds[rng.below(n_inds)], inds[rng.below(n_inds)]);
    Abox a(cs, rs, inds);
    ConjQuery q = elrw::testing::random_rooted_cq(rng, names, roles, 1, rng.below(3));
    Reasoner reasoner(t);
    for (Symbol ind : a.individuals()) {
      bool expected = elrw::testing::naive_certain_answer(a, t, q, {ind});
      bool actual = reasoner.certain_answer(a, q, {ind});
      CAPTURE(t.code());
      CAPTURE(q.code());
      CAPTURE(ind.str());
      REQUIRE(expected == actual);
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("naive oracle depth-cap insensitivity spot check") {
  Rng rng(elrw::testing::corpus_seed() ^ 0x25);
  std::vector<Symbol> names = {S("A"), S("B")};
  std::vector<Symbol> roles = {S("r")};
  for (int i = 0; i < 40; ++i) {
    TBox t = elrw::testing::random_tbox(rng, names, roles, 3, 2);
    Abox a({{names[rng.below(2)], S("a")}}, {}, {S("a")});
    ConjQuery q = elrw::testing::random_rooted_cq(rng, names, roles, 1, rng.below(2));
    int cap = elrw::testing::naive_depth_cap(t, q);
    bool at_cap = elrw::testing::NaiveChase(a, t, cap).entails(q, {S("a")});
    bool beyond = elrw::testing::NaiveChase(a, t, cap + 2).entails(q, {S("a")});
    CHECK(at_cap == beyond);
  }
}
