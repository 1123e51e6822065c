#pragma once

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "elrw/io.hpp"
#include "elrw/query.hpp"

namespace elrw::testing {

inline Symbol S(const char* s) { return Symbol::intern(s); }

// Fixed-seed generator; OMQ_REWRITER_SEED overrides.
inline uint64_t corpus_seed() {
  if (const char* env = std::getenv("OMQ_REWRITER_SEED")) {
    return static_cast<uint64_t>(std::strtoull(env, nullptr, 10));
  }
  return 0x9E3779B97F4A7C15ull;
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  // modulo draw: deterministic across standard library implementations
  uint32_t below(uint32_t n) { return n == 0 ? 0 : static_cast<uint32_t>(engine_() % n); }
  bool chance(double p) { return engine_() % 1000 < p * 1000; }

 private:
  std::mt19937_64 engine_;
};

inline Concept random_concept(Rng& rng, const std::vector<Symbol>& names,
                              const std::vector<Symbol>& roles, int max_depth) {
  int pick = rng.below(max_depth > 0 ? 4 : 2);
  switch (pick) {
    case 0:
      return Concept::top();
    case 1:
      return Concept::name(names[rng.below(static_cast<uint32_t>(names.size()))]);
    case 2:
      return Concept::exists(roles[rng.below(static_cast<uint32_t>(roles.size()))],
                             random_concept(rng, names, roles, max_depth - 1));
    default: {
      std::vector<Concept> parts;
      int n = 2 + rng.below(2);
      for (int i = 0; i < n; ++i)
        parts.push_back(random_concept(rng, names, roles, max_depth - 1));
      return Concept::conj(std::move(parts));
    }
  }
}

inline TBox random_tbox(Rng& rng, const std::vector<Symbol>& names,
                        const std::vector<Symbol>& roles, int max_cis, int max_depth = 2) {
  std::vector<ConceptInclusion> cis;
  int n = rng.below(max_cis + 1);
  for (int i = 0; i < n; ++i) {
    Concept lhs = random_concept(rng, names, roles, max_depth);
    Concept rhs = random_concept(rng, names, roles, max_depth);
    if (lhs.is_top() && rhs.is_top()) continue;
    cis.push_back({lhs, rhs});
  }
  return TBox(std::move(cis));
}

// Random rooted CQ: a small core over the answer variables plus quantified
// trees; always an rCQ.
inline ConjQuery random_rooted_cq(Rng& rng, const std::vector<Symbol>& names,
                                  const std::vector<Symbol>& roles, int arity, int extra_vars) {
  std::vector<Symbol> avars;
  for (int i = 0; i < arity; ++i) avars.push_back(Symbol::intern("x" + std::to_string(i)));
  std::vector<Symbol> all = avars;
  for (int i = 0; i < extra_vars; ++i) all.push_back(Symbol::intern("z" + std::to_string(i)));
  std::vector<Atom> atoms;
  // connect each quantified variable to an earlier variable
  for (size_t i = avars.size(); i < all.size(); ++i) {
    Symbol from = all[rng.below(static_cast<uint32_t>(i))];
    atoms.push_back(Atom::role(roles[rng.below(static_cast<uint32_t>(roles.size()))], from, all[i]));
  }
  int extra_atoms = rng.below(3);
  for (int i = 0; i < extra_atoms; ++i) {
    Symbol v = all[rng.below(static_cast<uint32_t>(all.size()))];
    if (rng.chance(0.6)) {
      atoms.push_back(Atom::concept_atom(names[rng.below(static_cast<uint32_t>(names.size()))], v));
    } else {
      Symbol w = all[rng.below(static_cast<uint32_t>(all.size()))];
      atoms.push_back(Atom::role(roles[rng.below(static_cast<uint32_t>(roles.size()))], v, w));
    }
  }
  // ensure at least one atom mentions every answer variable
  for (Symbol v : avars) {
    bool covered = false;
    for (const Atom& a : atoms)
      if (a.x == v || a.y == v) covered = true;
    if (!covered) atoms.push_back(Atom::concept_atom(names[rng.below(static_cast<uint32_t>(names.size()))], v));
  }
  return ConjQuery(avars, atoms);
}

}  // namespace elrw::testing
