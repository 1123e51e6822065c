#pragma once

#include "elrw/reduction_tq.hpp"

namespace elrw {

// How the bc minimization consults T^min: as a materialized TBox, or by
// checking fork-rewriting/splitting existence directly (caching the
// polynomially many ∃r_i^{ν(μ(i))}.C concepts as ⊑N left-hand sides).
enum class MinCheckMode { kMaterialized, kDirect };

// The per-fork-rewriting construction (T_{q_r}, Σ_{q_r}, N(x)) with the
// minimization TBox T^min_{q_r}.
struct RcqReduction {
  ConjQuery fork;                 // q_r
  std::vector<Symbol> core;       // core(q_r)
  Omq target;                     // (T_{q_r}, Σ_{q_r}, N(x0))
  TBox t_min;                     // materialized T^min_{q_r}
  std::vector<Concept> n_lhs;     // left-hand sides of all ⊑ N inclusions
  NameTables names;
  Symbol n_name;
  Symbol target_var;
};

RcqReduction build_rcq_reduction(const Omq& omq, const ConjQuery& q_r);

// τ: derivatives of q_r (core atoms plus trees at core variables) to
// conformant tCQs for Q_{q_r}.
ConjQuery tau(const ConjQuery& q, const RcqReduction& red);

// π: the inverse translation; re-adds the core-internal role atoms and the
// equality atoms of q_r. Answer variables are those of the source query.
ConjQuery pi(const ConjQuery& qp, const RcqReduction& red);

}  // namespace elrw
