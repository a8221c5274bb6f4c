#pragma once

// Equivalence-preserving cleanup of translated and completed formulas:
// truth-constant elimination, duplicate-conjunct removal, and elimination of
// equation-bound quantified witnesses. All rewrites are sound in
// intuitionistic logic, so they preserve strong equivalence.

#include "vera/formula.hpp"
#include "vera/oracle.hpp"

namespace vera {

// Rewrites f to a fixpoint of:
//   - top elimination in conjunctions and implications, bottom elimination in
//     disjunctions;
//   - removal of syntactically duplicate conjuncts;
//   - exists Z (Z = t and F)  =>  F[t/Z], and
//     forall Z (Z = t and A -> F)  =>  (A -> F)[t/Z],
//     when Z does not occur in t and t's sort fits Z (an integer variable is
//     only eliminated by an integer term; ctx supplies integer-declared
//     constants);
//   - dropping binders whose variable no longer occurs.
// The result has no new free variables or predicate symbols and is equivalent
// to f both classically and intuitionistically.
FormulaPtr simplify(const FormulaPtr& f, const SortContext& ctx = {});

// Renames bound variables in order of first binding: integer-sorted variables
// to N, N1, N2, ... and object-sorted ones to X, X1, X2, ..., skipping names
// free in f. Purely cosmetic; the result is alpha-equivalent to f.
FormulaPtr normalize_variable_names(const FormulaPtr& f);

// True iff f and g evaluate identically over the bounded universe, for every
// assignment of relations to their predicate symbols and of integers to the
// integer-declared constants they mention. Falls back to seeded random
// sampling when the space exceeds limits.max_relation_candidates
// interpretations. Both formulas must be closed.
bool check_equivalence_bounded(const FormulaPtr& f, const FormulaPtr& g,
                               const BoundedUniverse& u, const SortContext& ctx = {},
                               const OracleLimits& limits = {});

}  // namespace vera
