#pragma once

// Proof-task emission in the TPTP TFF dialect. The two sorts are encoded with
// an explicit object type and an injective, order-preserving embedding
// int2obj: $int > object; the order on objects is a declared predicate `less`
// with total-order and layering axioms.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "vera/formula.hpp"

namespace vera {

struct LabeledFormula {
    std::string label;
    FormulaPtr formula;
};

struct ProofTask {
    std::string name;
    // Declared sorts of placeholder constants; every other symbolic constant
    // is a plain object constant.
    std::map<std::string, Sort> placeholders;
    std::vector<LabeledFormula> axioms;
    LabeledFormula conjecture;
};

// Axioms satisfied by every standard interpretation, in the formula language
// itself (so the bounded oracle can check them): irreflexivity, transitivity
// and totality of <, the extreme elements, every numeral below every
// non-placeholder symbolic constant, and pairwise distinctness of symbolic
// constants unless one of the pair is a placeholder.
std::vector<FormulaPtr> standard_axioms(const std::set<std::string>& constants,
                                        const std::map<std::string, Sort>& placeholders);

// Renders the task as TFF text: sort and symbol type declarations, the
// embedding and object-order axioms, then the task's axioms and its single
// conjecture. Throws std::invalid_argument on free variables or residual
// predicate variables.
std::string emit_task(const ProofTask& t);

}  // namespace vera
