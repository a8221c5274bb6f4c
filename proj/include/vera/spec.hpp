#pragma once

// Specification files: placeholder/input/output declarations, assumptions,
// specs, axioms, and directed helper lemmas, plus the first-order formula
// surface syntax they share.

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vera/formula.hpp"
#include "vera/syntax.hpp"

namespace vera {

enum class LemmaDirection { Forward, Backward, Both };

struct Lemma {
    LemmaDirection direction = LemmaDirection::Both;
    FormulaPtr formula;
};

struct Specification {
    std::map<std::string, Sort> placeholders;
    std::set<PredicateSymbol> inputs;
    std::set<PredicateSymbol> outputs;
    std::vector<FormulaPtr> assumptions;
    std::vector<FormulaPtr> specs;
    std::vector<FormulaPtr> axioms;
    std::vector<Lemma> lemmas;

    SortContext sort_context() const {
        SortContext ctx;
        for (const auto& [name, sort] : placeholders)
            if (sort == Sort::Integer)
                ctx.integer_constants.insert(name);
        return ctx;
    }
};

// Parses a specification file. Statement forms:
//   input: n -> integer.   input: s/2.   output: p/1.
//   assume: F.   spec: F.   axiom: F.
//   lemma: F.   lemma(forward): F.   lemma(backward): F.
Specification parse_spec(std::string_view text);

// Parses a single formula in the specification surface syntax. Variables are
// sorted by their first letter (I..N integer, U..Z object; anything else is
// an error); unquantified variables are closed universally.
FormulaPtr parse_formula(std::string_view text, const SortContext& ctx = {});

// Assumptions with placeholder sorts validated; identity on the stored list.
std::vector<FormulaPtr> to_assumption_formulas(const Specification& spec);

std::string print_spec(const Specification& spec);

}  // namespace vera
