#pragma once

// Programs with input and output: rules plus placeholders, input symbols,
// and output symbols. Public symbols are inputs and outputs; every other
// predicate occurring in the rules is private.

#include <set>
#include <string>

#include "vera/syntax.hpp"

namespace vera {

struct IOProgram {
    Program rules;
    std::set<std::string> placeholders;
    std::set<PredicateSymbol> inputs;
    std::set<PredicateSymbol> outputs;

    bool is_public(const PredicateSymbol& p) const {
        return inputs.count(p) != 0 || outputs.count(p) != 0;
    }
    bool is_input(const PredicateSymbol& p) const { return inputs.count(p) != 0; }

    // Private symbols in order of first occurrence in the rules.
    std::vector<PredicateSymbol> private_symbols() const {
        std::vector<PredicateSymbol> result;
        for (const auto& sym : occurring_predicates(rules))
            if (!is_public(sym))
                result.push_back(sym);
        return result;
    }

    // Throws std::invalid_argument if an input symbol occurs in a rule head
    // or the input and output sets intersect.
    void validate() const;

    // A plain program viewed as an io-program: no placeholders, no inputs,
    // every occurring predicate an output.
    static IOProgram from_program(Program p);
};

}  // namespace vera
