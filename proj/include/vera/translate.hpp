#pragma once

// Translation of programs into two-sorted first-order sentences: the value
// formulas val(t, Z), the body translation, and the per-rule translation.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "vera/formula.hpp"
#include "vera/syntax.hpp"

namespace vera {

// Source of fresh variable names, one counter per prefix. Names are
// prefix + running number (I1, I2, ..., Z1, ...).
class FreshVariables {
public:
    FOVariable fresh(const std::string& prefix, Sort sort) {
        return FOVariable{prefix + std::to_string(++counters_[prefix]), sort};
    }

    // Ensures the given name is never generated: if it has the shape
    // prefix + number, the prefix's counter is advanced past the number.
    void reserve(const std::string& name) {
        std::size_t split = name.size();
        while (split > 0 && name[split - 1] >= '0' && name[split - 1] <= '9')
            --split;
        if (split == 0 || split == name.size())
            return;
        int& counter = counters_[name.substr(0, split)];
        counter = std::max(counter, std::stoi(name.substr(split)));
    }

private:
    std::map<std::string, int> counters_;
};

enum class DivisionGuard {
    RemainderLessQuotient,  // guard R < Q, as printed in the source definition
    RemainderLessDivisor,   // guard R < |J|, selectable for experimentation
};

struct TranslationOptions {
    DivisionGuard division_guard = DivisionGuard::RemainderLessQuotient;
};

// Formula expressing that z is one of the values of t. z must not occur in t.
FormulaPtr val_formula(const ProgramTermPtr& t, const FOVariable& z, FreshVariables& fresh,
                       const TranslationOptions& options = {});

// Translation of a body literal or comparison.
FormulaPtr tau_body(const BodyElement& element, FreshVariables& fresh,
                    const TranslationOptions& options = {});

// Universal closure of body -> head for one rule.
FormulaPtr tau_star_rule(const Rule& rule, const TranslationOptions& options = {});

// One sentence per rule, in program order.
std::vector<FormulaPtr> tau_star(const Program& program, const TranslationOptions& options = {});

}  // namespace vera
