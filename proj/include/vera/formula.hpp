#pragma once

// Two-sorted first-order formulas over the program/specification signature,
// including predicate variables used by completion.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "vera/syntax.hpp"

namespace vera {

enum class Sort { Object, Integer };

struct FOVariable {
    std::string name;
    Sort sort = Sort::Object;

    friend bool operator==(const FOVariable&, const FOVariable&) = default;
    friend auto operator<=>(const FOVariable&, const FOVariable&) = default;
};

enum class ArithOp { Add, Subtract, Multiply };

class FOTerm;
using FOTermPtr = std::shared_ptr<const FOTerm>;

struct ValueTerm {
    Value value;
};
struct VariableTerm {
    FOVariable var;
};
struct ArithTerm {
    ArithOp op;
    FOTermPtr left;
    FOTermPtr right;
};

class FOTerm {
public:
    using Node = std::variant<ValueTerm, VariableTerm, ArithTerm>;

    explicit FOTerm(Node node) : node_(std::move(node)) {}
    const Node& node() const { return node_; }

private:
    Node node_;
};

FOTermPtr mk_value(Value v);
FOTermPtr mk_numeral(std::int64_t n);
FOTermPtr mk_symbol(std::string name);
FOTermPtr mk_variable(FOVariable v);
FOTermPtr mk_arith(ArithOp op, FOTermPtr left, FOTermPtr right);

// Names of symbolic constants that are integer-sorted by declaration
// (placeholders declared as integers in a specification).
struct SortContext {
    std::set<std::string> integer_constants;

    bool is_integer_constant(const std::string& name) const {
        return integer_constants.count(name) != 0;
    }
};

// Sort of a term: numerals, integer variables, and arithmetic terms are
// Integer; everything else Object unless declared integer in ctx.
Sort sort_of(const FOTermPtr& t, const SortContext& ctx = {});

bool equal(const FOTermPtr& a, const FOTermPtr& b);

// A predicate constant or a predicate variable. Predicate variables only
// appear inside completion sentences.
struct PredicateRef {
    std::string name;
    int arity = 0;
    bool is_variable = false;

    static PredicateRef constant(PredicateSymbol s) { return {s.name, s.arity, false}; }
    static PredicateRef variable(std::string name, int arity) {
        return {std::move(name), arity, true};
    }

    PredicateSymbol symbol() const { return {name, arity}; }

    friend bool operator==(const PredicateRef&, const PredicateRef&) = default;
    friend auto operator<=>(const PredicateRef&, const PredicateRef&) = default;
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct BottomF {};
struct AtomFormula {
    PredicateRef pred;
    std::vector<FOTermPtr> args;
};
struct CompareFormula {
    Relation rel;
    FOTermPtr left;
    FOTermPtr right;
};
enum class Connective { And, Or, Implies };
struct BinaryFormula {
    Connective conn;
    FormulaPtr left;
    FormulaPtr right;
};
enum class Quantifier { ForAll, Exists };
struct QuantifiedFormula {
    Quantifier q;
    FOVariable var;
    FormulaPtr body;
};

class Formula {
public:
    using Node =
        std::variant<BottomF, AtomFormula, CompareFormula, BinaryFormula, QuantifiedFormula>;

    explicit Formula(Node node) : node_(std::move(node)) {}
    const Node& node() const { return node_; }

private:
    Node node_;
};

FormulaPtr f_bottom();
FormulaPtr f_top();  // bottom -> bottom
FormulaPtr f_atom(PredicateRef pred, std::vector<FOTermPtr> args);
FormulaPtr f_compare(Relation rel, FOTermPtr left, FOTermPtr right);
FormulaPtr f_and(FormulaPtr left, FormulaPtr right);
FormulaPtr f_or(FormulaPtr left, FormulaPtr right);
FormulaPtr f_implies(FormulaPtr left, FormulaPtr right);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_iff(FormulaPtr left, FormulaPtr right);
FormulaPtr f_forall(FOVariable var, FormulaPtr body);
FormulaPtr f_exists(FOVariable var, FormulaPtr body);
FormulaPtr f_forall(const std::vector<FOVariable>& vars, FormulaPtr body);
FormulaPtr f_exists(const std::vector<FOVariable>& vars, FormulaPtr body);

// Left-associative conjunction/disjunction; empty input yields top/bottom.
FormulaPtr conjoin(const std::vector<FormulaPtr>& fs);
FormulaPtr disjoin(const std::vector<FormulaPtr>& fs);

bool is_top(const FormulaPtr& f);
// If f is G -> bottom, returns G.
FormulaPtr negated_operand(const FormulaPtr& f);
// If f is (G -> H) and (H -> G), returns {G, H}.
std::pair<FormulaPtr, FormulaPtr> iff_operands(const FormulaPtr& f);

bool equal(const FormulaPtr& a, const FormulaPtr& b);

std::set<FOVariable> free_variables(const FormulaPtr& f);
// Free variables in order of first occurrence (left to right).
std::vector<FOVariable> free_variables_ordered(const FormulaPtr& f);

// Predicate symbols of all predicate-constant atoms in f.
std::set<PredicateSymbol> predicate_constants(const FormulaPtr& f);
// Names of all predicate-variable atoms in f.
std::set<std::string> predicate_variables(const FormulaPtr& f);
// Symbolic constant names occurring in f.
std::set<std::string> symbolic_constants(const FormulaPtr& f);

class SortError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Capture-avoiding substitution. Integer variables may only receive
// integer-sorted terms (SortError otherwise).
FormulaPtr substitute(const FormulaPtr& f, const std::map<FOVariable, FOTermPtr>& map,
                      const SortContext& ctx = {});
FOTermPtr substitute(const FOTermPtr& t, const std::map<FOVariable, FOTermPtr>& map);

// Replaces atoms over the mapped predicate symbols. Arity mismatches raise
// std::invalid_argument.
FormulaPtr substitute_predicates(const FormulaPtr& f,
                                 const std::map<PredicateSymbol, PredicateRef>& map);

bool alpha_equivalent(const FormulaPtr& f, const FormulaPtr& g);

struct SecondOrderSentence {
    Quantifier q = Quantifier::Exists;
    std::vector<PredicateRef> predicate_vars;
    FormulaPtr matrix;
};

bool alpha_equivalent(const SecondOrderSentence& a, const SecondOrderSentence& b);

std::string to_string(const FOTermPtr& t);
std::string to_string(const FormulaPtr& f);
std::string to_string(const SecondOrderSentence& s);

}  // namespace vera
