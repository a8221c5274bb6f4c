#pragma once

// Clark-style completion: per-predicate completed definitions, constraint
// representations, the second-order completion sentence with private
// predicates bound existentially, its universal form for programs without
// private recursion, and assembly of the proof obligations handed to the
// prover backend.

#include <map>
#include <utility>
#include <vector>

#include "vera/analysis.hpp"
#include "vera/spec.hpp"
#include "vera/translate.hpp"

namespace vera {

// Rules defining p: basic and choice rules whose head predicate is p, in
// program order. Constraints define nothing.
std::vector<Rule> definition_of(const PredicateSymbol& p, const IOProgram& io);

// Body translation of one defining rule relative to the head variables:
// tau(body) ∧ [p(V1,...,Vn) for choice rules] ∧ val(t1,V1) ∧ ... ∧ val(tn,Vn).
// Throws std::invalid_argument on constraints.
FormulaPtr formula_representation(const Rule& r, const std::vector<FOVariable>& vars,
                                  FreshVariables& fresh, const TranslationOptions& options = {});

// The predicate variable standing for each private symbol: the symbol's name
// with its first letter capitalized.
std::map<PredicateSymbol, PredicateRef> private_predicate_variables(const IOProgram& io);

// forall V (p(V) <-> disjunction over defining rules of exists U F), where U
// are the rule-level variables of F not among the V's. Private symbols are
// replaced by predicate variables. An empty definition yields p(V) <-> #false.
FormulaPtr completed_definition(const PredicateSymbol& p, const IOProgram& io,
                                const TranslationOptions& options = {});

// Universal closure of the negated body translation, with private symbols
// replaced by predicate variables. Throws std::invalid_argument unless r is a
// constraint.
FormulaPtr constraint_representation(const Rule& r, const IOProgram& io,
                                     const TranslationOptions& options = {});

// exists P1...Pl (completed definitions of every non-input symbol, in first
// occurrence order with declared-but-unused outputs last, followed by the
// constraint representations in program order). Contains no private symbols.
SecondOrderSentence comp(const IOProgram& io, const TranslationOptions& options = {});

struct CompletionParts {
    // Completed definitions of the private symbols in dependency order: each
    // formula mentions only earlier predicate variables and its own.
    std::vector<std::pair<PredicateRef, FormulaPtr>> private_defs;
    // Conjunction of the public completed definitions and the constraint
    // representations.
    FormulaPtr public_part;
};

// Throws std::invalid_argument if the program uses private recursion.
CompletionParts completion_parts(const IOProgram& io, const TranslationOptions& options = {});

// forall P1...Pl (F1 ∧ ... ∧ Fl -> F'), equivalent to `c` when the program
// has no private recursion. With no private symbols the matrix is F' alone.
SecondOrderSentence universalize(const SecondOrderSentence& c, const CompletionParts& parts);

struct ProofObligations {
    std::vector<FormulaPtr> axioms;
    std::vector<FormulaPtr> assumptions;
    // Private completed definitions with the private predicate constants
    // themselves, in dependency order. No predicate variables anywhere.
    std::vector<FormulaPtr> completion_hypotheses;
    FormulaPtr public_completion;              // conjunction of public_conjuncts
    std::vector<FormulaPtr> public_conjuncts;  // backward-direction goals
    std::vector<FormulaPtr> specs;             // forward-direction goals
    std::vector<FormulaPtr> lemmas_forward;
    std::vector<FormulaPtr> lemmas_backward;
};

// Throws std::invalid_argument if the program is not tight or uses private
// recursion.
ProofObligations build_obligations(const IOProgram& io, const Specification& spec,
                                   const TranslationOptions& options = {});

}  // namespace vera
