#include "vera/completion.hpp"

#include <algorithm>
#include <cctype>

namespace vera {

std::vector<Rule> definition_of(const PredicateSymbol& p, const IOProgram& io) {
    std::vector<Rule> rules;
    for (const auto& rule : io.rules.rules)
        if (rule.head.atom && rule.head.atom->symbol() == p)
            rules.push_back(rule);
    return rules;
}

FormulaPtr formula_representation(const Rule& r, const std::vector<FOVariable>& vars,
                                  FreshVariables& fresh, const TranslationOptions& options) {
    if (r.is_constraint())
        throw std::invalid_argument("constraints have no formula representation");
    const Atom& head = *r.head.atom;
    if (head.args.size() != vars.size())
        throw std::invalid_argument("head arity does not match the variable list");

    std::vector<FormulaPtr> body_parts;
    for (const auto& element : r.body)
        body_parts.push_back(tau_body(element, fresh, options));

    std::vector<FormulaPtr> parts;
    parts.push_back(conjoin(body_parts));  // #true for facts
    if (r.head.kind == Head::Kind::Choice) {
        std::vector<FOTermPtr> args;
        for (const auto& v : vars)
            args.push_back(mk_variable(v));
        parts.push_back(f_atom(PredicateRef::constant(head.symbol()), std::move(args)));
    }
    for (std::size_t i = 0; i < vars.size(); ++i)
        parts.push_back(val_formula(head.args[i], vars[i], fresh, options));
    return conjoin(parts);
}

std::map<PredicateSymbol, PredicateRef> private_predicate_variables(const IOProgram& io) {
    std::map<PredicateSymbol, PredicateRef> map;
    for (const auto& p : io.private_symbols()) {
        std::string name = p.name;
        name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
        map.emplace(p, PredicateRef::variable(std::move(name), p.arity));
    }
    return map;
}

namespace {

// Completed definition over the predicate constants themselves (no predicate
// variables substituted yet).
FormulaPtr raw_completed_definition(const PredicateSymbol& p, const IOProgram& io,
                                    const TranslationOptions& options) {
    const auto rules = definition_of(p, io);

    FreshVariables fresh;
    for (const auto& rule : rules)
        for (const auto& name : variable_names(rule))
            fresh.reserve(name);

    std::vector<FOVariable> vars;
    for (int i = 0; i < p.arity; ++i)
        vars.push_back(fresh.fresh("V", Sort::Object));

    std::vector<FormulaPtr> disjuncts;
    for (const auto& rule : rules) {
        FormulaPtr fi = formula_representation(rule, vars, fresh, options);
        std::vector<FOVariable> ui;
        for (const auto& v : free_variables_ordered(fi))
            if (std::find(vars.begin(), vars.end(), v) == vars.end())
                ui.push_back(v);
        disjuncts.push_back(f_exists(ui, std::move(fi)));
    }

    std::vector<FOTermPtr> args;
    for (const auto& v : vars)
        args.push_back(mk_variable(v));
    FormulaPtr atom = f_atom(PredicateRef::constant(p), std::move(args));
    return f_forall(vars, f_iff(std::move(atom), disjoin(disjuncts)));
}

FormulaPtr raw_constraint_representation(const Rule& r, const TranslationOptions& options) {
    if (!r.is_constraint())
        throw std::invalid_argument("not a constraint");
    FreshVariables fresh;
    for (const auto& name : variable_names(r))
        fresh.reserve(name);
    std::vector<FormulaPtr> parts;
    for (const auto& element : r.body)
        parts.push_back(tau_body(element, fresh, options));
    FormulaPtr negated = f_not(conjoin(parts));
    const auto vars = free_variables_ordered(negated);
    return f_forall(vars, std::move(negated));
}

// Predicates to complete: non-input occurring symbols in first-occurrence
// order, then declared outputs that never occur in the rules.
std::vector<PredicateSymbol> completed_symbols(const IOProgram& io) {
    std::vector<PredicateSymbol> symbols;
    for (const auto& p : occurring_predicates(io.rules))
        if (!io.is_input(p))
            symbols.push_back(p);
    for (const auto& p : io.outputs)
        if (std::find(symbols.begin(), symbols.end(), p) == symbols.end())
            symbols.push_back(p);
    return symbols;
}

std::vector<FormulaPtr> raw_public_conjuncts(const IOProgram& io,
                                             const TranslationOptions& options) {
    std::vector<FormulaPtr> conjuncts;
    for (const auto& p : completed_symbols(io))
        if (io.is_public(p))
            conjuncts.push_back(raw_completed_definition(p, io, options));
    for (const auto& rule : io.rules.rules)
        if (rule.is_constraint())
            conjuncts.push_back(raw_constraint_representation(rule, options));
    return conjuncts;
}

}  // namespace

FormulaPtr completed_definition(const PredicateSymbol& p, const IOProgram& io,
                                const TranslationOptions& options) {
    if (io.is_input(p))
        throw std::invalid_argument("input symbol " + p.to_string() +
                                    " has no completed definition");
    return substitute_predicates(raw_completed_definition(p, io, options),
                                 private_predicate_variables(io));
}

FormulaPtr constraint_representation(const Rule& r, const IOProgram& io,
                                     const TranslationOptions& options) {
    return substitute_predicates(raw_constraint_representation(r, options),
                                 private_predicate_variables(io));
}

SecondOrderSentence comp(const IOProgram& io, const TranslationOptions& options) {
    const auto subst = private_predicate_variables(io);

    std::vector<FormulaPtr> conjuncts;
    for (const auto& p : completed_symbols(io))
        conjuncts.push_back(completed_definition(p, io, options));
    for (const auto& rule : io.rules.rules)
        if (rule.is_constraint())
            conjuncts.push_back(constraint_representation(rule, io, options));

    SecondOrderSentence sentence;
    sentence.q = Quantifier::Exists;
    for (const auto& p : io.private_symbols())
        sentence.predicate_vars.push_back(subst.at(p));
    sentence.matrix = conjoin(conjuncts);
    return sentence;
}

CompletionParts completion_parts(const IOProgram& io, const TranslationOptions& options) {
    const auto order = topological_private_order(io);  // rejects private recursion
    const auto subst = private_predicate_variables(io);

    CompletionParts parts;
    for (const auto& p : order)
        parts.private_defs.emplace_back(subst.at(p), completed_definition(p, io, options));

    std::vector<FormulaPtr> conjuncts;
    for (const auto& f : raw_public_conjuncts(io, options))
        conjuncts.push_back(substitute_predicates(f, subst));
    parts.public_part = conjoin(conjuncts);
    return parts;
}

SecondOrderSentence universalize(const SecondOrderSentence&, const CompletionParts& parts) {
    SecondOrderSentence sentence;
    sentence.q = Quantifier::ForAll;
    if (parts.private_defs.empty()) {
        sentence.matrix = parts.public_part;
        return sentence;
    }
    std::vector<FormulaPtr> defs;
    for (const auto& [ref, def] : parts.private_defs) {
        sentence.predicate_vars.push_back(ref);
        defs.push_back(def);
    }
    sentence.matrix = f_implies(conjoin(defs), parts.public_part);
    return sentence;
}

ProofObligations build_obligations(const IOProgram& io, const Specification& spec,
                                   const TranslationOptions& options) {
    io.validate();
    if (!is_tight(io)) {
        std::string cycle;
        for (const auto& p : find_positive_cycle(io))
            cycle += (cycle.empty() ? "" : " -> ") + p.to_string();
        throw std::invalid_argument("program is not tight (positive cycle: " + cycle + ")");
    }
    const auto order = topological_private_order(io);  // rejects private recursion

    ProofObligations ob;
    ob.axioms = spec.axioms;
    ob.assumptions = spec.assumptions;
    for (const auto& p : order)
        ob.completion_hypotheses.push_back(raw_completed_definition(p, io, options));
    ob.public_conjuncts = raw_public_conjuncts(io, options);
    ob.public_completion = conjoin(ob.public_conjuncts);
    ob.specs = spec.specs;
    for (const auto& lemma : spec.lemmas) {
        if (lemma.direction != LemmaDirection::Backward)
            ob.lemmas_forward.push_back(lemma.formula);
        if (lemma.direction != LemmaDirection::Forward)
            ob.lemmas_backward.push_back(lemma.formula);
    }
    return ob;
}

}  // namespace vera
