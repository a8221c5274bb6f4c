#include "vera/translate.hpp"

namespace vera {

namespace {

FOTermPtr term_of_variable(const FOVariable& v) { return mk_variable(v); }

ArithOp arith_op(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return ArithOp::Add;
        case BinaryOp::Subtract: return ArithOp::Subtract;
        case BinaryOp::Multiply: return ArithOp::Multiply;
        default: throw std::logic_error("not an arithmetic operation");
    }
}

}  // namespace

FormulaPtr val_formula(const ProgramTermPtr& t, const FOVariable& z, FreshVariables& fresh,
                       const TranslationOptions& options) {
    const auto* bin = std::get_if<BinaryTerm>(&t->node());
    if (!bin) {
        // Base case: Z = t for numerals, symbolic constants, program
        // variables, #inf, and #sup.
        FOTermPtr rhs = std::visit(
            [](const auto& n) -> FOTermPtr {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, Numeral>)
                    return mk_numeral(n.value);
                else if constexpr (std::is_same_v<T, SymbolicConstant>)
                    return mk_symbol(n.name);
                else if constexpr (std::is_same_v<T, ProgramVariable>)
                    return mk_variable(FOVariable{n.name, Sort::Object});
                else if constexpr (std::is_same_v<T, Infimum>)
                    return mk_value(Value::infimum());
                else if constexpr (std::is_same_v<T, Supremum>)
                    return mk_value(Value::supremum());
                else
                    throw std::logic_error("unreachable");
            },
            t->node());
        return f_compare(Relation::Equal, mk_variable(z), std::move(rhs));
    }

    switch (bin->op) {
        case BinaryOp::Add:
        case BinaryOp::Subtract:
        case BinaryOp::Multiply: {
            const FOVariable i = fresh.fresh("I", Sort::Integer);
            const FOVariable j = fresh.fresh("J", Sort::Integer);
            FormulaPtr body = f_compare(
                Relation::Equal, mk_variable(z),
                mk_arith(arith_op(bin->op), term_of_variable(i), term_of_variable(j)));
            body = f_and(body, val_formula(bin->left, i, fresh, options));
            body = f_and(body, val_formula(bin->right, j, fresh, options));
            return f_exists({i, j}, std::move(body));
        }
        case BinaryOp::Divide:
        case BinaryOp::Modulo: {
            const FOVariable i = fresh.fresh("I", Sort::Integer);
            const FOVariable j = fresh.fresh("J", Sort::Integer);
            const FOVariable q = fresh.fresh("Q", Sort::Integer);
            const FOVariable r = fresh.fresh("R", Sort::Integer);
            FormulaPtr body = f_compare(
                Relation::Equal, term_of_variable(i),
                mk_arith(ArithOp::Add, mk_arith(ArithOp::Multiply, term_of_variable(j),
                                                term_of_variable(q)),
                         term_of_variable(r)));
            body = f_and(body, val_formula(bin->left, i, fresh, options));
            body = f_and(body, val_formula(bin->right, j, fresh, options));
            body = f_and(body, f_compare(Relation::NotEqual, term_of_variable(j), mk_numeral(0)));
            body = f_and(body,
                         f_compare(Relation::GreaterEqual, term_of_variable(r), mk_numeral(0)));
            if (options.division_guard == DivisionGuard::RemainderLessQuotient) {
                body = f_and(body,
                             f_compare(Relation::Less, term_of_variable(r), term_of_variable(q)));
            } else {
                // R < |J|, spelled R < J or R < 0 - J.
                body = f_and(
                    body,
                    f_or(f_compare(Relation::Less, term_of_variable(r), term_of_variable(j)),
                         f_compare(Relation::Less, term_of_variable(r),
                                   mk_arith(ArithOp::Subtract, mk_numeral(0),
                                            term_of_variable(j)))));
            }
            body = f_and(body, f_compare(Relation::Equal, mk_variable(z),
                                         term_of_variable(bin->op == BinaryOp::Divide ? q : r)));
            return f_exists({i, j, q, r}, std::move(body));
        }
        case BinaryOp::Interval: {
            const FOVariable i = fresh.fresh("I", Sort::Integer);
            const FOVariable j = fresh.fresh("J", Sort::Integer);
            const FOVariable k = fresh.fresh("K", Sort::Integer);
            FormulaPtr body = val_formula(bin->left, i, fresh, options);
            body = f_and(body, val_formula(bin->right, j, fresh, options));
            body = f_and(body,
                         f_compare(Relation::LessEqual, term_of_variable(i), term_of_variable(k)));
            body = f_and(body,
                         f_compare(Relation::LessEqual, term_of_variable(k), term_of_variable(j)));
            body = f_and(body, f_compare(Relation::Equal, mk_variable(z), term_of_variable(k)));
            return f_exists({i, j, k}, std::move(body));
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

// Shared shape of the three literal cases: exists Z1..Zk (val conjunction
// with p(Z1,...,Zk), possibly negated or doubly negated).
FormulaPtr tau_literal(const Literal& lit, FreshVariables& fresh,
                       const TranslationOptions& options) {
    std::vector<FOVariable> zs;
    std::vector<FormulaPtr> conjuncts;
    for (const auto& arg : lit.atom.args) {
        const FOVariable z = fresh.fresh("Z", Sort::Object);
        zs.push_back(z);
        conjuncts.push_back(val_formula(arg, z, fresh, options));
    }
    std::vector<FOTermPtr> args;
    for (const auto& z : zs)
        args.push_back(mk_variable(z));
    FormulaPtr atom = f_atom(PredicateRef::constant(lit.atom.symbol()), std::move(args));
    if (lit.polarity == Polarity::Negated)
        atom = f_not(atom);
    else if (lit.polarity == Polarity::DoublyNegated)
        atom = f_not(f_not(atom));
    conjuncts.push_back(std::move(atom));
    return f_exists(zs, conjoin(conjuncts));
}

}  // namespace

FormulaPtr tau_body(const BodyElement& element, FreshVariables& fresh,
                    const TranslationOptions& options) {
    if (const auto* lit = std::get_if<Literal>(&element))
        return tau_literal(*lit, fresh, options);
    const auto& cmp = std::get<Comparison>(element);
    const FOVariable z1 = fresh.fresh("Z", Sort::Object);
    const FOVariable z2 = fresh.fresh("Z", Sort::Object);
    FormulaPtr body = val_formula(cmp.left, z1, fresh, options);
    body = f_and(body, val_formula(cmp.right, z2, fresh, options));
    body = f_and(body, f_compare(cmp.rel, mk_variable(z1), mk_variable(z2)));
    return f_exists({z1, z2}, std::move(body));
}

FormulaPtr tau_star_rule(const Rule& rule, const TranslationOptions& options) {
    FreshVariables fresh;
    for (const auto& name : variable_names(rule))
        fresh.reserve(name);

    std::vector<FormulaPtr> body_parts;
    for (const auto& element : rule.body)
        body_parts.push_back(tau_body(element, fresh, options));
    FormulaPtr body = conjoin(body_parts);

    FormulaPtr head;
    if (rule.head.kind == Head::Kind::Empty) {
        head = f_bottom();
    } else {
        const Atom& atom = *rule.head.atom;
        std::vector<FOVariable> zs;
        std::vector<FormulaPtr> vals;
        for (const auto& arg : atom.args) {
            const FOVariable z = fresh.fresh("Z", Sort::Object);
            zs.push_back(z);
            vals.push_back(val_formula(arg, z, fresh, options));
        }
        std::vector<FOTermPtr> args;
        for (const auto& z : zs)
            args.push_back(mk_variable(z));
        FormulaPtr head_atom = f_atom(PredicateRef::constant(atom.symbol()), std::move(args));
        if (rule.head.kind == Head::Kind::Choice)
            head_atom = f_or(head_atom, f_not(head_atom));
        head = zs.empty() ? std::move(head_atom)
                          : f_forall(zs, f_implies(conjoin(vals), std::move(head_atom)));
    }

    FormulaPtr sentence = f_implies(std::move(body), std::move(head));
    const auto vars = free_variables_ordered(sentence);
    return f_forall(vars, std::move(sentence));
}

std::vector<FormulaPtr> tau_star(const Program& program, const TranslationOptions& options) {
    std::vector<FormulaPtr> sentences;
    sentences.reserve(program.rules.size());
    for (const auto& rule : program.rules)
        sentences.push_back(tau_star_rule(rule, options));
    return sentences;
}

}  // namespace vera
