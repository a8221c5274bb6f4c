#include "vera/tptp.hpp"

#include <sstream>
#include <stdexcept>

namespace vera {

std::vector<FormulaPtr> standard_axioms(const std::set<std::string>& constants,
                                        const std::map<std::string, Sort>& placeholders) {
    const FOVariable x{"X", Sort::Object};
    const FOVariable y{"Y", Sort::Object};
    const FOVariable z{"Z", Sort::Object};
    const FOVariable n{"N", Sort::Integer};
    const auto var = [](const FOVariable& v) { return mk_variable(v); };

    std::vector<FormulaPtr> out;
    // The order on precomputed terms is a strict total order.
    out.push_back(f_forall(x, f_not(f_compare(Relation::Less, var(x), var(x)))));
    out.push_back(f_forall(
        {x, y, z},
        f_implies(f_and(f_compare(Relation::Less, var(x), var(y)),
                        f_compare(Relation::Less, var(y), var(z))),
                  f_compare(Relation::Less, var(x), var(z)))));
    out.push_back(f_forall(
        {x, y}, f_or(f_compare(Relation::Less, var(x), var(y)),
                     f_or(f_compare(Relation::Equal, var(x), var(y)),
                          f_compare(Relation::Less, var(y), var(x))))));
    // Extreme elements.
    out.push_back(f_forall(
        x, f_and(f_compare(Relation::LessEqual, mk_value(Value::infimum()), var(x)),
                 f_compare(Relation::LessEqual, var(x), mk_value(Value::supremum())))));
    // Every numeral precedes every non-placeholder symbolic constant.
    std::vector<std::string> plain;
    for (const auto& c : constants)
        if (!placeholders.count(c))
            plain.push_back(c);
    for (const auto& c : plain)
        out.push_back(f_forall(n, f_compare(Relation::Less, var(n), mk_symbol(c))));
    // Distinct symbolic constants denote distinct values, unless one is a
    // placeholder.
    for (std::size_t i = 0; i < plain.size(); ++i)
        for (std::size_t j = i + 1; j < plain.size(); ++j)
            out.push_back(f_compare(Relation::NotEqual, mk_symbol(plain[i]),
                                    mk_symbol(plain[j])));
    return out;
}

namespace {

class Emitter {
public:
    explicit Emitter(const ProofTask& task) : task_(task) {
        for (const auto& [name, sort] : task.placeholders)
            if (sort == Sort::Integer)
                ctx_.integer_constants.insert(name);
    }

    std::string run() {
        scan(task_.conjecture.formula);
        for (const auto& axiom : task_.axioms)
            scan(axiom.formula);

        std::ostringstream out;
        out << "% " << task_.name << "\n";
        out << "tff(decl_object, type, object: $tType).\n";
        out << "tff(decl_int2obj, type, int2obj: $int > object).\n";
        out << "tff(decl_less, type, less: (object * object) > $o).\n";
        if (uses_infimum_)
            out << "tff(decl_o_infimum, type, o_infimum: object).\n";
        if (uses_supremum_)
            out << "tff(decl_o_supremum, type, o_supremum: object).\n";
        for (const auto& c : constants_) {
            const auto it = task_.placeholders.find(c);
            const bool integer = it != task_.placeholders.end() && it->second == Sort::Integer;
            out << "tff(decl_" << c << ", type, " << c << ": " << (integer ? "$int" : "object")
                << ").\n";
        }
        for (const auto& p : predicates_) {
            out << "tff(decl_" << p.name << ", type, " << p.name << ": ";
            if (p.arity == 0) {
                out << "$o";
            } else {
                if (p.arity > 1) {
                    out << "(object";
                    for (int i = 1; i < p.arity; ++i)
                        out << " * object";
                    out << ")";
                } else {
                    out << "object";
                }
                out << " > $o";
            }
            out << ").\n";
        }
        out << "tff(axiom_sort_1, axiom, ![I: $int, J: $int]: "
               "((int2obj(I) = int2obj(J)) => (I = J))).\n";
        out << "tff(axiom_sort_2, axiom, ![I: $int, J: $int]: "
               "($less(I, J) <=> less(int2obj(I), int2obj(J)))).\n";
        for (const auto& axiom : task_.axioms)
            out << "tff(" << axiom.label << ", axiom, " << formula(axiom.formula) << ").\n";
        out << "tff(" << task_.conjecture.label << ", conjecture, "
            << formula(task_.conjecture.formula) << ").\n";
        return out.str();
    }

private:
    void scan(const FormulaPtr& f) {
        if (!free_variables(f).empty())
            throw std::invalid_argument("formula is not closed: " + to_string(f));
        if (!predicate_variables(f).empty())
            throw std::invalid_argument("residual predicate variable in: " + to_string(f));
        for (const auto& p : predicates_of(f)) {
            for (const auto& q : predicates_)
                if (q.name == p.name && q.arity != p.arity)
                    throw std::invalid_argument("predicate " + p.name +
                                                " used with two arities");
            predicates_.insert(p);
        }
        for (const auto& c : symbolic_constants(f))
            constants_.insert(c);
        mark_extremes(f);
    }

    static std::set<PredicateSymbol> predicates_of(const FormulaPtr& f) {
        return predicate_constants(f);
    }

    void mark_extremes_term(const FOTermPtr& t) {
        if (const auto* v = std::get_if<ValueTerm>(&t->node())) {
            if (v->value.kind() == Value::Kind::Infimum)
                uses_infimum_ = true;
            if (v->value.kind() == Value::Kind::Supremum)
                uses_supremum_ = true;
        } else if (const auto* a = std::get_if<ArithTerm>(&t->node())) {
            mark_extremes_term(a->left);
            mark_extremes_term(a->right);
        }
    }

    void mark_extremes(const FormulaPtr& f) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, AtomFormula>) {
                    for (const auto& arg : n.args)
                        mark_extremes_term(arg);
                } else if constexpr (std::is_same_v<T, CompareFormula>) {
                    mark_extremes_term(n.left);
                    mark_extremes_term(n.right);
                } else if constexpr (std::is_same_v<T, BinaryFormula>) {
                    mark_extremes(n.left);
                    mark_extremes(n.right);
                } else if constexpr (std::is_same_v<T, QuantifiedFormula>) {
                    mark_extremes(n.body);
                }
            },
            f->node());
    }

    // Renders t at its natural sort; wraps in int2obj when an object is
    // required but the term is an integer.
    std::string term(const FOTermPtr& t, Sort want) const {
        const Sort natural = sort_of(t, ctx_);
        if (want == Sort::Integer && natural != Sort::Integer)
            throw std::invalid_argument("object term in integer position: " + to_string(t));
        std::string text = std::visit(
            [&](const auto& n) -> std::string {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, ValueTerm>) {
                    switch (n.value.kind()) {
                        case Value::Kind::Numeral: return std::to_string(n.value.number());
                        case Value::Kind::Symbol: return n.value.name();
                        case Value::Kind::Infimum: return "o_infimum";
                        case Value::Kind::Supremum: return "o_supremum";
                    }
                    return {};
                } else if constexpr (std::is_same_v<T, VariableTerm>) {
                    return n.var.name;
                } else {
                    const char* op = n.op == ArithOp::Add        ? "$sum"
                                     : n.op == ArithOp::Subtract ? "$difference"
                                                                 : "$product";
                    return std::string(op) + "(" + term(n.left, Sort::Integer) + ", " +
                           term(n.right, Sort::Integer) + ")";
                }
            },
            t->node());
        if (want == Sort::Object && natural == Sort::Integer)
            text = "int2obj(" + text + ")";
        return text;
    }

    std::string comparison(const CompareFormula& c) const {
        const bool integer = sort_of(c.left, ctx_) == Sort::Integer &&
                             sort_of(c.right, ctx_) == Sort::Integer;
        if (integer) {
            const std::string l = term(c.left, Sort::Integer);
            const std::string r = term(c.right, Sort::Integer);
            switch (c.rel) {
                case Relation::Equal: return "(" + l + " = " + r + ")";
                case Relation::NotEqual: return "(" + l + " != " + r + ")";
                case Relation::Less: return "$less(" + l + ", " + r + ")";
                case Relation::Greater: return "$greater(" + l + ", " + r + ")";
                case Relation::LessEqual: return "$lesseq(" + l + ", " + r + ")";
                case Relation::GreaterEqual: return "$greatereq(" + l + ", " + r + ")";
            }
        }
        const std::string l = term(c.left, Sort::Object);
        const std::string r = term(c.right, Sort::Object);
        switch (c.rel) {
            case Relation::Equal: return "(" + l + " = " + r + ")";
            case Relation::NotEqual: return "(" + l + " != " + r + ")";
            case Relation::Less: return "less(" + l + ", " + r + ")";
            case Relation::Greater: return "less(" + r + ", " + l + ")";
            case Relation::LessEqual: return "(less(" + l + ", " + r + ") | (" + l + " = " + r +
                                             "))";
            case Relation::GreaterEqual: return "(less(" + r + ", " + l + ") | (" + l + " = " +
                                                r + "))";
        }
        return {};
    }

    std::string formula(const FormulaPtr& f) const {
        if (is_top(f))
            return "$true";
        if (const FormulaPtr inner = negated_operand(f))
            return "~(" + formula(inner) + ")";
        if (const auto [g, h] = iff_operands(f); g && h)
            return "(" + formula(g) + " <=> " + formula(h) + ")";
        return std::visit(
            [&](const auto& n) -> std::string {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, BottomF>) {
                    return "$false";
                } else if constexpr (std::is_same_v<T, AtomFormula>) {
                    if (n.args.empty())
                        return n.pred.name;
                    std::string out = n.pred.name + "(";
                    for (std::size_t i = 0; i < n.args.size(); ++i) {
                        if (i)
                            out += ", ";
                        out += term(n.args[i], Sort::Object);
                    }
                    return out + ")";
                } else if constexpr (std::is_same_v<T, CompareFormula>) {
                    return comparison(n);
                } else if constexpr (std::is_same_v<T, BinaryFormula>) {
                    const char* op = n.conn == Connective::And  ? " & "
                                     : n.conn == Connective::Or ? " | "
                                                                : " => ";
                    return "(" + formula(n.left) + op + formula(n.right) + ")";
                } else {
                    // Merge the maximal run of same-kind binders.
                    std::string binders;
                    const Quantifier q = n.q;
                    FormulaPtr body = f;
                    while (true) {
                        const auto* qf = std::get_if<QuantifiedFormula>(&body->node());
                        if (!qf || qf->q != q)
                            break;
                        if (!binders.empty())
                            binders += ", ";
                        binders += qf->var.name;
                        binders += qf->var.sort == Sort::Integer ? ": $int" : ": object";
                        body = qf->body;
                    }
                    return std::string(q == Quantifier::ForAll ? "!" : "?") + "[" + binders +
                           "]: (" + formula(body) + ")";
                }
            },
            f->node());
    }

    const ProofTask& task_;
    SortContext ctx_;
    std::set<PredicateSymbol> predicates_;
    std::set<std::string> constants_;
    bool uses_infimum_ = false;
    bool uses_supremum_ = false;
};

}  // namespace

std::string emit_task(const ProofTask& t) { return Emitter(t).run(); }

}  // namespace vera
