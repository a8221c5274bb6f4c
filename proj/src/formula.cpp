#include "vera/formula.hpp"

#include <algorithm>
#include <sstream>

namespace vera {

FOTermPtr mk_value(Value v) { return std::make_shared<const FOTerm>(ValueTerm{std::move(v)}); }
FOTermPtr mk_numeral(std::int64_t n) { return mk_value(Value::numeral(n)); }
FOTermPtr mk_symbol(std::string name) { return mk_value(Value::symbol(std::move(name))); }
FOTermPtr mk_variable(FOVariable v) {
    return std::make_shared<const FOTerm>(VariableTerm{std::move(v)});
}
FOTermPtr mk_arith(ArithOp op, FOTermPtr left, FOTermPtr right) {
    return std::make_shared<const FOTerm>(ArithTerm{op, std::move(left), std::move(right)});
}

Sort sort_of(const FOTermPtr& t, const SortContext& ctx) {
    return std::visit(
        [&ctx](const auto& n) -> Sort {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ValueTerm>) {
                if (n.value.is_numeral())
                    return Sort::Integer;
                if (n.value.is_symbol() && ctx.is_integer_constant(n.value.name()))
                    return Sort::Integer;
                return Sort::Object;
            } else if constexpr (std::is_same_v<T, VariableTerm>) {
                return n.var.sort;
            } else {
                return Sort::Integer;
            }
        },
        t->node());
}

bool equal(const FOTermPtr& a, const FOTermPtr& b) {
    if (a.get() == b.get())
        return true;
    if (a->node().index() != b->node().index())
        return false;
    if (const auto* va = std::get_if<ValueTerm>(&a->node()))
        return va->value == std::get<ValueTerm>(b->node()).value;
    if (const auto* xa = std::get_if<VariableTerm>(&a->node()))
        return xa->var == std::get<VariableTerm>(b->node()).var;
    const auto& aa = std::get<ArithTerm>(a->node());
    const auto& ab = std::get<ArithTerm>(b->node());
    return aa.op == ab.op && equal(aa.left, ab.left) && equal(aa.right, ab.right);
}

FormulaPtr f_bottom() {
    static const FormulaPtr bottom = std::make_shared<const Formula>(BottomF{});
    return bottom;
}
FormulaPtr f_top() {
    static const FormulaPtr top = f_implies(f_bottom(), f_bottom());
    return top;
}
FormulaPtr f_atom(PredicateRef pred, std::vector<FOTermPtr> args) {
    if (static_cast<int>(args.size()) != pred.arity)
        throw std::invalid_argument("arity mismatch for predicate " + pred.name);
    return std::make_shared<const Formula>(AtomFormula{std::move(pred), std::move(args)});
}
FormulaPtr f_compare(Relation rel, FOTermPtr left, FOTermPtr right) {
    return std::make_shared<const Formula>(CompareFormula{rel, std::move(left), std::move(right)});
}
FormulaPtr f_and(FormulaPtr left, FormulaPtr right) {
    return std::make_shared<const Formula>(
        BinaryFormula{Connective::And, std::move(left), std::move(right)});
}
FormulaPtr f_or(FormulaPtr left, FormulaPtr right) {
    return std::make_shared<const Formula>(
        BinaryFormula{Connective::Or, std::move(left), std::move(right)});
}
FormulaPtr f_implies(FormulaPtr left, FormulaPtr right) {
    return std::make_shared<const Formula>(
        BinaryFormula{Connective::Implies, std::move(left), std::move(right)});
}
FormulaPtr f_not(FormulaPtr f) { return f_implies(std::move(f), f_bottom()); }
FormulaPtr f_iff(FormulaPtr left, FormulaPtr right) {
    return f_and(f_implies(left, right), f_implies(right, left));
}
FormulaPtr f_forall(FOVariable var, FormulaPtr body) {
    return std::make_shared<const Formula>(
        QuantifiedFormula{Quantifier::ForAll, std::move(var), std::move(body)});
}
FormulaPtr f_exists(FOVariable var, FormulaPtr body) {
    return std::make_shared<const Formula>(
        QuantifiedFormula{Quantifier::Exists, std::move(var), std::move(body)});
}
FormulaPtr f_forall(const std::vector<FOVariable>& vars, FormulaPtr body) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = f_forall(*it, std::move(body));
    return body;
}
FormulaPtr f_exists(const std::vector<FOVariable>& vars, FormulaPtr body) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = f_exists(*it, std::move(body));
    return body;
}

FormulaPtr conjoin(const std::vector<FormulaPtr>& fs) {
    if (fs.empty())
        return f_top();
    FormulaPtr result = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i)
        result = f_and(result, fs[i]);
    return result;
}
FormulaPtr disjoin(const std::vector<FormulaPtr>& fs) {
    if (fs.empty())
        return f_bottom();
    FormulaPtr result = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i)
        result = f_or(result, fs[i]);
    return result;
}

static bool is_bottom(const FormulaPtr& f) {
    return std::holds_alternative<BottomF>(f->node());
}

bool is_top(const FormulaPtr& f) {
    const auto* b = std::get_if<BinaryFormula>(&f->node());
    return b && b->conn == Connective::Implies && is_bottom(b->left) && is_bottom(b->right);
}

FormulaPtr negated_operand(const FormulaPtr& f) {
    const auto* b = std::get_if<BinaryFormula>(&f->node());
    if (b && b->conn == Connective::Implies && is_bottom(b->right) && !is_bottom(b->left))
        return b->left;
    return nullptr;
}

std::pair<FormulaPtr, FormulaPtr> iff_operands(const FormulaPtr& f) {
    const auto* a = std::get_if<BinaryFormula>(&f->node());
    if (!a || a->conn != Connective::And)
        return {nullptr, nullptr};
    const auto* l = std::get_if<BinaryFormula>(&a->left->node());
    const auto* r = std::get_if<BinaryFormula>(&a->right->node());
    if (!l || !r || l->conn != Connective::Implies || r->conn != Connective::Implies)
        return {nullptr, nullptr};
    if (equal(l->left, r->right) && equal(l->right, r->left))
        return {l->left, l->right};
    return {nullptr, nullptr};
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get())
        return true;
    if (a->node().index() != b->node().index())
        return false;
    if (std::holds_alternative<BottomF>(a->node()))
        return true;
    if (const auto* at = std::get_if<AtomFormula>(&a->node())) {
        const auto& bt = std::get<AtomFormula>(b->node());
        if (at->pred != bt.pred || at->args.size() != bt.args.size())
            return false;
        for (std::size_t i = 0; i < at->args.size(); ++i)
            if (!equal(at->args[i], bt.args[i]))
                return false;
        return true;
    }
    if (const auto* ac = std::get_if<CompareFormula>(&a->node())) {
        const auto& bc = std::get<CompareFormula>(b->node());
        return ac->rel == bc.rel && equal(ac->left, bc.left) && equal(ac->right, bc.right);
    }
    if (const auto* ab = std::get_if<BinaryFormula>(&a->node())) {
        const auto& bb = std::get<BinaryFormula>(b->node());
        return ab->conn == bb.conn && equal(ab->left, bb.left) && equal(ab->right, bb.right);
    }
    const auto& aq = std::get<QuantifiedFormula>(a->node());
    const auto& bq = std::get<QuantifiedFormula>(b->node());
    return aq.q == bq.q && aq.var == bq.var && equal(aq.body, bq.body);
}

namespace {

void term_variables(const FOTermPtr& t, std::vector<FOVariable>& out) {
    std::visit(
        [&out](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VariableTerm>) {
                out.push_back(n.var);
            } else if constexpr (std::is_same_v<T, ArithTerm>) {
                term_variables(n.left, out);
                term_variables(n.right, out);
            }
        },
        t->node());
}

void collect_free(const FormulaPtr& f, std::vector<FOVariable>& bound,
                  std::vector<FOVariable>& out) {
    auto emit = [&](const FOVariable& v) {
        if (std::find(bound.begin(), bound.end(), v) != bound.end())
            return;
        if (std::find(out.begin(), out.end(), v) == out.end())
            out.push_back(v);
    };
    auto emit_term = [&](const FOTermPtr& t) {
        std::vector<FOVariable> vars;
        term_variables(t, vars);
        for (const auto& v : vars)
            emit(v);
    };
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, AtomFormula>) {
                for (const auto& arg : n.args)
                    emit_term(arg);
            } else if constexpr (std::is_same_v<T, CompareFormula>) {
                emit_term(n.left);
                emit_term(n.right);
            } else if constexpr (std::is_same_v<T, BinaryFormula>) {
                collect_free(n.left, bound, out);
                collect_free(n.right, bound, out);
            } else if constexpr (std::is_same_v<T, QuantifiedFormula>) {
                bound.push_back(n.var);
                collect_free(n.body, bound, out);
                bound.pop_back();
            }
        },
        f->node());
}

}  // namespace

std::vector<FOVariable> free_variables_ordered(const FormulaPtr& f) {
    std::vector<FOVariable> bound, out;
    collect_free(f, bound, out);
    return out;
}

std::set<FOVariable> free_variables(const FormulaPtr& f) {
    const auto ordered = free_variables_ordered(f);
    return {ordered.begin(), ordered.end()};
}

namespace {

template <typename Fn>
void visit_atoms(const FormulaPtr& f, Fn&& fn) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, AtomFormula>) {
                fn(n);
            } else if constexpr (std::is_same_v<T, BinaryFormula>) {
                visit_atoms(n.left, fn);
                visit_atoms(n.right, fn);
            } else if constexpr (std::is_same_v<T, QuantifiedFormula>) {
                visit_atoms(n.body, fn);
            }
        },
        f->node());
}

template <typename Fn>
void visit_terms(const FormulaPtr& f, Fn&& fn) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, AtomFormula>) {
                for (const auto& arg : n.args)
                    fn(arg);
            } else if constexpr (std::is_same_v<T, CompareFormula>) {
                fn(n.left);
                fn(n.right);
            } else if constexpr (std::is_same_v<T, BinaryFormula>) {
                visit_terms(n.left, fn);
                visit_terms(n.right, fn);
            } else if constexpr (std::is_same_v<T, QuantifiedFormula>) {
                visit_terms(n.body, fn);
            }
        },
        f->node());
}

void term_symbols(const FOTermPtr& t, std::set<std::string>& out) {
    std::visit(
        [&out](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ValueTerm>) {
                if (n.value.is_symbol())
                    out.insert(n.value.name());
            } else if constexpr (std::is_same_v<T, ArithTerm>) {
                term_symbols(n.left, out);
                term_symbols(n.right, out);
            }
        },
        t->node());
}

}  // namespace

std::set<PredicateSymbol> predicate_constants(const FormulaPtr& f) {
    std::set<PredicateSymbol> out;
    visit_atoms(f, [&out](const AtomFormula& a) {
        if (!a.pred.is_variable)
            out.insert(a.pred.symbol());
    });
    return out;
}

std::set<std::string> predicate_variables(const FormulaPtr& f) {
    std::set<std::string> out;
    visit_atoms(f, [&out](const AtomFormula& a) {
        if (a.pred.is_variable)
            out.insert(a.pred.name);
    });
    return out;
}

std::set<std::string> symbolic_constants(const FormulaPtr& f) {
    std::set<std::string> out;
    visit_terms(f, [&out](const FOTermPtr& t) { term_symbols(t, out); });
    return out;
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

FOTermPtr substitute(const FOTermPtr& t, const std::map<FOVariable, FOTermPtr>& map) {
    return std::visit(
        [&](const auto& n) -> FOTermPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VariableTerm>) {
                auto it = map.find(n.var);
                return it == map.end() ? t : it->second;
            } else if constexpr (std::is_same_v<T, ArithTerm>) {
                return mk_arith(n.op, substitute(n.left, map), substitute(n.right, map));
            } else {
                return t;
            }
        },
        t->node());
}

namespace {

FormulaPtr substitute_impl(const FormulaPtr& f, std::map<FOVariable, FOTermPtr> map) {
    return std::visit(
        [&](const auto& n) -> FormulaPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, BottomF>) {
                return f;
            } else if constexpr (std::is_same_v<T, AtomFormula>) {
                std::vector<FOTermPtr> args;
                args.reserve(n.args.size());
                for (const auto& arg : n.args)
                    args.push_back(substitute(arg, map));
                return f_atom(n.pred, std::move(args));
            } else if constexpr (std::is_same_v<T, CompareFormula>) {
                return f_compare(n.rel, substitute(n.left, map), substitute(n.right, map));
            } else if constexpr (std::is_same_v<T, BinaryFormula>) {
                return std::make_shared<const Formula>(BinaryFormula{
                    n.conn, substitute_impl(n.left, map), substitute_impl(n.right, map)});
            } else {
                map.erase(n.var);  // shadowed
                if (map.empty())
                    return f;
                // Rename the bound variable if any replacement term captures it.
                bool capture = false;
                for (const auto& [from, to] : map) {
                    std::vector<FOVariable> vars;
                    term_variables(to, vars);
                    if (std::find(vars.begin(), vars.end(), n.var) != vars.end()) {
                        capture = true;
                        break;
                    }
                }
                FOVariable var = n.var;
                FormulaPtr body = n.body;
                if (capture) {
                    std::set<std::string> taken;
                    for (const auto& v : free_variables(body))
                        taken.insert(v.name);
                    for (const auto& [from, to] : map) {
                        std::vector<FOVariable> vars;
                        term_variables(to, vars);
                        for (const auto& v : vars)
                            taken.insert(v.name);
                    }
                    std::string fresh = n.var.name;
                    do {
                        fresh += "'";
                    } while (taken.count(fresh));
                    var = FOVariable{fresh, n.var.sort};
                    body = substitute_impl(body, {{n.var, mk_variable(var)}});
                }
                return std::make_shared<const Formula>(
                    QuantifiedFormula{n.q, var, substitute_impl(body, map)});
            }
        },
        f->node());
}

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const std::map<FOVariable, FOTermPtr>& map,
                      const SortContext& ctx) {
    for (const auto& [var, term] : map)
        if (var.sort == Sort::Integer && sort_of(term, ctx) != Sort::Integer)
            throw SortError("cannot substitute object-sorted term " + to_string(term) +
                            " for integer variable " + var.name);
    return substitute_impl(f, map);
}

FormulaPtr substitute_predicates(const FormulaPtr& f,
                                 const std::map<PredicateSymbol, PredicateRef>& map) {
    return std::visit(
        [&](const auto& n) -> FormulaPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, AtomFormula>) {
                if (n.pred.is_variable)
                    return f;
                auto it = map.find(n.pred.symbol());
                if (it == map.end())
                    return f;
                if (it->second.arity != n.pred.arity)
                    throw std::invalid_argument("arity mismatch mapping " +
                                                n.pred.symbol().to_string() + " to " +
                                                it->second.name);
                return f_atom(it->second, n.args);
            } else if constexpr (std::is_same_v<T, BinaryFormula>) {
                return std::make_shared<const Formula>(
                    BinaryFormula{n.conn, substitute_predicates(n.left, map),
                                  substitute_predicates(n.right, map)});
            } else if constexpr (std::is_same_v<T, QuantifiedFormula>) {
                return std::make_shared<const Formula>(
                    QuantifiedFormula{n.q, n.var, substitute_predicates(n.body, map)});
            } else {
                return f;
            }
        },
        f->node());
}

// ---------------------------------------------------------------------------
// Alpha equivalence
// ---------------------------------------------------------------------------

namespace {

struct AlphaContext {
    std::map<std::string, int> left_vars, right_vars;
    std::map<std::string, int> left_preds, right_preds;
    int next_var = 0;
    int next_pred = 0;
};

bool alpha_terms(const FOTermPtr& a, const FOTermPtr& b, const AlphaContext& ctx) {
    if (a->node().index() != b->node().index())
        return false;
    if (const auto* va = std::get_if<ValueTerm>(&a->node()))
        return va->value == std::get<ValueTerm>(b->node()).value;
    if (const auto* xa = std::get_if<VariableTerm>(&a->node())) {
        const auto& xb = std::get<VariableTerm>(b->node());
        if (xa->var.sort != xb.var.sort)
            return false;
        auto la = ctx.left_vars.find(xa->var.name);
        auto lb = ctx.right_vars.find(xb.var.name);
        if ((la == ctx.left_vars.end()) != (lb == ctx.right_vars.end()))
            return false;
        if (la != ctx.left_vars.end())
            return la->second == lb->second;
        return xa->var.name == xb.var.name;  // both free
    }
    const auto& aa = std::get<ArithTerm>(a->node());
    const auto& ab = std::get<ArithTerm>(b->node());
    return aa.op == ab.op && alpha_terms(aa.left, ab.left, ctx) &&
           alpha_terms(aa.right, ab.right, ctx);
}

bool alpha_preds(const PredicateRef& a, const PredicateRef& b, const AlphaContext& ctx) {
    if (a.is_variable != b.is_variable || a.arity != b.arity)
        return false;
    if (!a.is_variable)
        return a.name == b.name;
    auto la = ctx.left_preds.find(a.name);
    auto lb = ctx.right_preds.find(b.name);
    if ((la == ctx.left_preds.end()) != (lb == ctx.right_preds.end()))
        return false;
    if (la != ctx.left_preds.end())
        return la->second == lb->second;
    return a.name == b.name;  // both free predicate variables
}

bool alpha_formulas(const FormulaPtr& a, const FormulaPtr& b, AlphaContext& ctx) {
    if (a->node().index() != b->node().index())
        return false;
    if (std::holds_alternative<BottomF>(a->node()))
        return true;
    if (const auto* at = std::get_if<AtomFormula>(&a->node())) {
        const auto& bt = std::get<AtomFormula>(b->node());
        if (!alpha_preds(at->pred, bt.pred, ctx) || at->args.size() != bt.args.size())
            return false;
        for (std::size_t i = 0; i < at->args.size(); ++i)
            if (!alpha_terms(at->args[i], bt.args[i], ctx))
                return false;
        return true;
    }
    if (const auto* ac = std::get_if<CompareFormula>(&a->node())) {
        const auto& bc = std::get<CompareFormula>(b->node());
        return ac->rel == bc.rel && alpha_terms(ac->left, bc.left, ctx) &&
               alpha_terms(ac->right, bc.right, ctx);
    }
    if (const auto* ab = std::get_if<BinaryFormula>(&a->node())) {
        const auto& bb = std::get<BinaryFormula>(b->node());
        return ab->conn == bb.conn && alpha_formulas(ab->left, bb.left, ctx) &&
               alpha_formulas(ab->right, bb.right, ctx);
    }
    const auto& aq = std::get<QuantifiedFormula>(a->node());
    const auto& bq = std::get<QuantifiedFormula>(b->node());
    if (aq.q != bq.q || aq.var.sort != bq.var.sort)
        return false;
    const int id = ctx.next_var++;
    auto saved_left = ctx.left_vars;
    auto saved_right = ctx.right_vars;
    ctx.left_vars[aq.var.name] = id;
    ctx.right_vars[bq.var.name] = id;
    const bool result = alpha_formulas(aq.body, bq.body, ctx);
    ctx.left_vars = std::move(saved_left);
    ctx.right_vars = std::move(saved_right);
    return result;
}

}  // namespace

bool alpha_equivalent(const FormulaPtr& f, const FormulaPtr& g) {
    AlphaContext ctx;
    return alpha_formulas(f, g, ctx);
}

bool alpha_equivalent(const SecondOrderSentence& a, const SecondOrderSentence& b) {
    if (a.q != b.q || a.predicate_vars.size() != b.predicate_vars.size())
        return false;
    AlphaContext ctx;
    for (std::size_t i = 0; i < a.predicate_vars.size(); ++i) {
        if (a.predicate_vars[i].arity != b.predicate_vars[i].arity)
            return false;
        const int id = ctx.next_pred++;
        ctx.left_preds[a.predicate_vars[i].name] = id;
        ctx.right_preds[b.predicate_vars[i].name] = id;
    }
    return alpha_formulas(a.matrix, b.matrix, ctx);
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

int arith_precedence(ArithOp op) { return op == ArithOp::Multiply ? 2 : 1; }

void print_term_prec(std::ostream& out, const FOTermPtr& t, int min_prec) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ValueTerm>) {
                out << n.value.to_string();
            } else if constexpr (std::is_same_v<T, VariableTerm>) {
                out << n.var.name;
            } else {
                const int prec = arith_precedence(n.op);
                const bool parens = prec < min_prec;
                if (parens)
                    out << '(';
                print_term_prec(out, n.left, prec);
                out << ' ' << (n.op == ArithOp::Add ? "+" : n.op == ArithOp::Subtract ? "-" : "*")
                    << ' ';
                print_term_prec(out, n.right, prec + 1);
                if (parens)
                    out << ')';
            }
        },
        t->node());
}

// Precedence levels: <-> 0, -> 1, or 2, and 3, unary 4.
void print_formula_prec(std::ostream& out, const FormulaPtr& f, int min_prec) {
    if (is_top(f)) {
        out << "#true";
        return;
    }
    if (auto [l, r] = iff_operands(f); l) {
        const bool parens = min_prec > 0;
        if (parens)
            out << '(';
        print_formula_prec(out, l, 1);
        out << " <-> ";
        print_formula_prec(out, r, 1);
        if (parens)
            out << ')';
        return;
    }
    if (auto g = negated_operand(f)) {
        out << "not ";
        print_formula_prec(out, g, 4);
        return;
    }
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, BottomF>) {
                out << "#false";
            } else if constexpr (std::is_same_v<T, AtomFormula>) {
                out << n.pred.name;
                if (!n.args.empty()) {
                    out << '(';
                    for (std::size_t i = 0; i < n.args.size(); ++i) {
                        if (i)
                            out << ", ";
                        print_term_prec(out, n.args[i], 0);
                    }
                    out << ')';
                }
            } else if constexpr (std::is_same_v<T, CompareFormula>) {
                print_term_prec(out, n.left, 0);
                out << ' ' << to_string(n.rel) << ' ';
                print_term_prec(out, n.right, 0);
            } else if constexpr (std::is_same_v<T, BinaryFormula>) {
                int prec = 1;
                const char* text = " -> ";
                if (n.conn == Connective::And) {
                    prec = 3;
                    text = " and ";
                } else if (n.conn == Connective::Or) {
                    prec = 2;
                    text = " or ";
                }
                const bool parens = prec < min_prec;
                if (parens)
                    out << '(';
                // and/or associate to the left, -> to the right
                if (n.conn == Connective::Implies) {
                    print_formula_prec(out, n.left, prec + 1);
                    out << text;
                    print_formula_prec(out, n.right, prec);
                } else {
                    print_formula_prec(out, n.left, prec);
                    out << text;
                    print_formula_prec(out, n.right, prec + 1);
                }
                if (parens)
                    out << ')';
            } else {
                out << (n.q == Quantifier::ForAll ? "forall " : "exists ");
                out << n.var.name;
                FormulaPtr body = n.body;
                while (const auto* q = std::get_if<QuantifiedFormula>(&body->node())) {
                    if (q->q != n.q)
                        break;
                    out << ", " << q->var.name;
                    body = q->body;
                }
                out << ' ';
                // Atoms, comparisons, and nested quantifiers bind unambiguously.
                const bool atomic = std::holds_alternative<AtomFormula>(body->node()) ||
                                    std::holds_alternative<CompareFormula>(body->node()) ||
                                    std::holds_alternative<QuantifiedFormula>(body->node());
                if (atomic) {
                    print_formula_prec(out, body, 4);
                } else {
                    out << '(';
                    print_formula_prec(out, body, 0);
                    out << ')';
                }
            }
        },
        f->node());
}

}  // namespace

std::string to_string(const FOTermPtr& t) {
    std::ostringstream out;
    print_term_prec(out, t, 0);
    return out.str();
}

std::string to_string(const FormulaPtr& f) {
    std::ostringstream out;
    print_formula_prec(out, f, 0);
    return out.str();
}

std::string to_string(const SecondOrderSentence& s) {
    std::ostringstream out;
    if (!s.predicate_vars.empty()) {
        out << (s.q == Quantifier::Exists ? "exists" : "forall");
        for (std::size_t i = 0; i < s.predicate_vars.size(); ++i)
            out << (i ? ", " : " ") << s.predicate_vars[i].name;
        out << " (";
        print_formula_prec(out, s.matrix, 0);
        out << ')';
    } else {
        print_formula_prec(out, s.matrix, 0);
    }
    return out.str();
}

}  // namespace vera
