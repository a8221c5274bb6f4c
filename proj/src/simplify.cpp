#include "vera/simplify.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace vera {

namespace {

bool is_bottomf(const FormulaPtr& f) { return std::holds_alternative<BottomF>(f->node()); }

void collect_term_vars(const FOTermPtr& t, std::set<FOVariable>& out) {
    if (const auto* v = std::get_if<VariableTerm>(&t->node()))
        out.insert(v->var);
    else if (const auto* a = std::get_if<ArithTerm>(&t->node())) {
        collect_term_vars(a->left, out);
        collect_term_vars(a->right, out);
    }
}

std::set<FOVariable> term_vars(const FOTermPtr& t) {
    std::set<FOVariable> out;
    collect_term_vars(t, out);
    return out;
}

void flatten_and(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    if (const auto* b = std::get_if<BinaryFormula>(&f->node());
        b && b->conn == Connective::And) {
        flatten_and(b->left, out);
        flatten_and(b->right, out);
    } else {
        out.push_back(f);
    }
}

std::vector<FormulaPtr> flatten_and(const FormulaPtr& f) {
    std::vector<FormulaPtr> out;
    flatten_and(f, out);
    return out;
}

// Finds a conjunct Z = t (or t = Z) whose variable is in vars, is absent from
// t, and whose sort admits t; substitutes t for Z everywhere else and removes
// both the conjunct and the binder. Returns whether anything was eliminated.
bool try_eliminate(std::vector<FOVariable>& vars, std::vector<FormulaPtr>& conjuncts,
                   FormulaPtr* consequent, const SortContext& ctx) {
    for (std::size_t ci = 0; ci < conjuncts.size(); ++ci) {
        const auto* cmp = std::get_if<CompareFormula>(&conjuncts[ci]->node());
        if (!cmp || cmp->rel != Relation::Equal)
            continue;
        for (int side = 0; side < 2; ++side) {
            const FOTermPtr& var_side = side ? cmp->right : cmp->left;
            const FOTermPtr& term_side = side ? cmp->left : cmp->right;
            const auto* v = std::get_if<VariableTerm>(&var_side->node());
            if (!v)
                continue;
            const auto it = std::find(vars.begin(), vars.end(), v->var);
            if (it == vars.end())
                continue;
            if (term_vars(term_side).count(v->var))
                continue;
            if (v->var.sort == Sort::Integer && sort_of(term_side, ctx) != Sort::Integer)
                continue;
            const std::map<FOVariable, FOTermPtr> sub{{v->var, term_side}};
            std::vector<FormulaPtr> rest;
            for (std::size_t j = 0; j < conjuncts.size(); ++j)
                if (j != ci)
                    rest.push_back(substitute(conjuncts[j], sub, ctx));
            conjuncts = std::move(rest);
            if (consequent)
                *consequent = substitute(*consequent, sub, ctx);
            vars.erase(it);
            return true;
        }
    }
    return false;
}

FormulaPtr simplify_once(const FormulaPtr& f, const SortContext& ctx) {
    return std::visit(
        [&](const auto& n) -> FormulaPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, BottomF> || std::is_same_v<T, AtomFormula> ||
                          std::is_same_v<T, CompareFormula>) {
                return f;
            } else if constexpr (std::is_same_v<T, BinaryFormula>) {
                FormulaPtr l = simplify_once(n.left, ctx);
                FormulaPtr r = simplify_once(n.right, ctx);
                switch (n.conn) {
                    case Connective::And: {
                        if (is_top(l))
                            return r;
                        if (is_top(r))
                            return l;
                        std::vector<FormulaPtr> conjuncts = flatten_and(l);
                        flatten_and(r, conjuncts);
                        std::vector<FormulaPtr> unique;
                        for (const auto& c : conjuncts) {
                            const bool seen = std::any_of(
                                unique.begin(), unique.end(),
                                [&](const FormulaPtr& u) { return equal(u, c); });
                            if (!seen)
                                unique.push_back(c);
                        }
                        if (unique.size() < conjuncts.size())
                            return conjoin(unique);
                        return f_and(std::move(l), std::move(r));
                    }
                    case Connective::Or:
                        if (is_bottomf(l))
                            return r;
                        if (is_bottomf(r))
                            return l;
                        return f_or(std::move(l), std::move(r));
                    case Connective::Implies:
                        if (is_top(l))
                            return r;
                        if (is_top(r))
                            return f_top();
                        return f_implies(std::move(l), std::move(r));
                }
                return f;
            } else {
                // Gather the maximal run of same-kind binders.
                const Quantifier q = n.q;
                std::vector<FOVariable> vars;
                FormulaPtr body = f;
                while (true) {
                    const auto* qf = std::get_if<QuantifiedFormula>(&body->node());
                    if (!qf || qf->q != q)
                        break;
                    vars.push_back(qf->var);
                    body = qf->body;
                }
                body = simplify_once(body, ctx);

                if (q == Quantifier::Exists) {
                    std::vector<FormulaPtr> conjuncts = flatten_and(body);
                    bool changed = false;
                    while (try_eliminate(vars, conjuncts, nullptr, ctx))
                        changed = true;
                    if (changed)
                        body = conjoin(conjuncts);
                } else if (const auto* imp = std::get_if<BinaryFormula>(&body->node());
                           imp && imp->conn == Connective::Implies) {
                    std::vector<FormulaPtr> conjuncts = flatten_and(imp->left);
                    FormulaPtr consequent = imp->right;
                    bool changed = false;
                    while (try_eliminate(vars, conjuncts, &consequent, ctx))
                        changed = true;
                    if (changed)
                        body = conjuncts.empty()
                                   ? std::move(consequent)
                                   : f_implies(conjoin(conjuncts), std::move(consequent));
                }

                const auto free = free_variables(body);
                std::vector<FOVariable> kept;
                for (const auto& v : vars)
                    if (free.count(v))
                        kept.push_back(v);
                return q == Quantifier::Exists ? f_exists(kept, std::move(body))
                                               : f_forall(kept, std::move(body));
            }
        },
        f->node());
}

}  // namespace

FormulaPtr simplify(const FormulaPtr& f, const SortContext& ctx) {
    FormulaPtr current = f;
    for (int round = 0; round < 64; ++round) {
        FormulaPtr next = simplify_once(current, ctx);
        if (equal(next, current))
            return current;
        current = std::move(next);
    }
    return current;
}

namespace {

struct Renamer {
    std::set<std::string> taken;
    int integer_count = 0;
    int object_count = 0;

    std::string next_name(Sort sort) {
        while (true) {
            int& count = sort == Sort::Integer ? integer_count : object_count;
            const char* stem = sort == Sort::Integer ? "N" : "X";
            const std::string name = count == 0 ? stem : stem + std::to_string(count);
            ++count;
            if (!taken.count(name))
                return name;
        }
    }
};

FOTermPtr rename_term(const FOTermPtr& t, const std::map<FOVariable, FOVariable>& env) {
    if (const auto* v = std::get_if<VariableTerm>(&t->node())) {
        const auto it = env.find(v->var);
        return it == env.end() ? t : mk_variable(it->second);
    }
    if (const auto* a = std::get_if<ArithTerm>(&t->node()))
        return mk_arith(a->op, rename_term(a->left, env), rename_term(a->right, env));
    return t;
}

FormulaPtr rename_formula(const FormulaPtr& f, std::map<FOVariable, FOVariable>& env,
                          Renamer& names) {
    return std::visit(
        [&](const auto& n) -> FormulaPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, BottomF>) {
                return f;
            } else if constexpr (std::is_same_v<T, AtomFormula>) {
                std::vector<FOTermPtr> args;
                for (const auto& arg : n.args)
                    args.push_back(rename_term(arg, env));
                return f_atom(n.pred, std::move(args));
            } else if constexpr (std::is_same_v<T, CompareFormula>) {
                return f_compare(n.rel, rename_term(n.left, env), rename_term(n.right, env));
            } else if constexpr (std::is_same_v<T, BinaryFormula>) {
                // Rename the two operands of an equivalence once each, so its
                // (G -> H) and (H -> G) encoding stays recognizable.
                if (const auto [g, h] = iff_operands(f); g && h)
                    return f_iff(rename_formula(g, env, names), rename_formula(h, env, names));
                FormulaPtr l = rename_formula(n.left, env, names);
                FormulaPtr r = rename_formula(n.right, env, names);
                switch (n.conn) {
                    case Connective::And: return f_and(std::move(l), std::move(r));
                    case Connective::Or: return f_or(std::move(l), std::move(r));
                    case Connective::Implies: return f_implies(std::move(l), std::move(r));
                }
                return f;
            } else {
                const FOVariable fresh{names.next_name(n.var.sort), n.var.sort};
                const auto saved = env.find(n.var) != env.end()
                                       ? std::optional<FOVariable>(env.at(n.var))
                                       : std::nullopt;
                env.insert_or_assign(n.var, fresh);
                FormulaPtr body = rename_formula(n.body, env, names);
                if (saved)
                    env.insert_or_assign(n.var, *saved);
                else
                    env.erase(n.var);
                return std::make_shared<const Formula>(
                    QuantifiedFormula{n.q, fresh, std::move(body)});
            }
        },
        f->node());
}

}  // namespace

FormulaPtr normalize_variable_names(const FormulaPtr& f) {
    Renamer names;
    for (const auto& v : free_variables(f))
        names.taken.insert(v.name);
    std::map<FOVariable, FOVariable> env;
    return rename_formula(f, env, names);
}

namespace {

std::vector<std::vector<Value>> tuple_pool(const BoundedUniverse& u, int arity) {
    std::vector<std::vector<Value>> out{{}};
    const auto values = u.values();
    for (int i = 0; i < arity; ++i) {
        std::vector<std::vector<Value>> next;
        for (const auto& prefix : out)
            for (const auto& v : values) {
                auto tuple = prefix;
                tuple.push_back(v);
                next.push_back(std::move(tuple));
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace

bool check_equivalence_bounded(const FormulaPtr& f, const FormulaPtr& g,
                               const BoundedUniverse& u, const SortContext& ctx,
                               const OracleLimits& limits) {
    std::set<PredicateSymbol> preds = predicate_constants(f);
    for (const auto& p : predicate_constants(g))
        preds.insert(p);
    std::set<std::string> integer_names;
    for (const auto& name : symbolic_constants(f))
        if (ctx.is_integer_constant(name))
            integer_names.insert(name);
    for (const auto& name : symbolic_constants(g))
        if (ctx.is_integer_constant(name))
            integer_names.insert(name);

    std::vector<GroundAtom> atoms;
    for (const auto& p : preds)
        for (auto& tuple : tuple_pool(u, p.arity))
            atoms.push_back(GroundAtom{p.name, std::move(tuple)});
    const std::vector<std::string> constants(integer_names.begin(), integer_names.end());
    const auto ints = u.integers();
    if (!constants.empty() && ints.empty())
        return true;  // no admissible interpretation of the integer constants

    // Saturating count of interpretations.
    std::size_t total = 1;
    const std::size_t cap = limits.max_relation_candidates;
    for (std::size_t i = 0; i < atoms.size() && total <= cap; ++i)
        total = total > cap / 2 ? cap + 1 : total * 2;
    for (std::size_t i = 0; i < constants.size() && total <= cap; ++i)
        total = total > cap / ints.size() ? cap + 1 : total * ints.size();

    const auto agree = [&](const AtomSet& x, const std::map<std::string, Value>& valuation) {
        BoundedInterpretation m{u, valuation, x};
        return eval_formula(f, m) == eval_formula(g, m);
    };

    if (total <= cap && atoms.size() < 64) {
        std::map<std::string, Value> valuation;
        const std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
            if (i < constants.size()) {
                for (const auto k : ints) {
                    valuation.insert_or_assign(constants[i], Value::numeral(k));
                    if (!assign(i + 1))
                        return false;
                }
                return true;
            }
            const std::uint64_t limit = std::uint64_t{1} << atoms.size();
            for (std::uint64_t mask = 0; mask < limit; ++mask) {
                AtomSet x;
                for (std::size_t a = 0; a < atoms.size(); ++a)
                    if (mask & (std::uint64_t{1} << a))
                        x.insert(atoms[a]);
                if (!agree(x, valuation))
                    return false;
            }
            return true;
        };
        return assign(0);
    }

    // Too many interpretations: seeded random sampling.
    std::mt19937 rng(271828182);
    std::uniform_int_distribution<std::size_t> pick_int(0, ints.size() - 1);
    for (int sample = 0; sample < 200; ++sample) {
        AtomSet x;
        for (const auto& a : atoms)
            if (rng() % 2)
                x.insert(a);
        std::map<std::string, Value> valuation;
        for (const auto& c : constants)
            valuation.insert_or_assign(c, Value::numeral(ints[pick_int(rng)]));
        if (!agree(x, valuation))
            return false;
    }
    return true;
}

}  // namespace vera
