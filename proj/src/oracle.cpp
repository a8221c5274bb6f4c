#include "vera/oracle.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace vera {

// ---------------------------------------------------------------------------
// Universe
// ---------------------------------------------------------------------------

std::vector<Value> BoundedUniverse::values() const {
    std::vector<Value> out;
    if (include_infimum)
        out.push_back(Value::infimum());
    for (std::int64_t n = lo; n <= hi; ++n)
        out.push_back(Value::numeral(n));
    for (const auto& s : symbols)
        out.push_back(Value::symbol(s));
    if (include_supremum)
        out.push_back(Value::supremum());
    return out;
}

std::vector<std::int64_t> BoundedUniverse::integers() const {
    std::vector<std::int64_t> out;
    for (std::int64_t n = lo; n <= hi; ++n)
        out.push_back(n);
    return out;
}

bool BoundedUniverse::contains(const Value& v) const {
    switch (v.kind()) {
        case Value::Kind::Infimum: return include_infimum;
        case Value::Kind::Numeral: return v.number() >= lo && v.number() <= hi;
        case Value::Kind::Symbol: return symbols.count(v.name()) != 0;
        case Value::Kind::Supremum: return include_supremum;
    }
    return false;
}

std::string GroundAtom::to_string() const {
    std::string out = predicate;
    if (!args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i)
                out += ',';
            out += args[i].to_string();
        }
        out += ')';
    }
    return out;
}

std::string to_string(const AtomSet& atoms) {
    std::string out = "{";
    bool first = true;
    for (const auto& a : atoms) {
        if (!first)
            out += ", ";
        out += a.to_string();
        first = false;
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// Ground formulas
// ---------------------------------------------------------------------------

GF g_bottom() {
    static const GF bottom = std::make_shared<const GroundFormula>(GBottom{});
    return bottom;
}
GF g_atom(GroundAtom a) { return std::make_shared<const GroundFormula>(GAtomF{std::move(a)}); }
GF g_and(GF left, GF right) {
    return std::make_shared<const GroundFormula>(
        GBinaryF{Connective::And, std::move(left), std::move(right)});
}
GF g_or(GF left, GF right) {
    return std::make_shared<const GroundFormula>(
        GBinaryF{Connective::Or, std::move(left), std::move(right)});
}
GF g_implies(GF left, GF right) {
    return std::make_shared<const GroundFormula>(
        GBinaryF{Connective::Implies, std::move(left), std::move(right)});
}
GF g_not(GF f) { return g_implies(std::move(f), g_bottom()); }
GF g_top() {
    static const GF top = g_implies(g_bottom(), g_bottom());
    return top;
}

GF g_conjoin(const std::vector<GF>& fs) {
    if (fs.empty())
        return g_top();
    GF out = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i)
        out = g_and(out, fs[i]);
    return out;
}
GF g_disjoin(const std::vector<GF>& fs) {
    if (fs.empty())
        return g_bottom();
    GF out = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i)
        out = g_or(out, fs[i]);
    return out;
}

namespace {

bool is_gbottom(const GF& f) { return std::holds_alternative<GBottom>(f->node()); }

bool is_gtop(const GF& f) {
    const auto* b = std::get_if<GBinaryF>(&f->node());
    return b && b->conn == Connective::Implies && is_gbottom(b->left) && is_gbottom(b->right);
}

void print_gf(std::ostream& out, const GF& f, int min_prec) {
    if (is_gtop(f)) {
        out << "#true";
        return;
    }
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, GBottom>) {
                out << "#false";
            } else if constexpr (std::is_same_v<T, GAtomF>) {
                out << n.atom.to_string();
            } else {
                if (n.conn == Connective::Implies && is_gbottom(n.right)) {
                    out << "not ";
                    print_gf(out, n.left, 4);
                    return;
                }
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
                if (n.conn == Connective::Implies) {
                    print_gf(out, n.left, prec + 1);
                    out << text;
                    print_gf(out, n.right, prec);
                } else {
                    print_gf(out, n.left, prec);
                    out << text;
                    print_gf(out, n.right, prec + 1);
                }
                if (parens)
                    out << ')';
            }
        },
        f->node());
}

}  // namespace

std::string to_string(const GF& f) {
    std::ostringstream out;
    print_gf(out, f, 0);
    return out.str();
}

AtomSet atoms_of(const GF& f) {
    AtomSet out;
    const std::function<void(const GF&)> walk = [&](const GF& g) {
        if (const auto* a = std::get_if<GAtomF>(&g->node())) {
            out.insert(a->atom);
        } else if (const auto* b = std::get_if<GBinaryF>(&g->node())) {
            walk(b->left);
            walk(b->right);
        }
    };
    walk(f);
    return out;
}

bool holds(const GF& f, const AtomSet& x) {
    return std::visit(
        [&x](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, GBottom>) {
                return false;
            } else if constexpr (std::is_same_v<T, GAtomF>) {
                return x.count(n.atom) != 0;
            } else {
                const bool l = holds(n.left, x);
                const bool r = holds(n.right, x);
                switch (n.conn) {
                    case Connective::And: return l && r;
                    case Connective::Or: return l || r;
                    case Connective::Implies: return !l || r;
                }
                return false;
            }
        },
        f->node());
}

GF reduct(const GF& f, const AtomSet& x) {
    if (!holds(f, x))
        return g_bottom();
    if (const auto* b = std::get_if<GBinaryF>(&f->node()))
        return std::make_shared<const GroundFormula>(
            GBinaryF{b->conn, reduct(b->left, x), reduct(b->right, x)});
    return f;  // a satisfied atom
}

// ---------------------------------------------------------------------------
// Grounding
// ---------------------------------------------------------------------------

namespace {

bool relation_holds(Relation rel, const Value& a, const Value& b) {
    const auto cmp = a <=> b;
    switch (rel) {
        case Relation::Equal: return cmp == 0;
        case Relation::NotEqual: return cmp != 0;
        case Relation::Less: return cmp < 0;
        case Relation::Greater: return cmp > 0;
        case Relation::LessEqual: return cmp <= 0;
        case Relation::GreaterEqual: return cmp >= 0;
    }
    return false;
}

void insert_value(std::vector<Value>& out, Value v) {
    if (std::find(out.begin(), out.end(), v) == out.end())
        out.push_back(std::move(v));
}

}  // namespace

std::vector<Value> term_values(const ProgramTermPtr& t, const BoundedUniverse& u,
                               const TranslationOptions& options) {
    const auto* bin = std::get_if<BinaryTerm>(&t->node());
    if (!bin) {
        if (std::holds_alternative<ProgramVariable>(t->node()))
            throw std::invalid_argument("term is not ground: " + print_term(t));
        return {value_of_precomputed(t)};
    }
    const auto lefts = term_values(bin->left, u, options);
    const auto rights = term_values(bin->right, u, options);
    std::vector<Value> out;
    for (const auto& l : lefts) {
        if (!l.is_numeral())
            continue;
        for (const auto& r : rights) {
            if (!r.is_numeral())
                continue;
            const std::int64_t i = l.number(), j = r.number();
            switch (bin->op) {
                case BinaryOp::Add:
                    insert_value(out, Value::numeral(i + j));
                    break;
                case BinaryOp::Subtract:
                    insert_value(out, Value::numeral(i - j));
                    break;
                case BinaryOp::Multiply:
                    insert_value(out, Value::numeral(i * j));
                    break;
                case BinaryOp::Divide:
                case BinaryOp::Modulo:
                    // Witness pairs (Q, R) range over the universe's integer
                    // interval, mirroring the translated form under bounded
                    // evaluation.
                    for (std::int64_t q = u.lo; q <= u.hi; ++q)
                        for (std::int64_t r = u.lo; r <= u.hi; ++r) {
                            if (j == 0 || i != j * q + r || r < 0)
                                continue;
                            const bool guard =
                                options.division_guard == DivisionGuard::RemainderLessQuotient
                                    ? r < q
                                    : (r < j || r < -j);
                            if (guard)
                                insert_value(out, Value::numeral(
                                                      bin->op == BinaryOp::Divide ? q : r));
                        }
                    break;
                case BinaryOp::Interval:
                    for (std::int64_t k = std::max(i, u.lo); k <= std::min(j, u.hi); ++k)
                        insert_value(out, Value::numeral(k));
                    break;
            }
        }
    }
    return out;
}

namespace {

ProgramTermPtr substitute_term(const ProgramTermPtr& t,
                               const std::map<std::string, Value>& env) {
    if (const auto* v = std::get_if<ProgramVariable>(&t->node()))
        return term_from_value(env.at(v->name));
    if (const auto* bin = std::get_if<BinaryTerm>(&t->node()))
        return make_term(
            BinaryTerm{bin->op, substitute_term(bin->left, env), substitute_term(bin->right, env)});
    return t;
}

std::vector<std::vector<Value>> cartesian(const std::vector<std::vector<Value>>& sets) {
    std::vector<std::vector<Value>> out{{}};
    for (const auto& set : sets) {
        std::vector<std::vector<Value>> next;
        for (const auto& prefix : out)
            for (const auto& v : set) {
                auto tuple = prefix;
                tuple.push_back(v);
                next.push_back(std::move(tuple));
            }
        out = std::move(next);
    }
    return out;
}

// All argument tuples a ground atom can denote.
std::vector<std::vector<Value>> atom_tuples(const Atom& atom,
                                            const std::map<std::string, Value>& env,
                                            const BoundedUniverse& u,
                                            const TranslationOptions& options) {
    std::vector<std::vector<Value>> per_arg;
    for (const auto& arg : atom.args)
        per_arg.push_back(term_values(substitute_term(arg, env), u, options));
    return cartesian(per_arg);
}

struct GroundInstance {
    GF formula;
    std::vector<GroundAtom> heads;
};

std::vector<GroundInstance> ground_rule(const Rule& rule, const BoundedUniverse& u,
                                        const TranslationOptions& options) {
    const auto names = variable_names(rule);
    const std::vector<std::string> vars(names.begin(), names.end());
    const auto domain = u.values();

    std::vector<GroundInstance> instances;
    std::map<std::string, Value> env;

    const std::function<void(std::size_t)> assign = [&](std::size_t i) {
        if (i < vars.size()) {
            for (const auto& v : domain) {
                env.insert_or_assign(vars[i], v);
                assign(i + 1);
            }
            return;
        }

        std::vector<GF> body_parts;
        for (const auto& element : rule.body) {
            if (const auto* lit = std::get_if<Literal>(&element)) {
                std::vector<GF> cases;
                for (const auto& tuple : atom_tuples(lit->atom, env, u, options)) {
                    GF atom = g_atom({lit->atom.predicate, tuple});
                    if (lit->polarity == Polarity::Negated)
                        atom = g_not(atom);
                    else if (lit->polarity == Polarity::DoublyNegated)
                        atom = g_not(g_not(atom));
                    cases.push_back(std::move(atom));
                }
                body_parts.push_back(g_disjoin(cases));
            } else {
                const auto& cmp = std::get<Comparison>(element);
                const auto lefts = term_values(substitute_term(cmp.left, env), u, options);
                const auto rights = term_values(substitute_term(cmp.right, env), u, options);
                bool satisfied = false;
                for (const auto& l : lefts)
                    for (const auto& r : rights)
                        satisfied = satisfied || relation_holds(cmp.rel, l, r);
                body_parts.push_back(satisfied ? g_top() : g_bottom());
            }
        }

        GroundInstance instance;
        GF head = g_bottom();
        if (rule.head.atom) {
            std::vector<GF> parts;
            for (const auto& tuple : atom_tuples(*rule.head.atom, env, u, options)) {
                GroundAtom atom{rule.head.atom->predicate, tuple};
                instance.heads.push_back(atom);
                GF a = g_atom(atom);
                if (rule.head.kind == Head::Kind::Choice)
                    a = g_or(a, g_not(a));
                parts.push_back(std::move(a));
            }
            head = g_conjoin(parts);
        }
        instance.formula = g_implies(g_conjoin(body_parts), std::move(head));
        instances.push_back(std::move(instance));
    };
    assign(0);
    return instances;
}

std::vector<GroundInstance> ground_program(const Program& p, const BoundedUniverse& u,
                                           const TranslationOptions& options) {
    std::vector<GroundInstance> out;
    for (const auto& rule : p.rules) {
        auto instances = ground_rule(rule, u, options);
        out.insert(out.end(), std::make_move_iterator(instances.begin()),
                   std::make_move_iterator(instances.end()));
    }
    return out;
}

// Atoms outside the base become #false; truth constants fold away.
GF restrict_to_base(const GF& f, const AtomSet& base) {
    return std::visit(
        [&](const auto& n) -> GF {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, GBottom>) {
                return f;
            } else if constexpr (std::is_same_v<T, GAtomF>) {
                return base.count(n.atom) ? f : g_bottom();
            } else {
                GF l = restrict_to_base(n.left, base);
                GF r = restrict_to_base(n.right, base);
                switch (n.conn) {
                    case Connective::And:
                        if (is_gbottom(l) || is_gbottom(r))
                            return g_bottom();
                        if (is_gtop(l))
                            return r;
                        if (is_gtop(r))
                            return l;
                        return g_and(std::move(l), std::move(r));
                    case Connective::Or:
                        if (is_gtop(l) || is_gtop(r))
                            return g_top();
                        if (is_gbottom(l))
                            return r;
                        if (is_gbottom(r))
                            return l;
                        return g_or(std::move(l), std::move(r));
                    case Connective::Implies:
                        if (is_gbottom(l) || is_gtop(r))
                            return g_top();
                        if (is_gtop(l))
                            return r;
                        return g_implies(std::move(l), std::move(r));
                }
                return f;
            }
        },
        f->node());
}

}  // namespace

std::vector<GroundAtom> candidate_atoms(const Program& p, const BoundedUniverse& u,
                                        const TranslationOptions& options) {
    std::vector<GroundAtom> out;
    for (const auto& instance : ground_program(p, u, options))
        for (const auto& a : instance.heads)
            if (std::find(out.begin(), out.end(), a) == out.end())
                out.push_back(a);
    return out;
}

std::vector<GF> tau_ground(const Program& p, const BoundedUniverse& u,
                           const TranslationOptions& options) {
    std::vector<GF> out;
    for (const auto& instance : ground_program(p, u, options))
        out.push_back(instance.formula);
    return out;
}

// ---------------------------------------------------------------------------
// Stable models
// ---------------------------------------------------------------------------

std::set<AtomSet> stable_models_of_theory(const std::vector<GF>& theory,
                                          const std::vector<GroundAtom>& base,
                                          const OracleLimits& limits) {
    std::vector<GroundAtom> atoms;
    for (const auto& a : base)
        if (std::find(atoms.begin(), atoms.end(), a) == atoms.end())
            atoms.push_back(a);
    if (atoms.size() > limits.max_base_atoms)
        throw std::length_error("candidate atom base exceeds the enumeration cap (" +
                                std::to_string(atoms.size()) + " atoms)");

    const AtomSet base_set(atoms.begin(), atoms.end());
    std::vector<GF> restricted;
    for (const auto& f : theory) {
        GF g = restrict_to_base(f, base_set);
        if (!is_gtop(g))
            restricted.push_back(std::move(g));
    }

    const auto set_of = [&atoms](std::uint64_t mask) {
        AtomSet x;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (mask & (std::uint64_t{1} << i))
                x.insert(atoms[i]);
        return x;
    };
    const auto satisfies_all = [](const std::vector<GF>& fs, const AtomSet& x) {
        for (const auto& f : fs)
            if (!holds(f, x))
                return false;
        return true;
    };

    std::set<AtomSet> models;
    const std::uint64_t limit = std::uint64_t{1} << atoms.size();
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        const AtomSet x = set_of(mask);
        if (!satisfies_all(restricted, x))
            continue;
        std::vector<GF> reducts;
        reducts.reserve(restricted.size());
        for (const auto& f : restricted)
            reducts.push_back(reduct(f, x));
        bool minimal = true;
        if (mask != 0) {
            for (std::uint64_t sub = (mask - 1) & mask; minimal; sub = (sub - 1) & mask) {
                if (satisfies_all(reducts, set_of(sub)))
                    minimal = false;
                if (sub == 0)
                    break;
            }
        }
        if (minimal)
            models.insert(x);
    }
    return models;
}

std::set<AtomSet> stable_models(const Program& p, const BoundedUniverse& u,
                                const OracleLimits& limits, const TranslationOptions& options) {
    const auto instances = ground_program(p, u, options);
    std::vector<GF> theory;
    std::vector<GroundAtom> base;
    for (const auto& instance : instances) {
        theory.push_back(instance.formula);
        base.insert(base.end(), instance.heads.begin(), instance.heads.end());
    }
    return stable_models_of_theory(theory, base, limits);
}

// ---------------------------------------------------------------------------
// Inputs and io-models
// ---------------------------------------------------------------------------

namespace {

ProgramTermPtr replace_placeholders(const ProgramTermPtr& t, const IOProgram& io,
                                    const Input& input) {
    if (const auto* c = std::get_if<SymbolicConstant>(&t->node())) {
        if (io.placeholders.count(c->name))
            return term_from_value(input.valuation.at(c->name));
        return t;
    }
    if (const auto* bin = std::get_if<BinaryTerm>(&t->node()))
        return make_term(BinaryTerm{bin->op, replace_placeholders(bin->left, io, input),
                                    replace_placeholders(bin->right, io, input)});
    return t;
}

Atom replace_placeholders(const Atom& a, const IOProgram& io, const Input& input) {
    Atom out{a.predicate, {}};
    for (const auto& arg : a.args)
        out.args.push_back(replace_placeholders(arg, io, input));
    return out;
}

}  // namespace

Program instantiate(const IOProgram& io, const Input& input) {
    for (const auto& ph : io.placeholders)
        if (!input.valuation.count(ph))
            throw std::invalid_argument("no value for placeholder " + ph);

    Program out;
    for (const auto& rule : io.rules.rules) {
        Rule r;
        r.head.kind = rule.head.kind;
        if (rule.head.atom)
            r.head.atom = replace_placeholders(*rule.head.atom, io, input);
        for (const auto& element : rule.body) {
            if (const auto* lit = std::get_if<Literal>(&element))
                r.body.push_back(
                    Literal{replace_placeholders(lit->atom, io, input), lit->polarity});
            else {
                const auto& cmp = std::get<Comparison>(element);
                r.body.push_back(Comparison{replace_placeholders(cmp.left, io, input), cmp.rel,
                                            replace_placeholders(cmp.right, io, input)});
            }
        }
        out.rules.push_back(std::move(r));
    }
    for (const auto& atom : input.atoms) {
        if (!io.is_input(atom.symbol()))
            throw std::invalid_argument("input atom over non-input symbol " +
                                        atom.symbol().to_string());
        Atom fact{atom.predicate, {}};
        for (const auto& v : atom.args)
            fact.args.push_back(term_from_value(v));
        out.rules.push_back(Rule{Head::basic(std::move(fact)), {}});
    }
    return out;
}

std::set<AtomSet> io_models(const IOProgram& io, const Input& input, const BoundedUniverse& u,
                            const OracleLimits& limits, const TranslationOptions& options) {
    std::set<AtomSet> out;
    for (const auto& model : stable_models(instantiate(io, input), u, limits, options)) {
        AtomSet projected;
        for (const auto& atom : model)
            if (io.is_public(atom.symbol()))
                projected.insert(atom);
        out.insert(std::move(projected));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bounded evaluation
// ---------------------------------------------------------------------------

namespace {

using Relations = std::map<std::string, std::set<std::vector<Value>>>;
using Environment = std::map<FOVariable, Value>;

Value eval_term(const FOTermPtr& t, const Environment& env,
                const std::map<std::string, Value>& valuation) {
    return std::visit(
        [&](const auto& n) -> Value {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ValueTerm>) {
                if (n.value.is_symbol()) {
                    auto it = valuation.find(n.value.name());
                    if (it != valuation.end())
                        return it->second;
                }
                return n.value;
            } else if constexpr (std::is_same_v<T, VariableTerm>) {
                auto it = env.find(n.var);
                if (it == env.end())
                    throw std::invalid_argument("unbound variable " + n.var.name);
                return it->second;
            } else {
                const Value l = eval_term(n.left, env, valuation);
                const Value r = eval_term(n.right, env, valuation);
                if (!l.is_numeral() || !r.is_numeral())
                    throw std::invalid_argument("arithmetic on non-numerals: " +
                                                vera::to_string(t));
                switch (n.op) {
                    case ArithOp::Add: return Value::numeral(l.number() + r.number());
                    case ArithOp::Subtract: return Value::numeral(l.number() - r.number());
                    case ArithOp::Multiply: return Value::numeral(l.number() * r.number());
                }
                throw std::logic_error("unreachable");
            }
        },
        t->node());
}

std::vector<Value> domain_for(Sort sort, const BoundedUniverse& u) {
    if (sort == Sort::Integer) {
        std::vector<Value> out;
        for (const auto n : u.integers())
            out.push_back(Value::numeral(n));
        return out;
    }
    return u.values();
}

bool eval_fo(const FormulaPtr& f, const BoundedInterpretation& m, const Relations& rels,
             Environment& env) {
    return std::visit(
        [&](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, BottomF>) {
                return false;
            } else if constexpr (std::is_same_v<T, AtomFormula>) {
                std::vector<Value> args;
                for (const auto& arg : n.args)
                    args.push_back(eval_term(arg, env, m.valuation));
                if (n.pred.is_variable) {
                    auto it = rels.find(n.pred.name);
                    if (it == rels.end())
                        throw std::invalid_argument("unbound predicate variable " + n.pred.name);
                    return it->second.count(args) != 0;
                }
                return m.atoms.count(GroundAtom{n.pred.name, std::move(args)}) != 0;
            } else if constexpr (std::is_same_v<T, CompareFormula>) {
                return relation_holds(n.rel, eval_term(n.left, env, m.valuation),
                                      eval_term(n.right, env, m.valuation));
            } else if constexpr (std::is_same_v<T, BinaryFormula>) {
                switch (n.conn) {
                    case Connective::And:
                        return eval_fo(n.left, m, rels, env) && eval_fo(n.right, m, rels, env);
                    case Connective::Or:
                        return eval_fo(n.left, m, rels, env) || eval_fo(n.right, m, rels, env);
                    case Connective::Implies:
                        return !eval_fo(n.left, m, rels, env) || eval_fo(n.right, m, rels, env);
                }
                return false;
            } else {
                const auto saved = env.find(n.var) != env.end()
                                       ? std::optional<Value>(env.at(n.var))
                                       : std::nullopt;
                bool result = n.q == Quantifier::ForAll;
                for (const auto& v : domain_for(n.var.sort, m.universe)) {
                    env.insert_or_assign(n.var, v);
                    const bool here = eval_fo(n.body, m, rels, env);
                    if (n.q == Quantifier::ForAll ? !here : here) {
                        result = !result;
                        break;
                    }
                }
                if (saved)
                    env.insert_or_assign(n.var, *saved);
                else
                    env.erase(n.var);
                return result;
            }
        },
        f->node());
}

}  // namespace

bool eval_formula(const FormulaPtr& f, const BoundedInterpretation& m) {
    Environment env;
    return eval_fo(f, m, {}, env);
}

namespace {

// Grounds the matrix of a second-order sentence against a fixed
// interpretation: constant atoms and comparisons fold to truth constants,
// only predicate-variable atoms survive. Connectives and quantifier
// expansions fold eagerly, so relation enumeration afterwards only touches
// the atoms the matrix actually depends on.
GF ground_so(const FormulaPtr& f, const BoundedInterpretation& m, Environment& env) {
    return std::visit(
        [&](const auto& n) -> GF {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, BottomF>) {
                return g_bottom();
            } else if constexpr (std::is_same_v<T, AtomFormula>) {
                std::vector<Value> args;
                for (const auto& arg : n.args)
                    args.push_back(eval_term(arg, env, m.valuation));
                if (n.pred.is_variable)
                    return g_atom({n.pred.name, std::move(args)});
                return m.atoms.count(GroundAtom{n.pred.name, std::move(args)}) ? g_top()
                                                                               : g_bottom();
            } else if constexpr (std::is_same_v<T, CompareFormula>) {
                return relation_holds(n.rel, eval_term(n.left, env, m.valuation),
                                      eval_term(n.right, env, m.valuation))
                           ? g_top()
                           : g_bottom();
            } else if constexpr (std::is_same_v<T, BinaryFormula>) {
                GF l = ground_so(n.left, m, env);
                switch (n.conn) {
                    case Connective::And: {
                        if (is_gbottom(l))
                            return g_bottom();
                        GF r = ground_so(n.right, m, env);
                        if (is_gbottom(r))
                            return g_bottom();
                        if (is_gtop(l))
                            return r;
                        if (is_gtop(r))
                            return l;
                        return g_and(std::move(l), std::move(r));
                    }
                    case Connective::Or: {
                        if (is_gtop(l))
                            return g_top();
                        GF r = ground_so(n.right, m, env);
                        if (is_gtop(r))
                            return g_top();
                        if (is_gbottom(l))
                            return r;
                        if (is_gbottom(r))
                            return l;
                        return g_or(std::move(l), std::move(r));
                    }
                    case Connective::Implies: {
                        if (is_gbottom(l))
                            return g_top();
                        GF r = ground_so(n.right, m, env);
                        if (is_gtop(r))
                            return g_top();
                        if (is_gtop(l))
                            return r;
                        return g_implies(std::move(l), std::move(r));
                    }
                }
                return g_bottom();
            } else {
                const auto saved = env.find(n.var) != env.end()
                                       ? std::optional<Value>(env.at(n.var))
                                       : std::nullopt;
                const bool universal = n.q == Quantifier::ForAll;
                std::vector<GF> parts;
                bool decided = false;
                for (const auto& v : domain_for(n.var.sort, m.universe)) {
                    env.insert_or_assign(n.var, v);
                    GF part = ground_so(n.body, m, env);
                    if (universal ? is_gbottom(part) : is_gtop(part)) {
                        decided = true;
                        break;
                    }
                    if (universal ? !is_gtop(part) : !is_gbottom(part))
                        parts.push_back(std::move(part));
                }
                if (saved)
                    env.insert_or_assign(n.var, *saved);
                else
                    env.erase(n.var);
                if (decided)
                    return universal ? g_bottom() : g_top();
                return universal ? g_conjoin(parts) : g_disjoin(parts);
            }
        },
        f->node());
}

}  // namespace

bool eval_second_order(const SecondOrderSentence& s, const BoundedInterpretation& m,
                       const OracleLimits& limits) {
    std::set<std::string> bound;
    for (const auto& pv : s.predicate_vars)
        bound.insert(pv.name);
    for (const auto& name : predicate_variables(s.matrix))
        if (!bound.count(name))
            throw std::invalid_argument("unbound predicate variable " + name);

    Environment env;
    const GF matrix = ground_so(s.matrix, m, env);
    std::vector<GroundAtom> atoms;
    for (const auto& a : atoms_of(matrix))
        atoms.push_back(a);
    if (atoms.size() >= 64 ||
        (std::uint64_t{1} << atoms.size()) > limits.max_relation_candidates)
        throw std::length_error("relation enumeration exceeds the candidate cap: " +
                                std::to_string(atoms.size()) + " atoms");

    // Relations only matter on the atoms the folded matrix mentions, so one
    // subset enumeration covers every assignment of the predicate variables.
    const std::uint64_t limit = std::uint64_t{1} << atoms.size();
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        AtomSet x;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (mask & (std::uint64_t{1} << i))
                x.insert(atoms[i]);
        const bool here = holds(matrix, x);
        if (s.q == Quantifier::Exists ? here : !here)
            return s.q == Quantifier::Exists;
    }
    return s.q != Quantifier::Exists;
}

namespace {

GF ground_fo_impl(const FormulaPtr& f, const BoundedUniverse& u,
                  const std::map<std::string, Value>& valuation, Environment& env) {
    return std::visit(
        [&](const auto& n) -> GF {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, BottomF>) {
                return g_bottom();
            } else if constexpr (std::is_same_v<T, AtomFormula>) {
                if (n.pred.is_variable)
                    throw std::invalid_argument("cannot ground predicate variable " +
                                                n.pred.name);
                std::vector<Value> args;
                for (const auto& arg : n.args)
                    args.push_back(eval_term(arg, env, valuation));
                return g_atom({n.pred.name, std::move(args)});
            } else if constexpr (std::is_same_v<T, CompareFormula>) {
                return relation_holds(n.rel, eval_term(n.left, env, valuation),
                                      eval_term(n.right, env, valuation))
                           ? g_top()
                           : g_bottom();
            } else if constexpr (std::is_same_v<T, BinaryFormula>) {
                GF l = ground_fo_impl(n.left, u, valuation, env);
                GF r = ground_fo_impl(n.right, u, valuation, env);
                switch (n.conn) {
                    case Connective::And: return g_and(std::move(l), std::move(r));
                    case Connective::Or: return g_or(std::move(l), std::move(r));
                    case Connective::Implies: return g_implies(std::move(l), std::move(r));
                }
                return g_bottom();
            } else {
                const auto saved = env.find(n.var) != env.end()
                                       ? std::optional<Value>(env.at(n.var))
                                       : std::nullopt;
                std::vector<GF> parts;
                for (const auto& v : domain_for(n.var.sort, u)) {
                    env.insert_or_assign(n.var, v);
                    parts.push_back(ground_fo_impl(n.body, u, valuation, env));
                }
                if (saved)
                    env.insert_or_assign(n.var, *saved);
                else
                    env.erase(n.var);
                return n.q == Quantifier::ForAll ? g_conjoin(parts) : g_disjoin(parts);
            }
        },
        f->node());
}

}  // namespace

GF ground_fo(const FormulaPtr& f, const BoundedUniverse& u,
             const std::map<std::string, Value>& valuation) {
    Environment env;
    return ground_fo_impl(f, u, valuation, env);
}

std::set<AtomSet> completion_models(const IOProgram& io, const SecondOrderSentence& c,
                                    const Input& input, const BoundedUniverse& u,
                                    const OracleLimits& limits) {
    const std::vector<Value> pool = u.values();
    std::vector<GroundAtom> outputs;
    for (const auto& sym : io.outputs) {
        std::vector<std::vector<Value>> tuples{{}};
        for (int i = 0; i < sym.arity; ++i) {
            std::vector<std::vector<Value>> next;
            for (const auto& tuple : tuples)
                for (const auto& v : pool) {
                    next.push_back(tuple);
                    next.back().push_back(v);
                }
            tuples = std::move(next);
        }
        for (auto& tuple : tuples)
            outputs.push_back({sym.name, std::move(tuple)});
    }
    if (outputs.size() > limits.max_base_atoms)
        throw std::length_error("too many candidate output atoms: " +
                                std::to_string(outputs.size()));

    std::set<AtomSet> models;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << outputs.size()); ++mask) {
        AtomSet atoms = input.atoms;
        for (std::size_t i = 0; i < outputs.size(); ++i)
            if (mask & (std::uint64_t{1} << i))
                atoms.insert(outputs[i]);
        BoundedInterpretation m{u, input.valuation, atoms};
        if (eval_second_order(c, m, limits))
            models.insert(std::move(atoms));
    }
    return models;
}

}  // namespace vera
