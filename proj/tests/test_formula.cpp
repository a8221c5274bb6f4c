#include <doctest.h>

#include <vera/formula.hpp>

using namespace vera;

namespace {

const FOVariable X{"X", Sort::Object};
const FOVariable Y{"Y", Sort::Object};
const FOVariable N{"N", Sort::Integer};

FormulaPtr p_of(const FOVariable& v) {
    return f_atom(PredicateRef::constant({"p", 1}), {mk_variable(v)});
}

}  // namespace

TEST_CASE("printing connectives and precedence") {
    const FormulaPtr p = p_of(X);
    const FormulaPtr q = f_atom(PredicateRef::constant({"q", 0}), {});
    CHECK(to_string(f_and(p, f_or(q, p))) == "p(X) and (q or p(X))");
    CHECK(to_string(f_or(f_and(p, q), p)) == "p(X) and q or p(X)");
    CHECK(to_string(f_implies(p, f_implies(q, p))) == "p(X) -> q -> p(X)");
    CHECK(to_string(f_implies(f_implies(p, q), p)) == "(p(X) -> q) -> p(X)");
    CHECK(to_string(f_not(f_and(p, q))) == "not (p(X) and q)");
    CHECK(to_string(f_not(f_not(q))) == "not not q");
    CHECK(to_string(f_iff(p, q)) == "p(X) <-> q");
    CHECK(to_string(f_top()) == "#true");
    CHECK(to_string(f_bottom()) == "#false");
}

TEST_CASE("printing quantifiers merges runs") {
    const FormulaPtr f = f_forall({X, Y}, f_exists(N, f_and(p_of(X), p_of(Y))));
    CHECK(to_string(f) == "forall X, Y exists N (p(X) and p(Y))");
    CHECK(to_string(f_forall(X, p_of(X))) == "forall X p(X)");
}

TEST_CASE("printing arithmetic") {
    const FOTermPtr t = mk_arith(ArithOp::Multiply,
                                 mk_arith(ArithOp::Add, mk_variable(N), mk_numeral(1)),
                                 mk_arith(ArithOp::Add, mk_variable(N), mk_numeral(1)));
    CHECK(to_string(t) == "(N + 1) * (N + 1)");
    CHECK(to_string(mk_arith(ArithOp::Subtract, mk_variable(N),
                             mk_arith(ArithOp::Subtract, mk_variable(N), mk_numeral(1)))) ==
          "N - (N - 1)");
}

TEST_CASE("free variables in first-occurrence order") {
    const FormulaPtr f = f_and(p_of(Y), f_exists(X, f_and(p_of(X), p_of(N))));
    const auto vars = free_variables_ordered(f);
    REQUIRE(vars.size() == 2);
    CHECK(vars[0] == Y);
    CHECK(vars[1] == N);
}

TEST_CASE("substitution avoids capture") {
    // In exists Y p(X), replacing X by Y must rename the bound Y.
    const FormulaPtr f = f_exists(Y, f_and(p_of(X), p_of(Y)));
    const FormulaPtr g = substitute(f, {{X, mk_variable(Y)}});
    const auto& q = std::get<QuantifiedFormula>(g->node());
    CHECK(q.var.name != "Y");
    const auto free = free_variables(g);
    REQUIRE(free.size() == 1);
    CHECK(free.begin()->name == "Y");
}

TEST_CASE("substitution respects shadowing") {
    const FormulaPtr f = f_and(p_of(X), f_exists(X, p_of(X)));
    const FormulaPtr g = substitute(f, {{X, mk_numeral(5)}});
    CHECK(to_string(g) == "p(5) and exists X p(X)");
}

TEST_CASE("integer variables only accept integer terms") {
    const FormulaPtr f = p_of(N);
    CHECK_THROWS_AS(substitute(f, {{N, mk_symbol("a")}}), SortError);
    CHECK_NOTHROW(substitute(f, {{N, mk_numeral(2)}}));
    SortContext ctx;
    ctx.integer_constants.insert("n");
    CHECK_NOTHROW(substitute(f, {{N, mk_symbol("n")}}, ctx));
}

TEST_CASE("predicate substitution") {
    const FormulaPtr f = f_and(p_of(X), f_atom(PredicateRef::constant({"q", 0}), {}));
    const FormulaPtr g =
        substitute_predicates(f, {{{"p", 1}, PredicateRef::variable("P", 1)}});
    CHECK(predicate_variables(g) == std::set<std::string>{"P"});
    CHECK(predicate_constants(g) == std::set<PredicateSymbol>{{"q", 0}});
    CHECK_THROWS_AS(
        substitute_predicates(f, {{{"p", 1}, PredicateRef::variable("P", 2)}}),
        std::invalid_argument);
}

TEST_CASE("alpha equivalence") {
    const FormulaPtr f = f_forall(X, f_exists(Y, f_and(p_of(X), p_of(Y))));
    const FOVariable U{"U", Sort::Object}, W{"W", Sort::Object};
    const FormulaPtr g = f_forall(U, f_exists(W, f_and(p_of(U), p_of(W))));
    CHECK(alpha_equivalent(f, g));
    // Sorts matter.
    const FOVariable M{"M", Sort::Integer};
    CHECK_FALSE(alpha_equivalent(f_forall(X, p_of(X)), f_forall(M, p_of(M))));
    // Free variables must match by name.
    CHECK_FALSE(alpha_equivalent(p_of(X), p_of(Y)));
    // Binding structure matters.
    CHECK_FALSE(alpha_equivalent(f_forall(X, f_forall(Y, f_and(p_of(X), p_of(Y)))),
                                 f_forall(X, f_forall(Y, f_and(p_of(Y), p_of(X))))));
}

TEST_CASE("second-order alpha equivalence") {
    const auto atom = [](const char* name) {
        return f_atom(PredicateRef::variable(name, 1), {mk_variable(X)});
    };
    SecondOrderSentence a{Quantifier::Exists, {PredicateRef::variable("P", 1)},
                          f_forall(X, atom("P"))};
    SecondOrderSentence b{Quantifier::Exists, {PredicateRef::variable("Q", 1)},
                          f_forall(X, atom("Q"))};
    CHECK(alpha_equivalent(a, b));
    SecondOrderSentence c{Quantifier::ForAll, {PredicateRef::variable("P", 1)},
                          f_forall(X, atom("P"))};
    CHECK_FALSE(alpha_equivalent(a, c));
}

TEST_CASE("iff recognition excludes negations") {
    const FormulaPtr p = p_of(X);
    const FormulaPtr q = f_atom(PredicateRef::constant({"q", 0}), {});
    CHECK(iff_operands(f_iff(p, q)).first != nullptr);
    // not p and not q is an And of two implications to bottom, not an iff.
    CHECK(iff_operands(f_and(f_not(p), f_not(p))).first == nullptr);
    CHECK(to_string(f_and(f_not(p), f_not(q))) == "not p(X) and not q");
}
