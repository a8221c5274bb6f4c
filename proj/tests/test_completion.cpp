#include <doctest.h>

#include <vera/completion.hpp>

using namespace vera;

namespace {

IOProgram io_with(const char* text, std::set<PredicateSymbol> inputs,
                  std::set<PredicateSymbol> outputs) {
    IOProgram io;
    io.rules = parse_program(text);
    io.inputs = std::move(inputs);
    io.outputs = std::move(outputs);
    return io;
}

}  // namespace

TEST_CASE("definition_of collects rules in program order") {
    const auto io = IOProgram::from_program(
        parse_program("p(1). q(X) :- p(X). p(2). :- p(3)."));
    const auto defs = definition_of({"p", 1}, io);
    REQUIRE(defs.size() == 2);
    CHECK(print_rule(defs[0]) == "p(1).");
    CHECK(print_rule(defs[1]) == "p(2).");
    CHECK(definition_of({"r", 1}, io).empty());
}

TEST_CASE("formula representation of a fact keeps the explicit #true") {
    const Rule fact = parse_program("p(a).").rules[0];
    FreshVariables fresh;
    const FOVariable v = fresh.fresh("V", Sort::Object);
    CHECK(to_string(formula_representation(fact, {v}, fresh)) == "#true and V1 = a");
}

TEST_CASE("formula representation of a choice rule includes the head atom") {
    const Rule choice = parse_program("{p(1..n)}.").rules[0];
    FreshVariables fresh;
    const FOVariable v = fresh.fresh("V", Sort::Object);
    CHECK(to_string(formula_representation(choice, {v}, fresh)) ==
          "#true and p(V1) and "
          "exists I1, J1, K1 (I1 = 1 and J1 = n and I1 <= K1 and K1 <= J1 and V1 = K1)");
}

TEST_CASE("formula representation rejects constraints and arity mismatches") {
    FreshVariables fresh;
    CHECK_THROWS_AS(
        formula_representation(parse_program(":- p(X).").rules[0], {}, fresh),
        std::invalid_argument);
    CHECK_THROWS_AS(
        formula_representation(parse_program("p(a).").rules[0], {}, fresh),
        std::invalid_argument);
}

TEST_CASE("completed definition quantifies the rule variables") {
    const auto io = io_with("q(X) :- p(I), s(X, I).", {{"p", 1}, {"s", 2}}, {{"q", 1}});
    CHECK(to_string(completed_definition({"q", 1}, io)) ==
          "forall V1 (q(V1) <-> exists I, X (exists Z1 (Z1 = I and p(Z1)) and "
          "exists Z2, Z3 (Z2 = X and Z3 = I and s(Z2, Z3)) and V1 = X))");
}

TEST_CASE("completed definition of an undefined predicate is bottom") {
    const auto io = io_with("q(X) :- p(X).", {{"p", 1}}, {{"q", 1}, {"u", 2}});
    CHECK(to_string(completed_definition({"u", 2}, io)) ==
          "forall V1, V2 (u(V1, V2) <-> #false)");
    CHECK_THROWS_AS(completed_definition({"p", 1}, io), std::invalid_argument);
}

TEST_CASE("completed definitions substitute predicate variables for privates") {
    const auto io = io_with("t(X) :- h(X). h(X) :- q(X).", {{"q", 1}}, {{"t", 1}});
    const FormulaPtr def = completed_definition({"t", 1}, io);
    CHECK(predicate_variables(def) == std::set<std::string>{"H"});
    CHECK_FALSE(predicate_constants(def).count({"h", 1}));
}

TEST_CASE("head variables avoid clashing with rule variables") {
    const auto io = io_with("p(V1) :- q(V1).", {{"q", 1}}, {{"p", 1}});
    const std::string text = to_string(completed_definition({"p", 1}, io));
    CHECK(text.find("forall V2 (p(V2)") == 0);
    CHECK(text.find("exists V1 ") != std::string::npos);
}

TEST_CASE("constraint representation is the closed negated body") {
    const auto io = io_with(":- p(X), not h(X). h(X) :- p(X).", {{"p", 1}}, {});
    const FormulaPtr f = constraint_representation(io.rules.rules[0], io);
    CHECK(to_string(f) ==
          "forall X (not (exists Z1 (Z1 = X and p(Z1)) and "
          "exists Z2 (Z2 = X and not H(Z2))))");
    CHECK_THROWS_AS(constraint_representation(io.rules.rules[1], io), std::invalid_argument);
}

TEST_CASE("comp binds the private predicates existentially") {
    const auto io = io_with("t(X) :- h(X). h(X) :- q(X). :- t(a), h(a).",
                            {{"q", 1}}, {{"t", 1}});
    const SecondOrderSentence sentence = comp(io);
    CHECK(sentence.q == Quantifier::Exists);
    REQUIRE(sentence.predicate_vars.size() == 1);
    CHECK(sentence.predicate_vars[0].name == "H");
    CHECK(sentence.predicate_vars[0].is_variable);
    // No private constants remain.
    CHECK_FALSE(predicate_constants(sentence.matrix).count({"h", 1}));
    CHECK(predicate_variables(sentence.matrix) == std::set<std::string>{"H"});
    // Definitions (t then h), then the constraint.
    const std::string text = to_string(sentence);
    CHECK(text.find("t(V1)") < text.find("H(V1)"));
    CHECK(text.find("H(V1)") < text.find("not (exists"));
}

TEST_CASE("comp with no private symbols has an empty prefix") {
    const auto io = io_with("t(X) :- q(X).", {{"q", 1}}, {{"t", 1}});
    const SecondOrderSentence sentence = comp(io);
    CHECK(sentence.predicate_vars.empty());
    CHECK(to_string(sentence) ==
          "forall V1 (t(V1) <-> exists X (exists Z1 (Z1 = X and q(Z1)) and V1 = X))");
}

TEST_CASE("universalize turns the prefix into an implication") {
    const auto io = io_with("t(X) :- h(X). h(X) :- q(X).", {{"q", 1}}, {{"t", 1}});
    const auto parts = completion_parts(io);
    REQUIRE(parts.private_defs.size() == 1);
    CHECK(parts.private_defs[0].first.name == "H");
    const SecondOrderSentence universal = universalize(comp(io), parts);
    CHECK(universal.q == Quantifier::ForAll);
    const auto& impl = std::get<BinaryFormula>(universal.matrix->node());
    CHECK(impl.conn == Connective::Implies);
    CHECK(alpha_equivalent(impl.left, parts.private_defs[0].second));

    // Private recursion is rejected.
    const auto rec = io_with("h :- h. t :- h.", {}, {{"t", 0}});
    CHECK_THROWS_AS(completion_parts(rec), std::invalid_argument);
}

TEST_CASE("universalize with no privates keeps the matrix") {
    const auto io = io_with("t(X) :- q(X).", {{"q", 1}}, {{"t", 1}});
    const auto parts = completion_parts(io);
    const SecondOrderSentence universal = universalize(comp(io), parts);
    CHECK(universal.predicate_vars.empty());
    CHECK(alpha_equivalent(universal.matrix, parts.public_part));
}

TEST_CASE("build_obligations restores private constants and routes lemmas") {
    const Specification spec = parse_spec(
        "input: q/1.\n"
        "output: t/1.\n"
        "assume: exists X q(X).\n"
        "spec: forall X (t(X) -> q(X)).\n"
        "lemma: #true.\n"
        "lemma(forward): q(a) or not q(a).\n"
        "lemma(backward): not #false.\n");
    const auto io = io_with("t(X) :- h(X). h(X) :- q(X). :- t(b).",
                            spec.inputs, spec.outputs);
    const ProofObligations ob = build_obligations(io, spec);
    CHECK(ob.axioms.empty());
    CHECK(ob.assumptions.size() == 1);
    REQUIRE(ob.completion_hypotheses.size() == 1);
    CHECK(predicate_variables(ob.completion_hypotheses[0]).empty());
    CHECK(predicate_constants(ob.completion_hypotheses[0]).count({"h", 1}));
    REQUIRE(ob.public_conjuncts.size() == 2);  // def of t, one constraint
    CHECK(predicate_variables(ob.public_completion).empty());
    CHECK(ob.specs.size() == 1);
    CHECK(ob.lemmas_forward.size() == 2);
    CHECK(ob.lemmas_backward.size() == 2);
}

TEST_CASE("build_obligations rejects non-tight and private-recursive programs") {
    const Specification spec = parse_spec("output: t/0.\n");
    const auto loop = io_with("t :- t.", {}, {{"t", 0}});
    CHECK_THROWS_WITH_AS(build_obligations(loop, spec),
                         doctest::Contains("not tight"), std::invalid_argument);
    const auto rec = io_with("h :- not h2. h2 :- not h. t :- h.", {}, {{"t", 0}});
    CHECK_THROWS_AS(build_obligations(rec, spec), std::invalid_argument);
}
