#include <doctest.h>

#include <vera/translate.hpp>

using namespace vera;

namespace {

ProgramTermPtr head_arg(const char* text) {
    return parse_program(text).rules[0].head.atom->args[0];
}

}  // namespace

TEST_CASE("value formulas for simple terms") {
    FreshVariables fresh;
    const FOVariable z{"Z", Sort::Object};
    CHECK(to_string(val_formula(head_arg("p(3)."), z, fresh)) == "Z = 3");
    CHECK(to_string(val_formula(head_arg("p(a)."), z, fresh)) == "Z = a");
    CHECK(to_string(val_formula(head_arg("p(X)."), z, fresh)) == "Z = X");
    CHECK(to_string(val_formula(head_arg("p(#inf)."), z, fresh)) == "Z = #inf");
}

TEST_CASE("value formula for addition") {
    FreshVariables fresh;
    const FOVariable z{"Z", Sort::Object};
    CHECK(to_string(val_formula(head_arg("p(X + 1)."), z, fresh)) ==
          "exists I1, J1 (Z = I1 + J1 and I1 = X and J1 = 1)");
}

TEST_CASE("value formula for intervals") {
    FreshVariables fresh;
    const FOVariable v{"V", Sort::Object};
    CHECK(to_string(val_formula(head_arg("p(1..n)."), v, fresh)) ==
          "exists I1, J1, K1 (I1 = 1 and J1 = n and I1 <= K1 and K1 <= J1 and V = K1)");
}

TEST_CASE("value formula for division") {
    FreshVariables fresh;
    const FOVariable z{"Z", Sort::Object};
    CHECK(to_string(val_formula(head_arg("p(X / 2)."), z, fresh)) ==
          "exists I1, J1, Q1, R1 (I1 = J1 * Q1 + R1 and I1 = X and J1 = 2 and J1 != 0 and "
          "R1 >= 0 and R1 < Q1 and Z = Q1)");

    FreshVariables fresh2;
    TranslationOptions divisor;
    divisor.division_guard = DivisionGuard::RemainderLessDivisor;
    CHECK(to_string(val_formula(head_arg("p(X \\ 2)."), z, fresh2, divisor)) ==
          "exists I1, J1, Q1, R1 (I1 = J1 * Q1 + R1 and I1 = X and J1 = 2 and J1 != 0 and "
          "R1 >= 0 and (R1 < J1 or R1 < 0 - J1) and Z = R1)");
}

TEST_CASE("rule translations") {
    const auto one = [](const char* text) {
        return to_string(tau_star_rule(parse_program(text).rules[0]));
    };
    CHECK(one("q(X) :- p(X).") ==
          "forall X (exists Z1 (Z1 = X and p(Z1)) -> forall Z2 (Z2 = X -> q(Z2)))");
    CHECK(one("{p(X)} :- q(X).") ==
          "forall X (exists Z1 (Z1 = X and q(Z1)) -> "
          "forall Z2 (Z2 = X -> p(Z2) or not p(Z2)))");
    CHECK(one(":- p(X).") == "forall X (not exists Z1 (Z1 = X and p(Z1)))");
    CHECK(one("p(a).") == "#true -> forall Z1 (Z1 = a -> p(Z1))");
    CHECK(one("q :- 1 < X.") ==
          "forall X (exists Z1, Z2 (Z1 = 1 and Z2 = X and Z1 < Z2) -> q)");
    CHECK(one("q(X) :- not p(X).") ==
          "forall X (exists Z1 (Z1 = X and not p(Z1)) -> forall Z2 (Z2 = X -> q(Z2)))");
}

TEST_CASE("fresh variables never clash with rule variables") {
    const Rule rule = parse_program("p(Z1) :- q(Z1, I1).").rules[0];
    const FormulaPtr f = tau_star_rule(rule);
    // The closed sentence keeps Z1/I1 as the outer universal variables; the
    // generated witnesses must pick later numbers.
    const std::string text = to_string(f);
    CHECK(text.substr(0, 13) == "forall Z1, I1");
    CHECK(text.find("Z2 = Z1") != std::string::npos);
}

TEST_CASE("program translation is per rule in order") {
    const Program p = parse_program("a. b :- a.");
    const auto sentences = tau_star(p);
    REQUIRE(sentences.size() == 2);
    CHECK(to_string(sentences[0]) == "#true -> a");
    CHECK(to_string(sentences[1]) == "a -> b");
    CHECK(is_top(std::get<BinaryFormula>(sentences[0]->node()).left));
}
