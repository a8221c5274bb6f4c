#include <doctest.h>

#include <vera/analysis.hpp>

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

TEST_CASE("dependency graph edges and polarity") {
    const auto io = IOProgram::from_program(
        parse_program("p(X) :- q(X), not r(X). :- p(X), s(X)."));
    const auto g = dependency_graph(io);
    CHECK(g.vertices.size() == 4);
    CHECK(g.edges.size() == 2);  // constraints contribute nothing
    CHECK(g.has_edge({"p", 1}, {"q", 1}, true));
    CHECK(g.has_edge({"p", 1}, {"r", 1}, false));
    CHECK_FALSE(g.has_edge({"p", 1}, {"s", 1}, true));
}

TEST_CASE("tightness") {
    CHECK(is_tight(IOProgram::from_program(parse_program("p(X) :- q(X). q(X) :- not p(X)."))));
    CHECK_FALSE(is_tight(IOProgram::from_program(parse_program("p(X) :- q(X). q(X) :- p(X)."))));
    // Self-loop.
    const auto self = IOProgram::from_program(parse_program("p(X) :- p(X)."));
    CHECK_FALSE(is_tight(self));
    CHECK(find_positive_cycle(self) == std::vector<PredicateSymbol>{{"p", 1}});
    // Negative cycles do not break tightness.
    CHECK(is_tight(IOProgram::from_program(parse_program("p :- not p."))));
}

TEST_CASE("private recursion detection") {
    // p and q private, mutually recursive.
    auto io = io_with("p(X) :- q(X). q(X) :- p(X). r(X) :- p(X).", {}, {{"r", 1}});
    CHECK(uses_private_recursion(io));
    // Same cycle but q public: no private recursion.
    io.outputs.insert({"q", 1});
    CHECK_FALSE(uses_private_recursion(io));
    // A private choice rule counts as private recursion.
    const auto choice = io_with("{p(X)} :- q(X). r(X) :- p(X).", {{"q", 1}}, {{"r", 1}});
    CHECK(uses_private_recursion(choice));
    // Negative private cycles count too.
    const auto neg = io_with("p :- not q. q :- not p. r :- p.", {}, {{"r", 0}});
    CHECK(uses_private_recursion(neg));
}

TEST_CASE("topological private order") {
    // r depends on s; both private. s must come first.
    const auto io = io_with("r(X) :- s(X). s(X) :- q(X). out(X) :- r(X).",
                            {{"q", 1}}, {{"out", 1}});
    const auto order = topological_private_order(io);
    REQUIRE(order.size() == 2);
    CHECK(order[0] == PredicateSymbol{"s", 1});
    CHECK(order[1] == PredicateSymbol{"r", 1});

    // Independent privates keep first-occurrence order.
    const auto flat = io_with("a(X) :- q(X). b(X) :- q(X). out(X) :- a(X), b(X).",
                              {{"q", 1}}, {{"out", 1}});
    const auto flat_order = topological_private_order(flat);
    REQUIRE(flat_order.size() == 2);
    CHECK(flat_order[0].name == "a");
    CHECK(flat_order[1].name == "b");

    const auto rec = io_with("p :- p. out :- p.", {}, {{"out", 0}});
    CHECK_THROWS_AS(topological_private_order(rec), std::invalid_argument);
}

TEST_CASE("io-program validation") {
    auto io = io_with("p(X) :- q(X).", {{"p", 1}}, {});
    CHECK_THROWS_AS(io.validate(), std::invalid_argument);
    auto both = io_with("p(X) :- q(X).", {{"q", 1}}, {{"q", 1}});
    CHECK_THROWS_AS(both.validate(), std::invalid_argument);
    auto ok = io_with("p(X) :- q(X).", {{"q", 1}}, {{"p", 1}});
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.private_symbols().empty());
}

TEST_CASE("dot output lists vertices and edges") {
    const auto io = IOProgram::from_program(parse_program("p :- not q."));
    const auto dot = to_dot(dependency_graph(io));
    CHECK(dot.find("\"p/0\" -> \"q/0\" [style=dashed, label=\"not\"]") != std::string::npos);
}
