#include "vera/analysis.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace vera {

void IOProgram::validate() const {
    for (const auto& rule : rules.rules)
        if (rule.head.atom && is_input(rule.head.atom->symbol()))
            throw std::invalid_argument("input symbol " + rule.head.atom->symbol().to_string() +
                                        " occurs in a rule head");
    for (const auto& in : inputs)
        if (outputs.count(in))
            throw std::invalid_argument("predicate " + in.to_string() +
                                        " declared both input and output");
}

IOProgram IOProgram::from_program(Program p) {
    IOProgram io;
    for (const auto& sym : occurring_predicates(p))
        io.outputs.insert(sym);
    io.rules = std::move(p);
    return io;
}

bool DependencyGraph::has_edge(const PredicateSymbol& from, const PredicateSymbol& to,
                               bool positive) const {
    return std::find(edges.begin(), edges.end(), DependencyEdge{from, to, positive}) !=
           edges.end();
}

DependencyGraph dependency_graph(const IOProgram& io) {
    DependencyGraph graph;
    graph.vertices = occurring_predicates(io.rules);

    auto add_edge = [&graph](PredicateSymbol from, PredicateSymbol to, bool positive) {
        const DependencyEdge edge{std::move(from), std::move(to), positive};
        if (std::find(graph.edges.begin(), graph.edges.end(), edge) == graph.edges.end())
            graph.edges.push_back(edge);
    };

    for (const auto& rule : io.rules.rules) {
        if (!rule.head.atom)
            continue;  // constraints contribute no edges
        const auto head = rule.head.atom->symbol();
        for (const auto& element : rule.body) {
            const auto* lit = std::get_if<Literal>(&element);
            if (!lit)
                continue;
            add_edge(head, lit->atom.symbol(), lit->polarity == Polarity::Positive);
        }
    }
    return graph;
}

namespace {

// Cycle search restricted to edges accepted by the filter; returns the cycle
// vertices if one exists.
std::vector<PredicateSymbol> find_cycle(
    const DependencyGraph& graph,
    const std::function<bool(const DependencyEdge&)>& edge_filter) {
    enum class Mark { Unvisited, InProgress, Done };
    std::map<PredicateSymbol, Mark> marks;
    for (const auto& v : graph.vertices)
        marks[v] = Mark::Unvisited;

    std::vector<PredicateSymbol> stack;
    std::vector<PredicateSymbol> cycle;

    std::function<bool(const PredicateSymbol&)> visit = [&](const PredicateSymbol& v) -> bool {
        marks[v] = Mark::InProgress;
        stack.push_back(v);
        for (const auto& edge : graph.edges) {
            if (!(edge.from == v) || !edge_filter(edge))
                continue;
            if (marks[edge.to] == Mark::InProgress) {
                auto it = std::find(stack.begin(), stack.end(), edge.to);
                cycle.assign(it, stack.end());
                return true;
            }
            if (marks[edge.to] == Mark::Unvisited && visit(edge.to))
                return true;
        }
        stack.pop_back();
        marks[v] = Mark::Done;
        return false;
    };

    for (const auto& v : graph.vertices)
        if (marks[v] == Mark::Unvisited && visit(v))
            return cycle;
    return {};
}

}  // namespace

std::vector<PredicateSymbol> find_positive_cycle(const IOProgram& io) {
    return find_cycle(dependency_graph(io), [](const DependencyEdge& e) { return e.positive; });
}

bool is_tight(const IOProgram& io) { return find_positive_cycle(io).empty(); }

bool uses_private_recursion(const IOProgram& io) {
    for (const auto& rule : io.rules.rules)
        if (rule.head.kind == Head::Kind::Choice && !io.is_public(rule.head.atom->symbol()))
            return true;
    const auto graph = dependency_graph(io);
    const auto cycle = find_cycle(graph, [&io](const DependencyEdge& e) {
        return !io.is_public(e.from) && !io.is_public(e.to);
    });
    return !cycle.empty();
}

std::vector<PredicateSymbol> topological_private_order(const IOProgram& io) {
    if (uses_private_recursion(io))
        throw std::invalid_argument("program uses private recursion");

    const auto graph = dependency_graph(io);
    const auto privates = io.private_symbols();

    // Kahn's algorithm over private-to-private edges, preferring first
    // textual occurrence among the ready symbols.
    std::vector<PredicateSymbol> order;
    std::vector<PredicateSymbol> remaining = privates;
    while (!remaining.empty()) {
        bool progressed = false;
        for (auto it = remaining.begin(); it != remaining.end(); ++it) {
            const bool ready = std::none_of(
                graph.edges.begin(), graph.edges.end(), [&](const DependencyEdge& e) {
                    return e.from == *it &&
                           std::find(remaining.begin(), remaining.end(), e.to) !=
                               remaining.end() &&
                           !(e.to == *it);
                });
            if (ready) {
                order.push_back(*it);
                remaining.erase(it);
                progressed = true;
                break;
            }
        }
        if (!progressed)
            throw std::logic_error("private dependency order not found");
    }
    return order;
}

std::string to_dot(const DependencyGraph& g) {
    std::ostringstream out;
    out << "digraph dependencies {\n";
    for (const auto& v : g.vertices)
        out << "  \"" << v.to_string() << "\";\n";
    for (const auto& e : g.edges) {
        out << "  \"" << e.from.to_string() << "\" -> \"" << e.to.to_string() << "\"";
        if (!e.positive)
            out << " [style=dashed, label=\"not\"]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace vera
