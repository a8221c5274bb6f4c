#pragma once

// Predicate dependency graph, tightness, and private-recursion detection.

#include <string>
#include <vector>

#include "vera/io_program.hpp"

namespace vera {

struct DependencyEdge {
    PredicateSymbol from;
    PredicateSymbol to;
    bool positive = false;

    friend bool operator==(const DependencyEdge&, const DependencyEdge&) = default;
};

struct DependencyGraph {
    std::vector<PredicateSymbol> vertices;  // first-occurrence order
    std::vector<DependencyEdge> edges;

    bool has_edge(const PredicateSymbol& from, const PredicateSymbol& to, bool positive) const;
};

DependencyGraph dependency_graph(const IOProgram& io);

// True iff the positive-edge subgraph is acyclic.
bool is_tight(const IOProgram& io);

// True iff there is an all-private dependency cycle or a choice rule with a
// private head predicate.
bool uses_private_recursion(const IOProgram& io);

// Private symbols ordered so that each one depends only on public symbols and
// earlier private symbols. Ties broken by first occurrence. Throws
// std::invalid_argument if the program uses private recursion.
std::vector<PredicateSymbol> topological_private_order(const IOProgram& io);

// Positive cycle of the dependency graph, for diagnostics; empty if tight.
std::vector<PredicateSymbol> find_positive_cycle(const IOProgram& io);

std::string to_dot(const DependencyGraph& g);

}  // namespace vera
