#pragma once

// AST and parser for the supported gringo subset: basic rules, choice rules,
// and constraints over arithmetic terms and intervals.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vera {

// A precomputed term as a plain value, carrying the total order
// #inf < numerals < symbolic constants (lexicographic) < #sup.
class Value {
public:
    enum class Kind { Infimum, Numeral, Symbol, Supremum };

    static Value infimum() { return Value(Kind::Infimum, 0, {}); }
    static Value numeral(std::int64_t n) { return Value(Kind::Numeral, n, {}); }
    static Value symbol(std::string name) { return Value(Kind::Symbol, 0, std::move(name)); }
    static Value supremum() { return Value(Kind::Supremum, 0, {}); }

    Kind kind() const { return kind_; }
    bool is_numeral() const { return kind_ == Kind::Numeral; }
    bool is_symbol() const { return kind_ == Kind::Symbol; }
    std::int64_t number() const { return number_; }
    const std::string& name() const { return name_; }

    friend bool operator==(const Value&, const Value&) = default;
    friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
        if (a.kind_ != b.kind_)
            return rank(a.kind_) <=> rank(b.kind_);
        if (a.kind_ == Kind::Numeral)
            return a.number_ <=> b.number_;
        if (a.kind_ == Kind::Symbol)
            return a.name_ <=> b.name_;
        return std::strong_ordering::equal;
    }

    std::string to_string() const;

private:
    Value(Kind k, std::int64_t n, std::string s)
        : kind_(k), number_(n), name_(std::move(s)) {}

    static int rank(Kind k) { return static_cast<int>(k); }

    Kind kind_;
    std::int64_t number_;
    std::string name_;
};

enum class BinaryOp { Add, Subtract, Multiply, Divide, Modulo, Interval };
enum class Relation { Equal, NotEqual, Less, Greater, LessEqual, GreaterEqual };

std::string to_string(BinaryOp op);
std::string to_string(Relation rel);

class ProgramTerm;
using ProgramTermPtr = std::shared_ptr<const ProgramTerm>;

struct Numeral {
    std::int64_t value;
    friend bool operator==(const Numeral&, const Numeral&) = default;
};
struct SymbolicConstant {
    std::string name;
    friend bool operator==(const SymbolicConstant&, const SymbolicConstant&) = default;
};
struct ProgramVariable {
    std::string name;
    friend bool operator==(const ProgramVariable&, const ProgramVariable&) = default;
};
struct Infimum {
    friend bool operator==(const Infimum&, const Infimum&) = default;
};
struct Supremum {
    friend bool operator==(const Supremum&, const Supremum&) = default;
};
struct BinaryTerm {
    BinaryOp op;
    ProgramTermPtr left;
    ProgramTermPtr right;
};

class ProgramTerm {
public:
    using Node = std::variant<Numeral, SymbolicConstant, ProgramVariable,
                              Infimum, Supremum, BinaryTerm>;

    explicit ProgramTerm(Node node) : node_(std::move(node)) {}

    const Node& node() const { return node_; }

    bool is_ground() const;
    bool is_precomputed() const;

private:
    Node node_;
};

ProgramTermPtr make_term(ProgramTerm::Node node);
ProgramTermPtr term_from_value(const Value& v);

bool equal(const ProgramTermPtr& a, const ProgramTermPtr& b);

// Converts a precomputed term to its value; throws std::invalid_argument otherwise.
Value value_of_precomputed(const ProgramTermPtr& t);

enum class Ordering { Less, Equal, Greater };

// Total order on precomputed terms. Throws std::invalid_argument if either
// argument is not precomputed.
Ordering compare_precomputed(const ProgramTermPtr& a, const ProgramTermPtr& b);

struct PredicateSymbol {
    std::string name;
    int arity = 0;

    friend bool operator==(const PredicateSymbol&, const PredicateSymbol&) = default;
    friend auto operator<=>(const PredicateSymbol&, const PredicateSymbol&) = default;

    std::string to_string() const { return name + "/" + std::to_string(arity); }
};

struct Atom {
    std::string predicate;
    std::vector<ProgramTermPtr> args;

    PredicateSymbol symbol() const { return {predicate, static_cast<int>(args.size())}; }
};

bool equal(const Atom& a, const Atom& b);

enum class Polarity { Positive, Negated, DoublyNegated };

struct Literal {
    Atom atom;
    Polarity polarity = Polarity::Positive;
};

struct Comparison {
    ProgramTermPtr left;
    Relation rel;
    ProgramTermPtr right;
};

using BodyElement = std::variant<Literal, Comparison>;

struct Head {
    enum class Kind { Basic, Choice, Empty };

    Kind kind = Kind::Empty;
    std::optional<Atom> atom;  // present unless Empty

    static Head basic(Atom a) { return {Kind::Basic, std::move(a)}; }
    static Head choice(Atom a) { return {Kind::Choice, std::move(a)}; }
    static Head empty() { return {Kind::Empty, std::nullopt}; }
};

struct Rule {
    Head head;
    std::vector<BodyElement> body;

    bool is_constraint() const { return head.kind == Head::Kind::Empty; }
};

struct Program {
    std::vector<Rule> rules;
};

bool equal(const Rule& a, const Rule& b);
bool equal(const Program& a, const Program& b);

// All predicate symbols occurring in the program, in order of first occurrence
// (heads scanned before bodies within a rule).
std::vector<PredicateSymbol> occurring_predicates(const Program& p);

// Names of all variables occurring in the rule (head and body).
std::set<std::string> variable_names(const Rule& r);

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line, int column)
        : std::runtime_error(message + " at line " + std::to_string(line) +
                             ", column " + std::to_string(column)),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

Program parse_program(std::string_view text);

std::string print_term(const ProgramTermPtr& t);
std::string print_rule(const Rule& r);
std::string print_program(const Program& p);

}  // namespace vera
