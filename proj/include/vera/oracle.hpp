#pragma once

// Brute-force semantic reference: grounding over a finite pool of precomputed
// terms, stable models via reducts, io-models, and bounded evaluation of
// first- and second-order sentences. Desk scale only — everything enumerates.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "vera/completion.hpp"

namespace vera {

// Finite slice of the precomputed-term universe: a symbol pool, an integer
// range, and optionally the extreme elements.
struct BoundedUniverse {
    std::set<std::string> symbols;
    std::int64_t lo = 0;
    std::int64_t hi = -1;  // empty range by default
    bool include_infimum = false;
    bool include_supremum = false;

    std::vector<Value> values() const;            // ascending
    std::vector<std::int64_t> integers() const;   // lo..hi
    bool contains(const Value& v) const;
};

struct GroundAtom {
    std::string predicate;
    std::vector<Value> args;

    PredicateSymbol symbol() const {
        return {predicate, static_cast<int>(args.size())};
    }
    std::string to_string() const;

    friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
    friend auto operator<=>(const GroundAtom&, const GroundAtom&) = default;
};

using AtomSet = std::set<GroundAtom>;

std::string to_string(const AtomSet& atoms);

// Propositional combinations of ground atoms. Negation is F -> #false, as in
// the formula module.
class GroundFormula;
using GF = std::shared_ptr<const GroundFormula>;

struct GBottom {};
struct GAtomF {
    GroundAtom atom;
};
struct GBinaryF {
    Connective conn;
    GF left;
    GF right;
};

class GroundFormula {
public:
    using Node = std::variant<GBottom, GAtomF, GBinaryF>;

    explicit GroundFormula(Node node) : node_(std::move(node)) {}
    const Node& node() const { return node_; }

private:
    Node node_;
};

GF g_bottom();
GF g_top();
GF g_atom(GroundAtom a);
GF g_and(GF left, GF right);
GF g_or(GF left, GF right);
GF g_implies(GF left, GF right);
GF g_not(GF f);
GF g_conjoin(const std::vector<GF>& fs);  // empty -> top
GF g_disjoin(const std::vector<GF>& fs);  // empty -> bottom

std::string to_string(const GF& f);
AtomSet atoms_of(const GF& f);

// Classical satisfaction.
bool holds(const GF& f, const AtomSet& x);

// Replaces every maximal subformula not satisfied by x with #false.
GF reduct(const GF& f, const AtomSet& x);

// All values a ground program term can take inside the universe. Arithmetic
// on non-numerals yields no values; intervals and the two division operations
// are clipped to the integer range (matching the bounded evaluation of their
// translated forms, where every witness ranges over the same interval).
std::vector<Value> term_values(const ProgramTermPtr& t, const BoundedUniverse& u,
                               const TranslationOptions& options = {});

// One propositional formula per rule instance, in rule order; instances
// enumerate all assignments of universe values to the rule's variables.
std::vector<GF> tau_ground(const Program& p, const BoundedUniverse& u,
                           const TranslationOptions& options = {});

// The candidate atoms for stable-model search: head atoms of all ground rule
// instances, deduplicated in order of first occurrence. Atoms outside this
// base are false in every stable model.
std::vector<GroundAtom> candidate_atoms(const Program& p, const BoundedUniverse& u,
                                        const TranslationOptions& options = {});

struct OracleLimits {
    std::size_t max_base_atoms = 24;
    std::size_t max_relation_candidates = std::size_t{1} << 16;
};

// Stable models of the grounded program: minimal models of the reduct. The
// candidate atoms are the head atoms of the ground instances; all other atoms
// are false everywhere.
std::set<AtomSet> stable_models(const Program& p, const BoundedUniverse& u,
                                const OracleLimits& limits = {},
                                const TranslationOptions& options = {});

// Same search over an explicit theory and candidate base (used to cross-check
// the rule translation against the grounding).
std::set<AtomSet> stable_models_of_theory(const std::vector<GF>& theory,
                                          const std::vector<GroundAtom>& base,
                                          const OracleLimits& limits = {});

// A program input: placeholder values plus input-symbol facts.
struct Input {
    std::map<std::string, Value> valuation;
    AtomSet atoms;
};

// Rules with placeholders replaced through the valuation, plus the input
// atoms as facts.
Program instantiate(const IOProgram& io, const Input& input);

// Public projections of the stable models of the instantiated program.
std::set<AtomSet> io_models(const IOProgram& io, const Input& input, const BoundedUniverse& u,
                            const OracleLimits& limits = {},
                            const TranslationOptions& options = {});

// A standard interpretation restricted to the universe: placeholders map
// through the valuation, every other precomputed term names itself.
struct BoundedInterpretation {
    BoundedUniverse universe;
    std::map<std::string, Value> valuation;
    AtomSet atoms;
};

// Classical value of a closed first-order sentence. Integer quantifiers range
// over the universe's integer range, object quantifiers over all its values.
bool eval_formula(const FormulaPtr& f, const BoundedInterpretation& m);

// Second-order evaluation by enumerating all relations over the universe for
// each predicate variable. Throws std::length_error past the candidate cap.
bool eval_second_order(const SecondOrderSentence& s, const BoundedInterpretation& m,
                       const OracleLimits& limits = {});

// Sets of public atoms whose standard interpretation satisfies the sentence
// and whose input part equals the given input atoms: candidates range over
// all subsets of output atoms buildable from the universe, with the input
// atoms held fixed. Throws std::length_error past max_base_atoms output
// atoms.
std::set<AtomSet> completion_models(const IOProgram& io, const SecondOrderSentence& c,
                                    const Input& input, const BoundedUniverse& u,
                                    const OracleLimits& limits = {});

// Grounds a first-order sentence over the universe: quantifiers expand into
// conjunctions/disjunctions, comparisons evaluate to truth constants.
GF ground_fo(const FormulaPtr& f, const BoundedUniverse& u,
             const std::map<std::string, Value>& valuation = {});

}  // namespace vera
