#pragma once

// External theorem-prover client and the two-pass proof-step protocol:
// forward (program implies specification) and backward (specification implies
// program completion), each with accumulating presupposed formulas.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vera/completion.hpp"
#include "vera/tptp.hpp"

namespace vera {

enum class Direction { Forward, Backward };

struct ProverConfig {
    std::string executable;                // empty: use the VERA_PROVER env var
    std::vector<std::string> extra_args;
    int time_limit_seconds = 300;          // per step; must be positive
    bool keep_going = false;               // continue past a failed step
    std::optional<std::filesystem::path> emit_dir;  // dump one .p file per step
    std::optional<Direction> only_direction;        // run a single pass
};
enum class Verdict { Proven, Disproven, Timeout, Error };

std::string to_string(Direction d);
std::string to_string(Verdict v);

struct StepResult {
    std::string name;
    Direction direction = Direction::Forward;
    Verdict verdict = Verdict::Error;
    double seconds = 0.0;
    std::string transcript;
};

enum class Overall { Verified, RefutedStep, Incomplete };

struct VerificationReport {
    bool tight = false;
    bool private_recursion = false;
    std::vector<StepResult> steps;
    Overall overall = Overall::Incomplete;
};

// Runs the prover on the emitted task, enforcing the time limit, and
// classifies the outcome from the SZS status line of its output:
// Theorem -> proven; CounterSatisfiable -> disproven; Timeout, GaveUp,
// ResourceOut -> timeout; anything else (or a spawn failure) -> error.
StepResult run_step(const ProofTask& task, Direction direction, const ProverConfig& cfg);

// The full protocol over assembled obligations. Forward pass: presupposes the
// axioms, assumptions, completion hypotheses, and the public completion, then
// proves each forward lemma and each spec in order, appending each proven
// formula to the presupposed set. Backward pass: presupposes axioms,
// assumptions, completion hypotheses, and specs, then proves each backward
// lemma and each public-completion conjunct the same way. Stops at the first
// non-proven step unless cfg.keep_going. Standard-interpretation axioms for
// the mentioned constants are included in every task.
VerificationReport run_sequence(const ProofObligations& obl,
                                const std::map<std::string, Sort>& placeholders,
                                const ProverConfig& cfg);

// The tasks the sequence would run, in order, without invoking the prover
// (used for --emit-tptp and for tests).
std::vector<std::pair<Direction, ProofTask>> plan_sequence(
    const ProofObligations& obl, const std::map<std::string, Sort>& placeholders);

}  // namespace vera
