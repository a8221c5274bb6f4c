#pragma once

// Subcommand implementations behind the command-line tool. Each command takes
// a parsed options struct and writes its report to the given streams, so the
// whole surface is testable without spawning the binary.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "vera/oracle.hpp"
#include "vera/prover.hpp"

namespace vera {

// Exit-code contract, stable for CI use.
inline constexpr int exit_success = 0;     // verified / command succeeded
inline constexpr int exit_incomplete = 1;  // verification refuted or incomplete
inline constexpr int exit_usage = 2;       // usage, I/O, or parse error
inline constexpr int exit_rejected = 3;    // analysis rejection (non-tight etc.)

struct VerifyOptions {
    std::string program_path;
    std::string spec_path;
    ProverConfig prover;
    std::string direction = "both";  // forward | backward | both
    bool json = false;
    bool no_simplify = false;
};

struct CompleteOptions {
    std::string program_path;
    std::string spec_path;
    bool json = false;
    bool no_simplify = false;
};

struct AnalyzeOptions {
    std::string program_path;
    std::string spec_path;  // optional: empty treats every predicate as output
    bool json = false;
    bool dot = false;
};

struct OracleOptions {
    std::string program_path;
    std::string spec_path;   // optional
    std::string input_path;  // optional: file of input-symbol facts
    std::vector<std::pair<std::string, std::string>> lets;  // placeholder values
    std::optional<std::pair<std::int64_t, std::int64_t>> int_range;
    bool json = false;
};

// Pipeline: parse, analyze (reject non-tight or private-recursive programs
// before any prover call), show the simplified completion, then run the proof
// sequence. With --emit-tptp and no prover available, writes the planned
// tasks and succeeds.
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

// Prints the simplified completion: private completed definitions in
// dependency order, public completed definitions, then the translated
// constraints in program order.
int cmd_complete(const CompleteOptions& opts, std::ostream& out, std::ostream& err);

// Prints the tightness and private-recursion verdicts (and the dependency
// graph as DOT with --dot). Exits with exit_rejected if either check fails.
int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err);

// Prints stable models, io-models (when a specification provides the
// input/output split), and bounded-universe theorem checks.
int cmd_oracle(const OracleOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace vera
