#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "vera/commands.hpp"

namespace {

// Parses "lo..hi" into an integer range.
bool parse_range(const std::string& text, std::int64_t& lo, std::int64_t& hi) {
    const std::size_t dots = text.find("..");
    if (dots == std::string::npos)
        return false;
    try {
        lo = std::stoll(text.substr(0, dots));
        hi = std::stoll(text.substr(dots + 2));
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

// Parses "name=value" placeholder bindings.
bool parse_let(const std::string& text, std::pair<std::string, std::string>& binding) {
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        return false;
    binding = {text.substr(0, eq), text.substr(eq + 1)};
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification toolchain for logic programs with input and output"};
    app.require_subcommand(1);

    vera::VerifyOptions verify;
    std::string verify_emit_dir;
    auto* cmd_verify = app.add_subcommand(
        "verify", "Check that a program implements a specification");
    cmd_verify->add_option("program", verify.program_path, "Program file")->required();
    cmd_verify->add_option("spec", verify.spec_path, "Specification file")->required();
    cmd_verify->add_option("--prover-path", verify.prover.executable,
                           "Theorem prover executable (default: $VERA_PROVER)");
    cmd_verify->add_option("--time-limit", verify.prover.time_limit_seconds,
                           "Per-step time limit in seconds");
    cmd_verify->add_option("--prover-arg", verify.prover.extra_args,
                           "Extra argument passed to the prover (repeatable)");
    cmd_verify->add_option("--direction", verify.direction,
                           "Proof direction: forward, backward, or both");
    cmd_verify->add_option("--emit-tptp", verify_emit_dir,
                           "Write one TPTP file per proof step into this directory");
    cmd_verify->add_flag("--keep-going", verify.prover.keep_going,
                         "Continue past a failed proof step");
    cmd_verify->add_flag("--no-simplify", verify.no_simplify,
                         "Show the completion without simplification");
    cmd_verify->add_flag("--json", verify.json, "Machine-readable JSON report");

    vera::CompleteOptions complete;
    auto* cmd_complete = app.add_subcommand("complete", "Print the program's completion");
    cmd_complete->add_option("program", complete.program_path, "Program file")->required();
    cmd_complete->add_option("spec", complete.spec_path, "Specification file")->required();
    cmd_complete->add_flag("--no-simplify", complete.no_simplify,
                           "Skip equivalent transformations");
    cmd_complete->add_flag("--json", complete.json, "Machine-readable JSON report");

    vera::AnalyzeOptions analyze;
    auto* cmd_analyze = app.add_subcommand(
        "analyze", "Report tightness and private-recursion verdicts");
    cmd_analyze->add_option("program", analyze.program_path, "Program file")->required();
    cmd_analyze->add_option("spec", analyze.spec_path, "Specification file (optional)");
    cmd_analyze->add_flag("--dot", analyze.dot, "Also print the dependency graph as DOT");
    cmd_analyze->add_flag("--json", analyze.json, "Machine-readable JSON report");

    vera::OracleOptions oracle;
    std::string oracle_range;
    std::vector<std::string> oracle_lets;
    auto* cmd_oracle = app.add_subcommand(
        "oracle", "Enumerate stable models and io-models over a bounded universe");
    cmd_oracle->add_option("program", oracle.program_path, "Program file")->required();
    cmd_oracle->add_option("spec", oracle.spec_path, "Specification file (optional)");
    cmd_oracle->add_option("--input", oracle.input_path, "File of input facts");
    cmd_oracle->add_option("--let", oracle_lets,
                           "Placeholder value as name=value (repeatable)");
    cmd_oracle->add_option("--int-range", oracle_range,
                           "Integer range lo..hi (default: derived with margin 2)");
    cmd_oracle->add_flag("--json", oracle.json, "Machine-readable JSON report");

    CLI11_PARSE(app, argc, argv);

    if (cmd_verify->parsed()) {
        if (!verify_emit_dir.empty())
            verify.prover.emit_dir = verify_emit_dir;
        return vera::cmd_verify(verify, std::cout, std::cerr);
    }
    if (cmd_complete->parsed())
        return vera::cmd_complete(complete, std::cout, std::cerr);
    if (cmd_analyze->parsed())
        return vera::cmd_analyze(analyze, std::cout, std::cerr);
    if (cmd_oracle->parsed()) {
        if (!oracle_range.empty()) {
            std::int64_t lo = 0;
            std::int64_t hi = 0;
            if (!parse_range(oracle_range, lo, hi)) {
                std::cerr << "error: --int-range expects lo..hi\n";
                return vera::exit_usage;
            }
            oracle.int_range = {lo, hi};
        }
        for (const auto& text : oracle_lets) {
            std::pair<std::string, std::string> binding;
            if (!parse_let(text, binding)) {
                std::cerr << "error: --let expects name=value\n";
                return vera::exit_usage;
            }
            oracle.lets.push_back(std::move(binding));
        }
        return vera::cmd_oracle(oracle, std::cout, std::cerr);
    }
    return vera::exit_usage;
}
