#include <doctest.h>
#include <sys/stat.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <vera/prover.hpp>

using namespace vera;
namespace fs = std::filesystem;

namespace {

// A small program with private predicate h, one constraint, and lemmas in
// both directions, giving a nontrivial obligation set:
// 2 forward lemmas + 1 spec forward; 2 backward lemmas + 2 conjuncts backward.
ProofObligations fixture_obligations() {
    const Specification spec = parse_spec(
        "input: q/1.\n"
        "output: t/1.\n"
        "assume: exists X q(X).\n"
        "spec: forall X (t(X) -> q(X)).\n"
        "lemma: #true.\n"
        "lemma(forward): q(a) or not q(a).\n"
        "lemma(backward): not #false.\n");
    IOProgram io;
    io.rules = parse_program("t(X) :- h(X). h(X) :- q(X). :- t(b).");
    io.inputs = {{"q", 1}};
    io.outputs = {{"t", 1}};
    return build_obligations(io, spec);
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "prover_test_scripts";
    fs::create_directories(dir);
    return dir;
}

std::string write_script(const std::string& name, const std::string& body) {
    const fs::path p = scratch_dir() / name;
    {
        std::ofstream out(p);
        out << "#!/bin/sh\n" << body;
    }
    chmod(p.c_str(), 0755);
    return p.string();
}

ProofTask trivial_task(const std::string& name = "goal") {
    ProofTask t;
    t.name = name;
    t.conjecture = {"conjecture_goal", parse_formula("p or not p")};
    return t;
}

std::vector<std::string> labels(const std::vector<LabeledFormula>& fs) {
    std::vector<std::string> out;
    for (const auto& f : fs)
        out.push_back(f.label);
    return out;
}

}  // namespace

TEST_CASE("plan_sequence orders and labels the two passes") {
    const auto obl = fixture_obligations();
    const std::map<std::string, Sort> placeholders;
    const auto plan = plan_sequence(obl, placeholders);
    REQUIRE(plan.size() == 7);

    const std::vector<std::string> expected_names = {
        "forward_forward_lemma_1",      "forward_forward_lemma_2",
        "forward_spec_1",               "backward_backward_lemma_1",
        "backward_backward_lemma_2",    "backward_completion_conjunct_1",
        "backward_completion_conjunct_2"};
    for (std::size_t i = 0; i < plan.size(); ++i) {
        CHECK(plan[i].second.name == expected_names[i]);
        CHECK(plan[i].first == (i < 3 ? Direction::Forward : Direction::Backward));
    }
    CHECK(plan[2].second.conjecture.label == "conjecture_spec_1");

    // Forward tasks presuppose the public completion; backward tasks the specs.
    const auto fwd = labels(plan[0].second.axioms);
    CHECK(std::count(fwd.begin(), fwd.end(), "completion_public") == 1);
    CHECK(std::count(fwd.begin(), fwd.end(), "spec_1") == 0);
    const auto bwd = labels(plan[3].second.axioms);
    CHECK(std::count(bwd.begin(), bwd.end(), "completion_public") == 0);
    CHECK(std::count(bwd.begin(), bwd.end(), "spec_1") == 1);

    // Both include standard axioms, spec axioms, assumptions, and the private
    // completion hypothesis.
    for (const char* label : {"axiom_order_1", "assumption_1", "completion_1"}) {
        CHECK(std::count(fwd.begin(), fwd.end(), label) == 1);
        CHECK(std::count(bwd.begin(), bwd.end(), label) == 1);
    }
}

TEST_CASE("plan_sequence accumulates each step into the next task") {
    const auto obl = fixture_obligations();
    const auto plan = plan_sequence(obl, {});
    for (std::size_t i = 0; i + 1 < plan.size(); ++i) {
        if (plan[i].first != plan[i + 1].first)
            continue;  // presupposed sets reset between passes
        const auto& prev = plan[i].second;
        const auto& next = plan[i + 1].second;
        REQUIRE(next.axioms.size() == prev.axioms.size() + 1);
        for (std::size_t j = 0; j < prev.axioms.size(); ++j)
            CHECK(next.axioms[j].label == prev.axioms[j].label);
        // The appended axiom is the previous step's goal.
        CHECK("conjecture_" + next.axioms.back().label == prev.conjecture.label);
        CHECK(equal(next.axioms.back().formula, prev.conjecture.formula));
    }
}

TEST_CASE("plan_sequence is deterministic and every task emits") {
    const auto obl = fixture_obligations();
    const auto a = plan_sequence(obl, {});
    const auto b = plan_sequence(obl, {});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(emit_task(a[i].second) == emit_task(b[i].second));
}

TEST_CASE("run_step classifies prover outcomes by SZS status") {
    ProverConfig cfg;
    cfg.time_limit_seconds = 10;

    cfg.executable = write_script("theorem.sh", "echo '% SZS status Theorem'\n");
    StepResult r = run_step(trivial_task(), Direction::Forward, cfg);
    CHECK(r.verdict == Verdict::Proven);
    CHECK(r.name == "goal");
    CHECK(r.direction == Direction::Forward);
    CHECK(r.transcript.find("SZS status Theorem") != std::string::npos);

    cfg.executable = write_script("counter.sh", "echo '% SZS status CounterSatisfiable'\n");
    CHECK(run_step(trivial_task(), Direction::Backward, cfg).verdict == Verdict::Disproven);

    cfg.executable = write_script("gaveup.sh", "echo '% SZS status GaveUp'\n");
    CHECK(run_step(trivial_task(), Direction::Forward, cfg).verdict == Verdict::Timeout);

    cfg.executable = write_script("garbage.sh", "echo 'no status line here'\n");
    CHECK(run_step(trivial_task(), Direction::Forward, cfg).verdict == Verdict::Error);
}

TEST_CASE("run_step passes extra arguments and the task file") {
    ProverConfig cfg;
    cfg.executable = write_script("echo_args.sh",
                                  "echo \"args: $@\"\necho '% SZS status Theorem'\n");
    cfg.extra_args = {"--flag", "7"};
    const StepResult r = run_step(trivial_task(), Direction::Forward, cfg);
    CHECK(r.verdict == Verdict::Proven);
    CHECK(r.transcript.find("--flag 7") != std::string::npos);
    CHECK(r.transcript.find("goal.p") != std::string::npos);
}

TEST_CASE("run_step writes the task file into emit_dir") {
    const fs::path dir = scratch_dir() / "emitted";
    fs::remove_all(dir);
    ProverConfig cfg;
    cfg.executable = write_script("theorem.sh", "echo '% SZS status Theorem'\n");
    cfg.emit_dir = dir;
    run_step(trivial_task("named_step"), Direction::Forward, cfg);
    REQUIRE(fs::exists(dir / "named_step.p"));
    std::ifstream in(dir / "named_step.p");
    std::string first;
    std::getline(in, first);
    CHECK(first == "% named_step");
}

TEST_CASE("run_step enforces the per-step time limit") {
    ProverConfig cfg;
    cfg.executable = write_script("sleeper.sh", "sleep 30\necho '% SZS status Theorem'\n");
    cfg.time_limit_seconds = 1;
    const StepResult r = run_step(trivial_task(), Direction::Forward, cfg);
    CHECK(r.verdict == Verdict::Timeout);
    CHECK(r.seconds >= 1.0);
    CHECK(r.seconds < 10.0);
}

TEST_CASE("run_step reports configuration and spawn failures as errors") {
    unsetenv("VERA_PROVER");
    ProverConfig cfg;
    StepResult r = run_step(trivial_task(), Direction::Forward, cfg);
    CHECK(r.verdict == Verdict::Error);
    CHECK(r.transcript.find("no prover configured") != std::string::npos);

    cfg.executable = "/nonexistent/prover/binary";
    r = run_step(trivial_task(), Direction::Forward, cfg);
    CHECK(r.verdict == Verdict::Error);
    CHECK(r.transcript.find("cannot execute") != std::string::npos);

    cfg.executable = write_script("theorem.sh", "echo '% SZS status Theorem'\n");
    cfg.time_limit_seconds = 0;
    r = run_step(trivial_task(), Direction::Forward, cfg);
    CHECK(r.verdict == Verdict::Error);
}

TEST_CASE("run_sequence verifies when every step is proven") {
    const auto obl = fixture_obligations();
    ProverConfig cfg;
    cfg.executable = write_script("theorem.sh", "echo '% SZS status Theorem'\n");
    const VerificationReport report = run_sequence(obl, {}, cfg);
    CHECK(report.overall == Overall::Verified);
    CHECK(report.tight);
    CHECK(!report.private_recursion);
    REQUIRE(report.steps.size() == 7);
    for (const auto& s : report.steps)
        CHECK(s.verdict == Verdict::Proven);
    CHECK(report.steps[2].name == "forward_spec_1");
    CHECK(report.steps[6].direction == Direction::Backward);
}

TEST_CASE("run_sequence stops at the first refuted step unless keep_going") {
    const auto obl = fixture_obligations();
    ProverConfig cfg;
    cfg.executable = write_script(
        "refute_spec.sh",
        "if grep -q conjecture_spec_1 \"$1\"; then\n"
        "  echo '% SZS status CounterSatisfiable'\n"
        "else\n"
        "  echo '% SZS status Theorem'\n"
        "fi\n");

    VerificationReport report = run_sequence(obl, {}, cfg);
    CHECK(report.overall == Overall::RefutedStep);
    REQUIRE(report.steps.size() == 3);  // stops right after forward_spec_1
    CHECK(report.steps.back().name == "forward_spec_1");
    CHECK(report.steps.back().verdict == Verdict::Disproven);

    cfg.keep_going = true;
    report = run_sequence(obl, {}, cfg);
    CHECK(report.overall == Overall::RefutedStep);
    CHECK(report.steps.size() == 7);
}

TEST_CASE("run_sequence reports incomplete on non-refuting failures") {
    const auto obl = fixture_obligations();
    ProverConfig cfg;
    cfg.executable = write_script("gaveup.sh", "echo '% SZS status GaveUp'\n");
    const VerificationReport report = run_sequence(obl, {}, cfg);
    CHECK(report.overall == Overall::Incomplete);
    CHECK(report.steps.size() == 1);
    CHECK(report.steps[0].verdict == Verdict::Timeout);
}
