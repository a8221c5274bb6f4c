#include "vera/prover.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace vera {

std::string to_string(Direction d) {
    return d == Direction::Forward ? "forward" : "backward";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Proven: return "proven";
        case Verdict::Disproven: return "disproven";
        case Verdict::Timeout: return "timeout";
        case Verdict::Error: return "error";
    }
    return "error";
}

namespace {

struct Pass {
    Direction direction;
    std::vector<LabeledFormula> presupposed;
    std::vector<LabeledFormula> steps;
};

std::vector<LabeledFormula> base_axioms(const ProofObligations& obl,
                                        const std::map<std::string, Sort>& placeholders) {
    std::set<std::string> constants;
    const auto scan = [&constants](const std::vector<FormulaPtr>& fs) {
        for (const auto& f : fs)
            for (const auto& c : symbolic_constants(f))
                constants.insert(c);
    };
    scan(obl.axioms);
    scan(obl.assumptions);
    scan(obl.completion_hypotheses);
    scan(obl.public_conjuncts);
    scan(obl.specs);
    scan(obl.lemmas_forward);
    scan(obl.lemmas_backward);

    std::vector<LabeledFormula> out;
    int i = 0;
    for (const auto& f : standard_axioms(constants, placeholders))
        out.push_back({"axiom_order_" + std::to_string(++i), f});
    i = 0;
    for (const auto& f : obl.axioms)
        out.push_back({"axiom_spec_" + std::to_string(++i), f});
    i = 0;
    for (const auto& f : obl.assumptions)
        out.push_back({"assumption_" + std::to_string(++i), f});
    i = 0;
    for (const auto& f : obl.completion_hypotheses)
        out.push_back({"completion_" + std::to_string(++i), f});
    return out;
}

std::pair<Pass, Pass> make_passes(const ProofObligations& obl,
                                  const std::map<std::string, Sort>& placeholders) {
    const auto base = base_axioms(obl, placeholders);

    Pass forward{Direction::Forward, base, {}};
    forward.presupposed.push_back({"completion_public", obl.public_completion});
    int i = 0;
    for (const auto& f : obl.lemmas_forward)
        forward.steps.push_back({"forward_lemma_" + std::to_string(++i), f});
    i = 0;
    for (const auto& f : obl.specs)
        forward.steps.push_back({"spec_" + std::to_string(++i), f});

    Pass backward{Direction::Backward, base, {}};
    i = 0;
    for (const auto& f : obl.specs)
        backward.presupposed.push_back({"spec_" + std::to_string(++i), f});
    i = 0;
    for (const auto& f : obl.lemmas_backward)
        backward.steps.push_back({"backward_lemma_" + std::to_string(++i), f});
    i = 0;
    for (const auto& f : obl.public_conjuncts)
        backward.steps.push_back({"completion_conjunct_" + std::to_string(++i), f});
    return {std::move(forward), std::move(backward)};
}

ProofTask make_task(const Pass& pass, const LabeledFormula& step,
                    const std::map<std::string, Sort>& placeholders) {
    ProofTask task;
    task.name = to_string(pass.direction) + "_" + step.label;
    task.placeholders = placeholders;
    task.axioms = pass.presupposed;
    task.conjecture = {"conjecture_" + step.label, step.formula};
    return task;
}

Verdict classify(const std::string& output, bool timed_out) {
    const std::string tag = "SZS status ";
    const std::size_t at = output.find(tag);
    if (at == std::string::npos)
        return timed_out ? Verdict::Timeout : Verdict::Error;
    std::istringstream rest(output.substr(at + tag.size()));
    std::string status;
    rest >> status;
    if (status == "Theorem" || status == "Unsatisfiable")
        return Verdict::Proven;
    if (status == "CounterSatisfiable" || status == "Satisfiable")
        return Verdict::Disproven;
    if (status == "Timeout" || status == "GaveUp" || status == "ResourceOut")
        return Verdict::Timeout;
    return timed_out ? Verdict::Timeout : Verdict::Error;
}

}  // namespace

std::vector<std::pair<Direction, ProofTask>> plan_sequence(
    const ProofObligations& obl, const std::map<std::string, Sort>& placeholders) {
    auto [forward, backward] = make_passes(obl, placeholders);
    std::vector<std::pair<Direction, ProofTask>> out;
    for (Pass* pass : {&forward, &backward})
        for (const auto& step : pass->steps) {
            out.emplace_back(pass->direction, make_task(*pass, step, placeholders));
            pass->presupposed.push_back(step);
        }
    return out;
}

StepResult run_step(const ProofTask& task, Direction direction, const ProverConfig& cfg) {
    namespace fs = std::filesystem;
    StepResult result;
    result.name = task.name;
    result.direction = direction;

    std::string exe = cfg.executable;
    if (exe.empty())
        if (const char* env = std::getenv("VERA_PROVER"))
            exe = env;
    if (exe.empty()) {
        result.transcript = "no prover configured: pass --prover-path or set VERA_PROVER";
        return result;
    }
    if (cfg.time_limit_seconds <= 0) {
        result.transcript = "time limit must be positive";
        return result;
    }

    const fs::path dir = cfg.emit_dir ? *cfg.emit_dir : fs::temp_directory_path();
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path file = dir / (task.name + ".p");
    {
        std::ofstream out(file);
        out << emit_task(task);
        if (!out) {
            result.transcript = "cannot write " + file.string();
            return result;
        }
    }

    int fds[2];
    if (pipe(fds) != 0) {
        result.transcript = "pipe failed";
        return result;
    }
    const auto start = std::chrono::steady_clock::now();
    const pid_t pid = fork();
    if (pid < 0) {
        close(fds[0]);
        close(fds[1]);
        result.transcript = "fork failed";
        return result;
    }
    if (pid == 0) {
        setpgid(0, 0);  // own process group, so a timeout kill reaches children
        dup2(fds[1], 1);
        dup2(fds[1], 2);
        close(fds[0]);
        close(fds[1]);
        std::vector<std::string> args{exe};
        args.insert(args.end(), cfg.extra_args.begin(), cfg.extra_args.end());
        args.push_back(file.string());
        std::vector<char*> argv;
        for (auto& a : args)
            argv.push_back(a.data());
        argv.push_back(nullptr);
        execvp(exe.c_str(), argv.data());
        _exit(127);
    }
    close(fds[1]);
    fcntl(fds[0], F_SETFL, O_NONBLOCK);

    std::string output;
    bool timed_out = false;
    bool spawn_failed = false;
    while (true) {
        const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                           start)
                                 .count();
        if (!timed_out && elapsed > cfg.time_limit_seconds) {
            kill(-pid, SIGKILL);
            kill(pid, SIGKILL);
            timed_out = true;
        }
        pollfd p{fds[0], POLLIN, 0};
        poll(&p, 1, 100);
        char buf[4096];
        const ssize_t k = read(fds[0], buf, sizeof buf);
        if (k > 0) {
            output.append(buf, static_cast<std::size_t>(k));
            continue;
        }
        if (k == 0)
            break;  // EOF: child closed its end
        if (errno != EAGAIN && errno != EWOULDBLOCK && errno != EINTR)
            break;
    }
    close(fds[0]);
    int status = 0;
    waitpid(pid, &status, 0);
    if (WIFEXITED(status) && WEXITSTATUS(status) == 127)
        spawn_failed = true;

    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.transcript = output;
    if (spawn_failed) {
        result.verdict = Verdict::Error;
        if (output.empty())
            result.transcript = "cannot execute " + exe;
        return result;
    }
    result.verdict = classify(output, timed_out);
    return result;
}

VerificationReport run_sequence(const ProofObligations& obl,
                                const std::map<std::string, Sort>& placeholders,
                                const ProverConfig& cfg) {
    VerificationReport report;
    report.tight = true;               // build_obligations rejects non-tight programs
    report.private_recursion = false;  // and programs with private recursion

    auto [forward, backward] = make_passes(obl, placeholders);
    bool all_proven = true;
    bool refuted = false;
    bool stopped = false;
    for (Pass* pass : {&forward, &backward}) {
        if (stopped)
            break;
        if (cfg.only_direction && *cfg.only_direction != pass->direction)
            continue;
        for (const auto& step : pass->steps) {
            StepResult r = run_step(make_task(*pass, step, placeholders), pass->direction, cfg);
            const bool proven = r.verdict == Verdict::Proven;
            refuted = refuted || r.verdict == Verdict::Disproven;
            all_proven = all_proven && proven;
            report.steps.push_back(std::move(r));
            if (proven) {
                pass->presupposed.push_back(step);
            } else if (!cfg.keep_going) {
                stopped = true;
                break;
            }
        }
    }
    report.overall = all_proven ? Overall::Verified
                                : (refuted ? Overall::RefutedStep : Overall::Incomplete);
    return report;
}

}  // namespace vera
