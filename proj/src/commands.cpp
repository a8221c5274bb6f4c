#include "vera/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "vera/simplify.hpp"

namespace vera {

namespace {

using nlohmann::json;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct Loaded {
    IOProgram io;
    Specification spec;
};

// Reads and parses the program and (optionally) the specification; reports
// failures on err and returns nothing. Without a specification every
// predicate is treated as a public output.
std::optional<Loaded> load(const std::string& program_path, const std::string& spec_path,
                           std::ostream& err) {
    const auto program_text = read_file(program_path);
    if (!program_text) {
        err << "error: cannot read program file " << program_path << "\n";
        return std::nullopt;
    }
    Loaded loaded;
    try {
        loaded.io.rules = parse_program(*program_text);
    } catch (const std::exception& e) {
        err << "error: " << program_path << ": " << e.what() << "\n";
        return std::nullopt;
    }
    if (spec_path.empty()) {
        for (const auto& p : occurring_predicates(loaded.io.rules))
            loaded.io.outputs.insert(p);
        return loaded;
    }
    const auto spec_text = read_file(spec_path);
    if (!spec_text) {
        err << "error: cannot read specification file " << spec_path << "\n";
        return std::nullopt;
    }
    try {
        loaded.spec = parse_spec(*spec_text);
    } catch (const std::exception& e) {
        err << "error: " << spec_path << ": " << e.what() << "\n";
        return std::nullopt;
    }
    loaded.io.inputs = loaded.spec.inputs;
    loaded.io.outputs = loaded.spec.outputs;
    for (const auto& [name, sort] : loaded.spec.placeholders)
        loaded.io.placeholders.insert(name);
    try {
        loaded.io.validate();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return std::nullopt;
    }
    return loaded;
}

// Completion for display: private completed definitions in dependency order,
// then the public ones, then the translated constraints — all with predicate
// constants (no predicate variables).
std::vector<FormulaPtr> completion_lines(const IOProgram& io, const SortContext& ctx,
                                         bool simplify_lines) {
    IOProgram display = io;
    for (const auto& p : io.private_symbols())
        display.outputs.insert(p);

    std::vector<PredicateSymbol> order = topological_private_order(io);
    for (const auto& p : occurring_predicates(io.rules))
        if (!io.is_input(p) && io.is_public(p))
            order.push_back(p);
    for (const auto& p : io.outputs)
        if (std::find(order.begin(), order.end(), p) == order.end())
            order.push_back(p);

    std::vector<FormulaPtr> lines;
    for (const auto& p : order)
        lines.push_back(completed_definition(p, display));
    for (const auto& r : io.rules.rules)
        if (r.is_constraint())
            lines.push_back(constraint_representation(r, display));
    if (simplify_lines)
        for (auto& f : lines)
            f = normalize_variable_names(simplify(f, ctx));
    return lines;
}

std::string cycle_text(const IOProgram& io) {
    std::string text;
    for (const auto& p : find_positive_cycle(io))
        text += (text.empty() ? "" : " -> ") + p.to_string();
    return text;
}

std::string resolved_prover(const ProverConfig& cfg) {
    if (!cfg.executable.empty())
        return cfg.executable;
    if (const char* env = std::getenv("VERA_PROVER"))
        return env;
    return {};
}

std::string format_seconds(double seconds) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.2f", seconds);
    return buffer;
}

std::string to_string(Overall overall) {
    switch (overall) {
        case Overall::Verified: return "verified";
        case Overall::RefutedStep: return "refuted";
        case Overall::Incomplete: return "incomplete";
    }
    return "incomplete";
}

// ---------------------------------------------------------------- oracle ---

void collect_term_values(const ProgramTermPtr& t, std::set<std::string>& symbols,
                         std::vector<std::int64_t>& numerals) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Numeral>) {
                numerals.push_back(n.value);
            } else if constexpr (std::is_same_v<T, SymbolicConstant>) {
                symbols.insert(n.name);
            } else if constexpr (std::is_same_v<T, BinaryTerm>) {
                collect_term_values(n.left, symbols, numerals);
                collect_term_values(n.right, symbols, numerals);
            }
        },
        t->node());
}

void collect_program_values(const Program& p, std::set<std::string>& symbols,
                            std::vector<std::int64_t>& numerals) {
    for (const auto& rule : p.rules) {
        if (rule.head.atom)
            for (const auto& arg : rule.head.atom->args)
                collect_term_values(arg, symbols, numerals);
        for (const auto& element : rule.body) {
            if (const auto* lit = std::get_if<Literal>(&element)) {
                for (const auto& arg : lit->atom.args)
                    collect_term_values(arg, symbols, numerals);
            } else {
                const auto& cmp = std::get<Comparison>(element);
                collect_term_values(cmp.left, symbols, numerals);
                collect_term_values(cmp.right, symbols, numerals);
            }
        }
    }
}

Value parse_value(const std::string& text) {
    std::int64_t number = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), number);
    if (ec == std::errc() && ptr == text.data() + text.size())
        return Value::numeral(number);
    return Value::symbol(text);
}

// The universe for an oracle run: every constant in the program, input, and
// valuation, and an integer margin of 2 beyond any mentioned numeral.
BoundedUniverse derive_universe(const IOProgram& io, const Input& input,
                                const std::optional<std::pair<std::int64_t, std::int64_t>>&
                                    int_range) {
    BoundedUniverse u;
    std::vector<std::int64_t> numerals;
    collect_program_values(io.rules, u.symbols, numerals);
    for (const auto& name : io.placeholders)
        u.symbols.erase(name);
    const auto add_value = [&](const Value& v) {
        if (v.is_symbol())
            u.symbols.insert(v.name());
        else if (v.is_numeral())
            numerals.push_back(v.number());
    };
    for (const auto& [name, v] : input.valuation)
        add_value(v);
    for (const auto& atom : input.atoms)
        for (const auto& arg : atom.args)
            add_value(arg);
    if (int_range) {
        u.lo = int_range->first;
        u.hi = int_range->second;
    } else if (numerals.empty()) {
        u.lo = -2;
        u.hi = 2;
    } else {
        u.lo = *std::min_element(numerals.begin(), numerals.end()) - 2;
        u.hi = *std::max_element(numerals.begin(), numerals.end()) + 2;
    }
    return u;
}

}  // namespace

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err) {
    const auto loaded = load(opts.program_path, opts.spec_path, err);
    if (!loaded)
        return exit_usage;
    const IOProgram& io = loaded->io;

    const bool tight = is_tight(io);
    const bool recursion = uses_private_recursion(io);
    if (opts.json) {
        json report;
        report["tight"] = tight;
        if (!tight)
            report["positive_cycle"] = cycle_text(io);
        report["private_recursion"] = recursion;
        if (opts.dot)
            report["graph"] = to_dot(dependency_graph(io));
        out << report.dump(2) << "\n";
    } else {
        out << "tight: " << (tight ? "yes" : "no");
        if (!tight)
            out << " (positive cycle: " << cycle_text(io) << ")";
        out << "\n";
        out << "private recursion: " << (recursion ? "yes" : "no") << "\n";
        if (opts.dot)
            out << to_dot(dependency_graph(io));
    }
    return tight && !recursion ? exit_success : exit_rejected;
}

int cmd_complete(const CompleteOptions& opts, std::ostream& out, std::ostream& err) {
    const auto loaded = load(opts.program_path, opts.spec_path, err);
    if (!loaded)
        return exit_usage;

    std::vector<FormulaPtr> lines;
    try {
        lines = completion_lines(loaded->io, loaded->spec.sort_context(), !opts.no_simplify);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_rejected;
    }
    if (opts.json) {
        json report;
        report["completion"] = json::array();
        for (const auto& f : lines)
            report["completion"].push_back(to_string(f));
        out << report.dump(2) << "\n";
    } else {
        for (const auto& f : lines)
            out << to_string(f) << "\n";
    }
    return exit_success;
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
    ProverConfig cfg = opts.prover;
    if (opts.direction == "forward")
        cfg.only_direction = Direction::Forward;
    else if (opts.direction == "backward")
        cfg.only_direction = Direction::Backward;
    else if (opts.direction != "both") {
        err << "error: unknown direction '" << opts.direction << "'\n";
        return exit_usage;
    }

    const auto loaded = load(opts.program_path, opts.spec_path, err);
    if (!loaded)
        return exit_usage;
    const IOProgram& io = loaded->io;
    const Specification& spec = loaded->spec;

    const bool tight = is_tight(io);
    const bool recursion = uses_private_recursion(io);
    if (!tight) {
        err << "error: program is not tight (positive cycle: " << cycle_text(io) << ")\n";
        return exit_rejected;
    }
    if (recursion) {
        err << "error: program uses private recursion\n";
        return exit_rejected;
    }

    json report;
    report["tight"] = true;
    report["private_recursion"] = false;
    std::vector<FormulaPtr> completion;
    ProofObligations obligations;
    try {
        completion = completion_lines(io, spec.sort_context(), !opts.no_simplify);
        obligations = build_obligations(io, spec);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_rejected;
    }
    if (!opts.json) {
        out << "tight: yes\n";
        out << "private recursion: no\n";
        out << "completion:\n";
    }
    report["completion"] = json::array();
    for (const auto& f : completion) {
        if (opts.json)
            report["completion"].push_back(to_string(f));
        else
            out << "  " << to_string(f) << "\n";
    }

    if (resolved_prover(cfg).empty()) {
        if (cfg.emit_dir) {
            std::error_code ec;
            std::filesystem::create_directories(*cfg.emit_dir, ec);
            const auto plan = plan_sequence(obligations, spec.placeholders);
            int written = 0;
            for (const auto& [direction, task] : plan) {
                if (cfg.only_direction && *cfg.only_direction != direction)
                    continue;
                std::ofstream file(*cfg.emit_dir / (task.name + ".p"));
                file << emit_task(task);
                ++written;
            }
            if (opts.json) {
                report["tasks_written"] = written;
                out << report.dump(2) << "\n";
            } else {
                out << "wrote " << written << " proof tasks to " << cfg.emit_dir->string()
                    << "\n";
            }
            return exit_success;
        }
        err << "error: no prover configured: pass --prover-path or set VERA_PROVER\n";
        return exit_usage;
    }

    const VerificationReport result = run_sequence(obligations, spec.placeholders, cfg);
    report["steps"] = json::array();
    if (!opts.json)
        out << "steps:\n";
    for (const auto& step : result.steps) {
        if (opts.json) {
            json s;
            s["name"] = step.name;
            s["direction"] = to_string(step.direction);
            s["verdict"] = to_string(step.verdict);
            s["seconds"] = step.seconds;
            report["steps"].push_back(std::move(s));
        } else {
            out << "  " << step.name << ": " << to_string(step.verdict)
                << "  time=" << format_seconds(step.seconds) << "s\n";
        }
    }
    report["result"] = to_string(result.overall);
    if (opts.json)
        out << report.dump(2) << "\n";
    else
        out << "result: " << to_string(result.overall) << "\n";
    return result.overall == Overall::Verified ? exit_success : exit_incomplete;
}

int cmd_oracle(const OracleOptions& opts, std::ostream& out, std::ostream& err) {
    const auto loaded = load(opts.program_path, opts.spec_path, err);
    if (!loaded)
        return exit_usage;
    const IOProgram& io = loaded->io;

    Input input;
    for (const auto& [name, text] : opts.lets) {
        if (!io.placeholders.count(name)) {
            err << "error: '" << name << "' is not a placeholder\n";
            return exit_usage;
        }
        input.valuation.insert_or_assign(name, parse_value(text));
    }
    if (!opts.input_path.empty()) {
        const auto text = read_file(opts.input_path);
        if (!text) {
            err << "error: cannot read input file " << opts.input_path << "\n";
            return exit_usage;
        }
        try {
            for (const auto& rule : parse_program(*text).rules) {
                if (rule.head.kind != Head::Kind::Basic || !rule.body.empty())
                    throw std::invalid_argument("input file must contain only facts");
                GroundAtom atom{rule.head.atom->predicate, {}};
                for (const auto& arg : rule.head.atom->args)
                    atom.args.push_back(value_of_precomputed(arg));
                input.atoms.insert(std::move(atom));
            }
        } catch (const std::exception& e) {
            err << "error: " << opts.input_path << ": " << e.what() << "\n";
            return exit_usage;
        }
    }

    const BoundedUniverse u = derive_universe(io, input, opts.int_range);
    json report;
    report["universe"] = {{"lo", u.lo},
                          {"hi", u.hi},
                          {"symbols", std::vector<std::string>(u.symbols.begin(),
                                                               u.symbols.end())}};
    try {
        const std::set<AtomSet> stable = stable_models(instantiate(io, input), u);
        const std::set<AtomSet> models = io_models(io, input, u);
        report["stable_models"] = json::array();
        for (const auto& m : stable)
            report["stable_models"].push_back(to_string(m));
        report["io_models"] = json::array();
        for (const auto& m : models)
            report["io_models"].push_back(to_string(m));
        if (!opts.json) {
            out << "universe: symbols {";
            bool first = true;
            for (const auto& s : u.symbols)
                out << (first ? first = false, "" : ", ") << s;
            out << "}, integers " << u.lo << ".." << u.hi << "\n";
            out << "stable models: " << stable.size() << "\n";
            for (const auto& m : stable)
                out << "  " << to_string(m) << "\n";
            out << "io-models: " << models.size() << "\n";
            for (const auto& m : models)
                out << "  " << to_string(m) << "\n";
        }

        if (!opts.spec_path.empty()) {
            const bool tight = is_tight(io);
            const bool recursion = uses_private_recursion(io);
            const SecondOrderSentence completion = comp(io);

            bool thm1 = true;
            for (const auto& m : models)
                thm1 = thm1 &&
                       eval_second_order(completion,
                                         BoundedInterpretation{u, input.valuation, m});
            report["theorem_1"] = thm1 ? "pass" : "fail";
            if (!opts.json)
                out << "io-models satisfy completion: " << (thm1 ? "pass" : "fail") << "\n";

            if (tight) {
                const auto completion_side = completion_models(io, completion, input, u);
                const bool thm2 = completion_side == models;
                report["theorem_2"] = thm2 ? "pass" : "fail";
                if (!opts.json)
                    out << "io-models match completion models (tight): "
                        << (thm2 ? "pass" : "fail") << "\n";
            }
            if (!recursion) {
                const SecondOrderSentence universal =
                    universalize(completion, completion_parts(io));
                const bool thm3 = completion_models(io, universal, input, u) ==
                                  completion_models(io, completion, input, u);
                report["theorem_3"] = thm3 ? "pass" : "fail";
                if (!opts.json)
                    out << "existential and universal completions agree: "
                        << (thm3 ? "pass" : "fail") << "\n";
            }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    if (opts.json)
        out << report.dump(2) << "\n";
    return exit_success;
}

}  // namespace vera
