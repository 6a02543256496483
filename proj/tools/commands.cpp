#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "lsinfer/bench.hpp"
#include "lsinfer/corpus.hpp"
#include "lsinfer/deduce.hpp"
#include "lsinfer/error.hpp"
#include "lsinfer/fitness.hpp"
#include "lsinfer/genome.hpp"
#include "lsinfer/infer.hpp"
#include "lsinfer/oracle.hpp"
#include "lsinfer/subproblem.hpp"
#include "lsinfer/text_format.hpp"
#include "lsinfer/tune.hpp"

namespace lsinfer::cli {
namespace {

using nlohmann::json;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write '" + path + "'");
    f << text;
    if (!f) throw IoError("failed writing '" + path + "'");
}

struct InputOptions {
    std::string file;
    std::string model;
    std::size_t depth = 0;
    std::string variables;
    std::string turtle{kTurtleGlyphs};
};

void add_input(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("observations", in.file, "Observation file, one word per line");
    cmd->add_option("--model", in.model, "Use a built-in corpus entry instead of a file");
    cmd->add_option("--depth", in.depth, "Derivation steps observed for --model");
    cmd->add_option("--variables", in.variables, "Turtle glyphs to treat as variables (e.g. F)");
    cmd->add_option("--turtle", in.turtle, "Glyphs that are turtle-identity symbols");
}

ObservationSequence load_observations(const InputOptions& in) {
    if (!in.model.empty()) {
        const auto corpus = builtin_corpus();
        const auto& entry = find_entry(corpus, in.model);
        return derive_sequence(entry.system, in.depth > 0 ? in.depth : entry.depth);
    }
    if (in.file.empty()) throw UsageError("an observation file or --model is required");
    ObservationFormat format;
    format.turtle = in.turtle;
    format.variables = in.variables;
    return parse_observations(read_file(in.file), format);
}

struct GaOptions {
    std::uint64_t seed = 0;
    double budget = 14400.0;
    std::size_t population = 100;
    double crossover = 0.85;
    double mutation = 0.10;
    std::size_t min_generations = 1000;
};

void add_ga(CLI::App* cmd, GaOptions& ga) {
    cmd->add_option("--seed", ga.seed, "Random seed");
    cmd->add_option("--budget-seconds", ga.budget, "Wall-clock budget per run");
    cmd->add_option("--population", ga.population, "Population size");
    cmd->add_option("--crossover", ga.crossover, "Crossover weight");
    cmd->add_option("--mutation", ga.mutation, "Mutation weight");
    cmd->add_option("--min-generations", ga.min_generations,
                    "Generations before convergence may stop a run");
}

GAConfig to_config(const GaOptions& ga) {
    GAConfig c;
    c.seed = ga.seed;
    c.time_budget_seconds = ga.budget;
    c.population_size = ga.population;
    c.crossover_weight = ga.crossover;
    c.mutation_weight = ga.mutation;
    c.min_generations = ga.min_generations;
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return c;
}

json fitness_json(double f) {
    if (is_sentinel(f)) return "sentinel";
    return f;
}

// ---------------------------------------------------------------- derive

int cmd_derive(const std::string& file, const std::string& model, std::size_t steps,
               const std::string& output, std::ostream& out) {
    std::optional<LSystem> system;
    if (!model.empty()) {
        const auto corpus = builtin_corpus();
        system = find_entry(corpus, model).system;
    } else if (!file.empty()) {
        system = parse_lsystem(read_file(file));
    } else {
        throw UsageError("a system file or --model is required");
    }
    write_text(output, format_observations(derive_sequence(*system, steps)), out);
    return kExitOk;
}

// ---------------------------------------------------------------- infer

int cmd_infer(const InputOptions& in, const GaOptions& ga, bool progress, std::ostream& out,
              std::ostream& err) {
    const auto obs = load_observations(in);
    const auto config = to_config(ga);
    InferOptions options;
    if (progress) {
        options.progress = [&err](const Progress& p) {
            err << "generation " << p.generation << " best " << format_fitness(p.best_fitness)
                << " elapsed " << p.elapsed_seconds << "s\n";
        };
    }
    const auto result = infer(obs, config, options);
    json j;
    j["solved"] = result.solved();
    j["lsystem"] = result.solved() ? json(format_lsystem(*result.system)) : json(nullptr);
    j["generations"] = result.generations;
    j["elapsed_ms"] = static_cast<std::int64_t>(result.elapsed_seconds * 1000.0);
    j["best_fitness"] = fitness_json(result.best_fitness);
    j["seed"] = result.seed;
    if (!result.solved()) j["reason"] = to_string(result.reason);
    out << j.dump() << "\n";
    return result.solved() ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------- deduce

void apply_assumption(const std::string& text, const Alphabet& alphabet, BoundsTable& table) {
    static const std::regex length_re(R"(^\s*(\S)_(min|max)\s*=\s*(\d+)\s*$)");
    static const std::regex growth_re(R"(^\s*\((\S),(\S)\)_(min|max)\s*=\s*(\d+)\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, length_re)) {
        const auto a = alphabet.id_of(m[1].str()[0]);
        const auto v = std::stoll(m[3].str());
        if (m[2] == "min") table.length.min[a] = v;
        else table.length.max[a] = Bound(v);
        return;
    }
    if (std::regex_match(text, m, growth_re)) {
        const auto a = alphabet.id_of(m[1].str()[0]);
        const auto b = alphabet.id_of(m[2].str()[0]);
        const auto v = std::stoll(m[4].str());
        if (m[3] == "min") table.growth.lo(a, b) = v;
        else table.growth.hi(a, b) = Bound(v);
        return;
    }
    throw UsageError("cannot read assumption '" + text + "' (use A_min=2 or (A,B)_max=3)");
}

json table_json(const BoundsTable& t, const ObservationSequence& obs) {
    const auto& alphabet = obs.alphabet();
    auto bound = [](Bound b) { return b.bounded() ? json(b.value()) : json("inf"); };
    json j;
    j["alphabet"] = alphabet.glyphs();
    j["variables"] = json::array();
    for (auto a : alphabet.variables()) {
        const std::string g(1, alphabet.glyph(a));
        json row;
        row["symbol"] = g;
        row["length"] = {t.length.min[a], bound(t.length.max[a])};
        json growth = json::object();
        for (auto b : alphabet.ids()) {
            growth[std::string(1, alphabet.glyph(b))] = {t.growth.lo(a, b), bound(t.growth.hi(a, b))};
        }
        row["growth"] = growth;
        row["prefix"] = format_word(t.fragments.prefix[a], alphabet);
        row["suffix"] = format_word(t.fragments.suffix[a], alphabet);
        const auto& sup = t.fragments.superstring[a];
        row["superstring"] = sup ? json(format_word(*sup, alphabet)) : json(nullptr);
        j["variables"].push_back(row);
    }
    json steps = json::array();
    for (std::size_t i = 1; i < obs.size(); ++i) {
        if (auto total = step_total_max(obs, t, i)) {
            steps.push_back({{"step", i},
                             {"pivot", std::string(1, alphabet.glyph(total->pivot))},
                             {"pivot_max", bound(total->pivot_max)},
                             {"total_max", bound(total->total_max)}});
        }
    }
    j["steps"] = steps;
    return j;
}

std::string table_text(const BoundsTable& t, const ObservationSequence& obs) {
    const auto& alphabet = obs.alphabet();
    std::ostringstream os;
    for (auto a : alphabet.variables()) {
        const std::string g(1, alphabet.glyph(a));
        os << g << "_min=" << t.length.min[a] << "\n" << g << "_max=" << t.length.max[a].to_string()
           << "\n";
        for (auto b : alphabet.ids()) {
            const std::string h(1, alphabet.glyph(b));
            os << "(" << g << "," << h << ")_min=" << t.growth.lo(a, b) << "\n";
            os << "(" << g << "," << h << ")_max=" << t.growth.hi(a, b).to_string() << "\n";
        }
        os << "prefix(" << g << ")=" << format_word(t.fragments.prefix[a], alphabet) << "\n";
        os << "suffix(" << g << ")=" << format_word(t.fragments.suffix[a], alphabet) << "\n";
        if (const auto& sup = t.fragments.superstring[a]) {
            os << "superstring(" << g << ")=" << format_word(*sup, alphabet) << "\n";
        }
    }
    for (std::size_t i = 1; i < obs.size(); ++i) {
        const auto total = step_total_max(obs, t, i);
        if (!total) continue;
        const std::string y(1, alphabet.glyph(total->pivot));
        os << "step " << i << ": Y=" << y << " " << y << "_max=" << total->pivot_max.to_string()
           << " V_max=" << total->total_max.to_string() << "\n";
        for (auto a : alphabet.variables()) {
            if (obs.count(i - 1, a) == 0) continue;
            os << "step " << i << ": claim " << alphabet.glyph(a)
               << "_max=" << claim_length_max(obs, t, i, a).to_string() << "\n";
        }
    }
    return os.str();
}

int cmd_deduce(const InputOptions& in, const std::vector<std::string>& assumptions,
               bool single_pass, bool as_json, bool dump_schema, std::ostream& out,
               std::ostream& err) {
    const auto obs = load_observations(in);
    auto table = initialize_bounds(obs);
    for (const auto& a : assumptions) apply_assumption(a, obs.alphabet(), table);
    try {
        if (single_pass) {
            record_fragments(obs, table);
            growth_from_fragments(table);
            check_feasible(table, obs.alphabet());
        } else {
            table = deduce_fixpoint(obs, std::move(table));
        }
    } catch (const Infeasible& e) {
        err << "infeasible: " << e.what() << "\n";
        return kExitFailed;
    }
    if (as_json) {
        out << table_json(table, obs).dump(2) << "\n";
    } else {
        out << table_text(table, obs);
    }
    if (dump_schema) {
        const auto stages = subproblem_sequence(obs.alphabet());
        const auto scoped = deduce_scope(obs, table, stages.front());
        const auto schema =
            build_schema(scoped, stages.front(), project_observations(obs, stages.front().scope));
        out << schema.describe();
    }
    return kExitOk;
}

// ---------------------------------------------------------------- oracle

int cmd_oracle(const InputOptions& in, const std::string& mode_name, std::size_t limit,
               std::uint64_t cap, std::ostream& out, std::ostream& err) {
    const auto obs = load_observations(in);
    SearchMode mode;
    if (mode_name == "raw") mode = SearchMode::Raw;
    else if (mode_name == "bounded") mode = SearchMode::Bounded;
    else throw UsageError("--mode must be raw or bounded");
    OracleOptions options;
    options.candidate_cap = cap;
    try {
        const auto found = enumerate_consistent(obs, mode, std::max<std::size_t>(limit, 1), options);
        if (found.empty()) {
            err << "no consistent system\n";
            return kExitFailed;
        }
        for (std::size_t i = 0; i < found.size(); ++i) {
            if (i > 0) out << "\n";
            out << format_lsystem(found[i]);
        }
        return kExitOk;
    } catch (const BudgetExceeded& e) {
        err << "gave up: " << e.what() << "\n";
        return kExitGaveUp;
    }
}

// ---------------------------------------------------------------- generate

std::string file_stem(const std::string& name) {
    std::string s;
    for (char c : name) s += std::isalnum(static_cast<unsigned char>(c)) ? static_cast<char>(std::tolower(c)) : '_';
    return s;
}

int cmd_generate(bool whole_grid, std::size_t k, std::size_t len, std::uint64_t seed,
                 const std::string& out_path, std::ostream& out, std::ostream& err) {
    const auto donors = builtin_corpus();
    Rng rng(seed);
    if (!whole_grid) {
        if (k == 0 || len == 0) throw UsageError("give --grid or both --alphabet-size and --length");
        try {
            const auto entry = generate_bootstrap(k, len, donors, rng);
            write_text(out_path, "# " + entry.name + "\n" + format_lsystem(entry.system), out);
        } catch (const Unsatisfiable& e) {
            err << "unsatisfiable: " << e.what() << "\n";
            return kExitFailed;
        }
        return kExitOk;
    }
    if (out_path.empty() || out_path == "-") throw UsageError("--grid needs --out <directory>");
    std::filesystem::create_directories(out_path);
    std::size_t written = 0;
    for (const auto& cell : grid(donors, rng)) {
        if (!cell.entry) {
            err << "skipped k=" << cell.alphabet_size << " L=" << cell.max_successor_len << ": "
                << cell.note << "\n";
            continue;
        }
        const auto path = std::filesystem::path(out_path) / (file_stem(cell.entry->name) + ".lsys");
        write_text(path.string(), "# " + cell.entry->name + "\n" + format_lsystem(cell.entry->system), out);
        ++written;
    }
    out << written << " systems written to " << out_path << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- bench

std::vector<CorpusEntry> select_entries(const std::string& selector, bool with_grid,
                                        std::uint64_t seed, std::size_t max_sum) {
    auto corpus = builtin_corpus();
    std::vector<CorpusEntry> chosen;
    if (selector == "all" || selector == "fractal" || selector == "plant") {
        for (auto& e : corpus) {
            if (selector == "all" || e.tags.count(selector)) chosen.push_back(e);
        }
    } else if (!selector.empty()) {
        std::stringstream ss(selector);
        std::string name;
        while (std::getline(ss, name, ',')) chosen.push_back(find_entry(corpus, name));
    }
    if (with_grid) {
        Rng rng(seed);
        for (auto& cell : grid(corpus, rng)) {
            if (cell.entry && (max_sum == 0 || cell.entry->system.successor_sum() <= max_sum)) {
                chosen.push_back(std::move(*cell.entry));
            }
        }
    }
    return chosen;
}

int cmd_bench(const std::string& selector, bool with_grid, std::size_t max_sum, std::size_t reps,
              const GaOptions& ga, const std::string& out_path, std::ostream& out, std::ostream& err) {
    const auto config = to_config(ga);
    const auto entries = select_entries(selector, with_grid, ga.seed, max_sum);
    if (entries.empty()) throw UsageError("no models selected");
    std::vector<RunReport> reports;
    for (const auto& e : entries) {
        try {
            reports.push_back(bench_entry(e, reps, config));
            err << bench_csv_row(reports.back()) << "\n";
        } catch (const std::exception& ex) {
            err << e.name << ": " << ex.what() << "\n";
            RunReport failed;
            failed.name = e.name;
            failed.alphabet_size = e.system.alphabet().variables().size();
            failed.longest_successor = e.system.longest_successor();
            failed.successor_sum = e.system.successor_sum();
            failed.budget_seconds = config.time_budget_seconds;
            reports.push_back(failed);
        }
    }
    write_text(out_path, bench_csv(reports), out);
    return kExitOk;
}

// ---------------------------------------------------------------- tune

int cmd_tune(const std::string& models, std::size_t trials, double trial_budget,
             std::size_t max_rounds, const GaOptions& ga, std::ostream& out) {
    const auto corpus = builtin_corpus();
    std::vector<ObservationSequence> calibration;
    std::stringstream ss(models);
    std::string name;
    while (std::getline(ss, name, ',')) calibration.push_back(find_entry(corpus, name).observe());
    TuneOptions options;
    options.trials_per_round = trials;
    options.trial_budget_seconds = trial_budget;
    options.max_rounds = max_rounds;
    Rng rng(ga.seed);
    const auto result = tune_hyperparameters(calibration, options, rng, to_config(ga));
    json j;
    j["population"] = result.best.population_size;
    j["crossover"] = result.best.crossover_weight;
    j["mutation"] = result.best.mutation_weight;
    j["mean_fitness"] = result.best_score.mean_fitness;
    j["mean_seconds"] = result.best_score.mean_seconds;
    j["rounds"] = result.rounds;
    j["trials"] = json::array();
    for (const auto& t : result.trials) {
        j["trials"].push_back({{"round", t.round},
                               {"population", t.config.population_size},
                               {"crossover", t.config.crossover_weight},
                               {"mutation", t.config.mutation_weight},
                               {"mean_fitness", t.score.mean_fitness},
                               {"mean_seconds", t.score.mean_seconds}});
    }
    out << j.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Infer deterministic L-systems from observed derivations", "lsinfer"};
    app.require_subcommand(1);

    std::string system_file, model, output;
    std::size_t steps = 0;
    auto* derive_cmd = app.add_subcommand("derive", "Write the first n+1 words of a system");
    derive_cmd->add_option("system", system_file, "L-system file");
    derive_cmd->add_option("--model", model, "Built-in corpus entry");
    derive_cmd->add_option("-n,--steps", steps, "Derivation steps")->required();
    derive_cmd->add_option("-o,--out", output, "Output file (default stdout)");

    InputOptions infer_in;
    GaOptions infer_ga;
    bool progress = false;
    auto* infer_cmd = app.add_subcommand("infer", "Infer a system from observations");
    add_input(infer_cmd, infer_in);
    add_ga(infer_cmd, infer_ga);
    infer_cmd->add_flag("--progress", progress, "Print status lines to stderr");

    InputOptions deduce_in;
    std::vector<std::string> assumptions;
    bool single_pass = false, as_json = false, dump_schema = false;
    auto* deduce_cmd = app.add_subcommand("deduce", "Print the deduced bounds table");
    add_input(deduce_cmd, deduce_in);
    deduce_cmd->add_option("--assume", assumptions, "Known bound, e.g. A_min=2 or (A,F)_max=2");
    deduce_cmd->add_flag("--single-pass", single_pass, "Only extract fragments once");
    deduce_cmd->add_flag("--json", as_json, "JSON output");
    deduce_cmd->add_flag("--dump-schema", dump_schema, "Describe the first genome schema");

    InputOptions oracle_in;
    std::string mode = "bounded";
    std::size_t limit = 1;
    std::uint64_t cap = 1'000'000'000;
    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive search for a consistent system");
    add_input(oracle_cmd, oracle_in);
    oracle_cmd->add_option("--mode", mode, "raw or bounded");
    oracle_cmd->add_option("--limit", limit, "Number of systems to list");
    oracle_cmd->add_option("--cap", cap, "Candidate cap");

    bool whole_grid = false;
    std::size_t gen_k = 0, gen_len = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    auto* generate_cmd = app.add_subcommand("generate", "Bootstrap generated systems");
    generate_cmd->add_flag("--grid", whole_grid, "Write the full alphabet/length grid");
    generate_cmd->add_option("-k,--alphabet-size", gen_k, "Number of variables");
    generate_cmd->add_option("-L,--length", gen_len, "Longest successor length");
    generate_cmd->add_option("--seed", gen_seed, "Random seed");
    generate_cmd->add_option("--out", gen_out, "Output file, or directory with --grid");

    std::string selector;
    bool bench_grid = false;
    std::size_t max_sum = 0, reps = 10;
    GaOptions bench_ga;
    std::string bench_out;
    auto* bench_cmd = app.add_subcommand("bench", "Success rate and time to solve per model");
    bench_cmd->add_option("models", selector, "all, fractal, plant, or comma-separated names");
    bench_cmd->add_flag("--grid", bench_grid, "Add the generated grid entries");
    bench_cmd->add_option("--max-sum", max_sum, "Skip grid entries with a larger successor sum");
    bench_cmd->add_option("--reps", reps, "Repetitions per model");
    add_ga(bench_cmd, bench_ga);
    bench_cmd->add_option("--out", bench_out, "CSV file (default stdout)");

    std::string tune_models = "Algae,Cantor Dust,Koch Curve";
    std::size_t trials = 16, max_rounds = 100;
    double trial_budget = 60.0;
    GaOptions tune_ga;
    auto* tune_cmd = app.add_subcommand("tune", "Random search over GA settings");
    tune_cmd->add_option("--models", tune_models, "Calibration models, comma-separated");
    tune_cmd->add_option("--trials", trials, "Trials per round");
    tune_cmd->add_option("--trial-budget", trial_budget, "Seconds per calibration run");
    tune_cmd->add_option("--max-rounds", max_rounds, "Round limit");
    add_ga(tune_cmd, tune_ga);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*derive_cmd) return cmd_derive(system_file, model, steps, output, out);
        if (*infer_cmd) return cmd_infer(infer_in, infer_ga, progress, out, err);
        if (*deduce_cmd)
            return cmd_deduce(deduce_in, assumptions, single_pass, as_json, dump_schema, out, err);
        if (*oracle_cmd) return cmd_oracle(oracle_in, mode, limit, cap, out, err);
        if (*generate_cmd)
            return cmd_generate(whole_grid, gen_k, gen_len, gen_seed, gen_out, out, err);
        if (*bench_cmd)
            return cmd_bench(selector, bench_grid, max_sum, reps, bench_ga, bench_out, out, err);
        if (*tune_cmd) return cmd_tune(tune_models, trials, trial_budget, max_rounds, tune_ga, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitError;
}

}  // namespace lsinfer::cli
