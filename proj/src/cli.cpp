#include "eclc/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "eclc/dsl.hpp"
#include "eclc/errors.hpp"
#include "eclc/report.hpp"
#include "eclc/sim.hpp"

namespace eclc::cli {

namespace {

std::optional<std::string> read_file(const std::filesystem::path& path, std::ostream& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << "error: cannot read " << path.string() << "\n";
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::optional<ScenarioConfig> load(const std::filesystem::path& path, std::ostream& err) {
    auto text = read_file(path, err);
    if (!text) return std::nullopt;
    try {
        return parse_scenario(*text);
    } catch (const ParseError& e) {
        err << path.string() << ":" << e.what() << "\n";
    } catch (const std::exception& e) {
        err << path.string() << ": " << e.what() << "\n";
    }
    return std::nullopt;
}

bool write_file(const std::filesystem::path& path, const std::string& content, std::ostream& err) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << content;
    if (!f) {
        err << "error: cannot write " << path.string() << "\n";
        return false;
    }
    return true;
}

std::string summary(const ScenarioReport& report) {
    std::string line(to_string(report.kind));
    switch (report.kind) {
    case ScenarioKind::Coherence:
        if (report.fit)
            line += ": rate=" + format_real(report.fit->rate) + " r_squared=" + format_real(report.fit->r_squared);
        else
            line += ": no fit";
        break;
    case ScenarioKind::Reciprocity: {
        unsigned fs = 0, fn = 0, rs = 0, rn = 0;
        for (const auto& t : report.trials) {
            auto& total = t.direction == Direction::Forward ? fn : rn;
            auto& ok = t.direction == Direction::Forward ? fs : rs;
            ++total;
            ok += t.success ? 1 : 0;
        }
        line += ": forward " + std::to_string(fs) + "/" + std::to_string(fn) + ", reverse " + std::to_string(rs) +
                "/" + std::to_string(rn) + ", fisher_p=" + format_real(report.fisher_p.value_or(1.0));
        break;
    }
    case ScenarioKind::Accessibility:
        line += ": final access fraction " +
                format_real(report.per_world.empty() ? 0.0 : report.per_world.back().access_fraction);
        break;
    }
    return line;
}

}  // namespace

int cmd_validate(const std::filesystem::path& path, std::ostream& out, std::ostream& err) {
    auto config = load(path, err);
    if (!config) return kFailure;
    out << "OK: " << config->frame.worlds().size() << " worlds, " << config->frame.edges().size() << " edges, "
        << config->observers.size() << " observers\n";
    return kOk;
}

int cmd_prove(const std::filesystem::path& path, const std::string& sequent, const std::optional<std::string>& world,
              std::ostream& out, std::ostream& err) {
    auto config = load(path, err);
    if (!config) return kFailure;
    const NamedSequent* named = config->find_sequent(sequent);
    if (!named) {
        err << "error: no sequent named '" << sequent << "' in " << path.string() << "\n";
        return kUsage;
    }
    const WorldId at = world.value_or(named->source);
    if (!config->frame.contains(at)) {
        err << "error: unknown world '" << at << "'\n";
        return kUsage;
    }
    const World& w = config->frame.world(at);
    const CostModel& model = config->cost_model;
    ProofResult result = prove(named->sequent, w.lambda, model, w.kappa, config->frame.laws());

    double gamma_cost = 0.0, delta_cost = 0.0;
    for (const auto& f : named->sequent.gamma) gamma_cost += curvature_cost(f, model, w.kappa);
    for (const auto& f : named->sequent.delta) delta_cost += curvature_cost(f, model, w.kappa);

    out << named->name << ": " << format_sequent(named->sequent) << "  at " << at << " (lambda=" << w.lambda
        << ", kappa=" << format_real(w.kappa) << ")\n";
    if (result.proved)
        out << "proved, depth " << result.depth << "\n" << render_derivation(*result.tree);
    else
        out << "not proved: " << to_string(result.failure_reason.value_or(FailureReason::NoRuleApplies)) << "\n";
    out << "cost: gamma " << format_real(gamma_cost) << " vs delta " << format_real(delta_cost) << "\n";
    return result.proved ? kOk : kFailure;
}

int cmd_run(const std::filesystem::path& path, const RunOptions& options, std::ostream& out, std::ostream& err) {
    auto config = load(path, err);
    if (!config) return kFailure;
    if (options.seed)
        config->seed = options.seed;
    else if (!config->seed && options.env_seed)
        config->seed = options.env_seed;
    if (options.trials) config->trials = *options.trials;

    ScenarioReport report;
    try {
        report = run_scenario(*config);
    } catch (const std::exception& e) {
        err << path.string() << ": " << e.what() << "\n";
        return kFailure;
    }

    std::vector<std::pair<std::filesystem::path, std::string>> files;
    if (options.format != OutputFormat::Csv) files.emplace_back(options.out_dir / "report.json", report_to_json(report));
    if (options.format != OutputFormat::Json) {
        files.emplace_back(options.out_dir / "per_world.csv", per_world_csv(report));
        files.emplace_back(options.out_dir / "trials.csv", trials_csv(report));
    }
    std::error_code ec;
    std::filesystem::create_directories(options.out_dir, ec);
    if (ec) {
        err << "error: cannot create " << options.out_dir.string() << ": " << ec.message() << "\n";
        return kFailure;
    }
    for (const auto& [file, content] : files)
        if (!write_file(file, content, err)) return kFailure;
    out << summary(report) << "\n";
    return kOk;
}

int cmd_fit(const std::filesystem::path& csv, std::ostream& out, std::ostream& err) {
    auto text = read_file(csv, err);
    if (!text) return kFailure;
    std::vector<std::pair<double, double>> points;
    std::istringstream lines(*text);
    std::string line;
    unsigned line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const auto comma = line.find(',');
        auto kappa = comma == std::string::npos ? std::nullopt : parse_real(line.substr(0, comma));
        auto pi = comma == std::string::npos ? std::nullopt : parse_real(line.substr(comma + 1));
        if (kappa && pi) {
            points.emplace_back(*kappa, *pi);
        } else if (line_no != 1 || !points.empty()) {
            err << csv.string() << ":" << line_no << ": expected two numbers 'kappa,pi'\n";
            return kFailure;
        }
    }
    try {
        FitResult fit = fit_exponential(points);
        out << "rate=" << format_real(fit.rate) << " r_squared=" << format_real(fit.r_squared) << "\n";
    } catch (const DegenerateInput& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Resource-bounded inference over weighted Kripke frames", "eclc"};
    app.require_subcommand(1);

    std::string path;
    auto* validate = app.add_subcommand("validate", "Parse a scenario file and report its size");
    validate->add_option("path", path, "Scenario file")->required();

    std::string sequent;
    std::optional<std::string> world;
    auto* prove_cmd = app.add_subcommand("prove", "Prove a named sequent of a scenario file");
    prove_cmd->add_option("path", path, "Scenario file")->required();
    prove_cmd->add_option("--sequent", sequent, "Sequent name")->required();
    prove_cmd->add_option("--world", world, "World whose lambda and kappa apply");

    RunOptions options;
    std::string format = "both";
    std::string out_dir = ".";
    auto* run_cmd = app.add_subcommand("run", "Run the scenario and write report files");
    run_cmd->add_option("path", path, "Scenario file")->required();
    run_cmd->add_option("--seed", options.seed, "Master seed");
    run_cmd->add_option("--trials", options.trials, "Number of trials")->check(CLI::PositiveNumber);
    run_cmd->add_option("--out", out_dir, "Output directory");
    run_cmd->add_option("--format", format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));

    auto* fit_cmd = app.add_subcommand("fit", "Fit exp(-rate*kappa) to a kappa,pi CSV");
    fit_cmd->add_option("csv", path, "CSV file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return kUsage;
    }

    if (*validate) return cmd_validate(path, out, err);
    if (*prove_cmd) return cmd_prove(path, sequent, world, out, err);
    if (*fit_cmd) return cmd_fit(path, out, err);

    options.out_dir = out_dir;
    options.format = format == "json" ? OutputFormat::Json : format == "csv" ? OutputFormat::Csv : OutputFormat::Both;
    if (const char* env = std::getenv("ECLC_SEED")) {
        std::uint64_t value = 0;
        const std::string_view text(env);
        auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || end != text.data() + text.size()) {
            err << "error: ECLC_SEED must be an unsigned integer\n";
            return kUsage;
        }
        options.env_seed = value;
    }
    return cmd_run(path, options, out, err);
}

}  // namespace eclc::cli
