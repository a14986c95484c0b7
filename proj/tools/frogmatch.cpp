// frogmatch: command-line front end for the matching engine, game solver,
// experiment harness and session server.

#include "frogs/experiments.hpp"
#include "frogs/grundy.hpp"
#include "frogs/playout.hpp"
#include "frogs/pointset_io.hpp"
#include "frogs/retrograde.hpp"
#include "frogs/session_http.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace frogs;

int run_experiment(const std::string& id_text, const std::string& grid_text, std::optional<std::size_t> trials,
                   std::uint64_t seed, const std::string& region_text, const std::string& out,
                   std::string format_text, bool serial, bool timing)
{
    auto spec = ExperimentSpec::defaults(parse_experiment_id(id_text));
    if (!grid_text.empty())
        spec.grid = parse_grid(grid_text);
    if (trials)
        spec.trials = *trials;
    spec.seed = seed;
    if (!region_text.empty())
        spec.region = Region::parse(region_text);

    auto report = run(spec, serial ? Execution::serial : Execution::parallel);

    if (format_text.empty())
        format_text = out.size() >= 4 && out.substr(out.size() - 4) == ".csv" ? "csv" : "json";
    const auto format = format_text == "csv" ? ReportFormat::csv : ReportFormat::json;
    EmitOptions options{timing};
    if (out.empty() || out == "-")
        std::cout << (format == ReportFormat::csv ? report_to_csv(report, options) : report_to_json(report, options));
    else
        emit(report, format, out, options);

    for (const auto& c : report.checks)
        std::cerr << '[' << to_string(c.status) << "] " << c.name << (c.detail.empty() ? "" : ": ") << c.detail << '\n';
    if (timing)
        std::cerr << "wall " << report.wall_seconds << " s\n";
    return report.passed() ? 0 : 2;
}

std::string describe(const Position& p)
{
    return to_string(p);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Stable matchings and friendly-frog games on point sets"};
    app.require_subcommand(1);

    // experiment
    auto* exp = app.add_subcommand("experiment", "Run a seeded Monte Carlo experiment");
    std::string exp_id, grid, region, out, format;
    std::optional<std::size_t> trials;
    std::uint64_t seed = 1;
    bool serial = false, timing = false;
    exp->add_option("id", exp_id, "parity | perfectness | two_color_phase | shy_desire_growth | fussy_scan | grundy_interval")
        ->required();
    exp->add_option("--grid", grid, "Parameter grid, k=v,k=v2,...");
    exp->add_option("--trials", trials, "Trials per cell");
    exp->add_option("--seed", seed, "Master seed");
    exp->add_option("--region", region, "kind:side:dim, e.g. torus:20:2");
    exp->add_option("--out", out, "Report path (stdout if omitted)");
    exp->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    exp->add_flag("--serial", serial, "Run trials on one thread");
    exp->add_flag("--timing", timing, "Include wall-clock time in the report");

    // match
    auto* match = app.add_subcommand("match", "Stable matching of a point-set file");
    std::string file, variant = "plain";
    match->add_option("file", file)->required()->check(CLI::ExistingFile);
    match->add_option("--variant", variant, "plain | misere | two_color | fussy | multi:<m>");

    // solve
    auto* solve = app.add_subcommand("solve", "Classify the opening of a game on a point-set file");
    std::string ruleset = "plain";
    bool oracle = false;
    solve->add_option("file", file)->required()->check(CLI::ExistingFile);
    solve->add_option("--ruleset", ruleset);
    solve->add_flag("--oracle", oracle, "Cross-check with exhaustive retrograde analysis");

    // grundy
    auto* grundy = app.add_subcommand("grundy", "Sprague-Grundy values of all pairs");
    grundy->add_option("file", file)->required()->check(CLI::ExistingFile);

    // play
    auto* play = app.add_subcommand("play", "Play a game out and print the transcript as CSV");
    std::string alice = "engine", bob = "engine";
    play->add_option("file", file)->required()->check(CLI::ExistingFile);
    play->add_option("--ruleset", ruleset);
    play->add_option("--seed", seed);
    play->add_option("--alice", alice)->check(CLI::IsMember({"engine", "random"}));
    play->add_option("--bob", bob)->check(CLI::IsMember({"engine", "random"}));

    // sample
    auto* sample = app.add_subcommand("sample", "Write a random point set");
    std::size_t n = 0;
    double intensity = 0.0;
    std::string colors;
    sample->add_option("--n", n, "Exact number of uniform points");
    sample->add_option("--intensity", intensity, "Poisson intensity (instead of --n)");
    sample->add_option("--region", region)->required();
    sample->add_option("--seed", seed);
    sample->add_option("--colors", colors, "Two colours, e.g. amber,blue");

    // serve
    auto* srv = app.add_subcommand("serve", "Serve the session API over HTTP");
    std::string host = "127.0.0.1", store_dir;
    int port = 8080;
    srv->add_option("--host", host);
    srv->add_option("--port", port);
    srv->add_option("--store", store_dir, "Directory for session files (in memory if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*exp)
            return run_experiment(exp_id, grid, trials, seed, region, out, format, serial, timing);

        if (*match) {
            const auto set = read_point_set_file(file);
            const auto v = MatchingVariant::parse(variant);
            std::cout << export_matching(compute_matching(set, v));
            return 0;
        }

        if (*solve) {
            const auto set = read_point_set_file(file);
            const auto rules = Ruleset::parse(ruleset);
            Engine engine(set, rules);
            const auto outcome = engine.evaluate(Position::start());
            std::cout << "ruleset " << rules.name() << "\nwinner " << to_string(outcome.winner) << '\n';
            if (!engine.uses_oracle()) {
                const auto opening = opening_move(set, rules, Position::start(), engine.certificate());
                std::cout << "opening " << describe(opening.result) << (opening.winning ? " (winning)" : "") << '\n';
            }
            if (oracle) {
                const auto table = solve_retrograde(set, rules);
                const bool agree = table.winner() == outcome.winner;
                std::cout << "oracle " << to_string(table.winner()) << (agree ? " (agrees)" : " (DISAGREES)") << '\n';
                return agree ? 0 : 2;
            }
            return 0;
        }

        if (*grundy) {
            const auto set = read_point_set_file(file);
            std::cout << grundy_table(set).export_text();
            return 0;
        }

        if (*play) {
            const auto set = read_point_set_file(file);
            const auto pick = [](const std::string& s) { return s == "random" ? random_strategy() : engine_strategy(); };
            const auto t = play_out(set, Ruleset::parse(ruleset), pick(alice), pick(bob), seed);
            std::cout << transcript_csv(t) << "# winner " << to_string(t.winner) << '\n';
            return 0;
        }

        if (*sample) {
            const auto r = Region::parse(region);
            Color first = Color::none, second = Color::none;
            if (!colors.empty()) {
                const auto comma = colors.find(',');
                auto a = parse_color(colors.substr(0, comma));
                auto b = comma == std::string::npos ? std::nullopt : parse_color(colors.substr(comma + 1));
                if (!a || !b)
                    throw std::invalid_argument("--colors needs two colour names, e.g. amber,blue");
                first = *a;
                second = *b;
            }
            const bool colored = first != Color::none;
            const auto set = [&] {
                if (n > 0)
                    return colored ? sample_uniform_colored(n, r, seed, first, second) : sample_uniform(n, r, seed);
                if (intensity > 0.0)
                    return colored ? sample_colored({intensity, intensity, r, seed, first, second})
                                   : sample_poisson({intensity, r, seed});
                throw std::invalid_argument("give --n or --intensity");
            }();
            write_point_set(std::cout, set);
            return 0;
        }

        if (*srv) {
            std::shared_ptr<SessionStore> store;
            if (store_dir.empty())
                store = std::make_shared<MemoryStore>();
            else
                store = std::make_shared<FileStore>(store_dir);
            SessionService service(store);
            std::cerr << "listening on " << host << ':' << port << '\n';
            return serve(service, host, port) ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
