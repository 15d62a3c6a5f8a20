/**
 * Command-line front end. One JSON document per invocation on stdout in
 * machine mode; human-readable tables otherwise; diagnostics on stderr.
 *
 * Exit codes: 0 feasible/success, 1 infeasible (or no scan witness found),
 * 2 input/validation error.
 */

#include "uqd/discrimination.hpp"
#include "uqd/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInputError = 2;

struct GlobalOptions {
    bool machine = false;
    std::optional<double> tol_rel;
    std::optional<double> tol_abs;
};

uqd::ChannelSet load_set(const std::string& path, const GlobalOptions& opts) {
    uqd::ChannelSet set = uqd::io::load_channel_set(path);
    if (opts.tol_rel) set.tol.rel = *opts.tol_rel;
    if (opts.tol_abs) set.tol.abs = *opts.tol_abs;
    return set;
}

json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw uqd::io::ParseError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw uqd::io::ParseError(path + ": " + e.what());
    }
}

std::vector<std::string> names_of(const uqd::ChannelSet& set) {
    std::vector<std::string> names;
    for (const auto& c : set.channels) names.push_back(c.name);
    return names;
}

std::vector<double> parse_probe(const std::string& text) {
    std::vector<double> coeffs;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            std::size_t used = 0;
            coeffs.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw uqd::io::ParseError("--probe: cannot parse '" + item + "' as a number");
        }
    }
    if (coeffs.empty()) throw uqd::io::ParseError("--probe: empty coefficient list");
    return coeffs;
}

std::size_t resolve_channel(const std::string& truth, const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == truth) return i;
    try {
        std::size_t used = 0;
        const long long index = std::stoll(truth, &used);
        if (used == truth.size() && index >= 1 && index <= static_cast<long long>(names.size()))
            return static_cast<std::size_t>(index - 1);
    } catch (const std::exception&) {
    }
    throw uqd::io::ParseError("--truth: no channel named '" + truth +
                              "' and not a valid 1-based index");
}

void emit(const json& doc, const GlobalOptions& opts, const std::string& human) {
    if (opts.machine) {
        std::cout << doc.dump() << "\n";
    } else {
        std::cout << human;
    }
}

std::string feasibility_human(const uqd::FeasibilityReport& report,
                              const std::vector<std::string>& names) {
    std::ostringstream out;
    const char* mode = report.mode == uqd::FeasibilityMode::SingleUse ? "single use" : "multiple uses";
    out << "unambiguous discrimination with " << mode << ": "
        << (report.overall ? "FEASIBLE" : "INFEASIBLE") << "\n";
    for (std::size_t i = 0; i < report.per_channel.size(); ++i) {
        out << "  channel " << i + 1 << " '" << names[i] << "': "
            << (report.per_channel[i] ? "identifiable" : "not identifiable")
            << " (escape residual " << report.per_channel_residual[i] << ")\n";
    }
    for (const auto& w : report.witnesses) {
        out << "  witness: support of channel " << w.channel + 1 << " '" << names[w.channel]
            << "' lies inside ";
        if (w.within)
            out << "support of channel " << *w.within + 1 << " '" << names[*w.within] << "'";
        else
            out << "the combined support of the other channels";
        out << "\n";
    }
    return out.str();
}

int run_check(const std::string& path, const GlobalOptions& opts, bool single_use) {
    const uqd::ChannelSet set = load_set(path, opts);
    const uqd::FeasibilityReport report =
        single_use ? uqd::check_single_use(set) : uqd::check_multi_use(set);
    json doc = uqd::io::feasibility_to_json(report, names_of(set));
    doc["command"] = single_use ? "check-single" : "check-multi";
    emit(doc, opts, feasibility_human(report, names_of(set)));
    return report.overall ? kExitOk : kExitInfeasible;
}

// Returns the strategy plus the channel names, from either a channel-set
// file (strategy built here) or a previously exported strategy document.
uqd::Strategy load_or_build_strategy(const std::string& path, const GlobalOptions& opts,
                                     const std::vector<double>& probe_coeffs) {
    const json doc = parse_json_file(path);
    if (uqd::io::is_strategy_document(doc)) {
        if (!probe_coeffs.empty())
            throw uqd::io::ParseError("--probe cannot override an exported strategy");
        return uqd::io::strategy_from_json(doc);
    }
    uqd::ChannelSet set = uqd::io::channel_set_from_json(doc);
    if (opts.tol_rel) set.tol.rel = *opts.tol_rel;
    if (opts.tol_abs) set.tol.abs = *opts.tol_abs;
    return uqd::build_strategy(set, probe_coeffs);
}

int run_strategy(const std::string& path, const GlobalOptions& opts,
                 const std::vector<double>& probe_coeffs) {
    const uqd::ChannelSet set = load_set(path, opts);
    const uqd::FeasibilityReport feasibility = uqd::check_multi_use(set);
    if (!feasibility.overall) {
        json doc = uqd::io::feasibility_to_json(feasibility, names_of(set));
        doc["command"] = "strategy";
        emit(doc, opts, feasibility_human(feasibility, names_of(set)));
        return kExitInfeasible;
    }

    const uqd::Strategy strategy = uqd::build_strategy(set, probe_coeffs);
    json doc = uqd::io::strategy_to_json(strategy);
    doc["command"] = "strategy";

    std::ostringstream human;
    human << "strategy with " << strategy.uses << " uses on dimension " << set.dim() << "\n";
    human << "  probe Schmidt coefficients:";
    for (double a : strategy.probe.schmidt_coeffs) human << " " << a;
    human << "\n  per-copy projector ranks:";
    for (const auto& copy : strategy.plan.per_copy)
        human << " " << static_cast<long>(copy.support.trace().real() + 0.5);
    human << "\n  conclusive patterns: support hit on exactly one copy\n";
    emit(doc, opts, human.str());
    return kExitOk;
}

int run_evaluate(const std::string& path, const GlobalOptions& opts,
                 const std::vector<double>& probe_coeffs) {
    uqd::Strategy strategy;
    try {
        strategy = load_or_build_strategy(path, opts, probe_coeffs);
    } catch (const uqd::InfeasibleSetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    }
    const auto evaluation = uqd::evaluate_strategy(strategy);
    json doc = uqd::io::evaluation_to_json(evaluation, strategy.channel_names);
    doc["command"] = "evaluate";

    std::ostringstream human;
    human << "exact outcome probabilities per true channel\n";
    for (std::size_t i = 0; i < evaluation.size(); ++i)
        human << "  " << i + 1 << " '" << strategy.channel_names[i]
              << "': success " << evaluation[i].success
              << ", error " << evaluation[i].error
              << ", inconclusive " << evaluation[i].inconclusive << "\n";
    emit(doc, opts, human.str());
    return kExitOk;
}

int run_simulate(const std::string& path, const GlobalOptions& opts,
                 const std::vector<double>& probe_coeffs, const std::string& truth,
                 std::uint64_t trials, std::uint64_t seed) {
    uqd::Strategy strategy;
    try {
        strategy = load_or_build_strategy(path, opts, probe_coeffs);
    } catch (const uqd::InfeasibleSetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    }
    const std::size_t true_index = resolve_channel(truth, strategy.channel_names);
    const uqd::VerdictCounts counts = uqd::simulate_strategy(strategy, true_index, trials, seed);
    json doc = uqd::io::counts_to_json(counts, true_index, strategy.channel_names, seed);
    doc["command"] = "simulate";

    std::ostringstream human;
    human << "simulated " << trials << " trials, true channel " << true_index + 1 << " '"
          << strategy.channel_names[true_index] << "' (seed " << seed << ")\n";
    for (std::size_t i = 0; i < counts.conclusive.size(); ++i)
        human << "  conclusive " << i + 1 << " '" << strategy.channel_names[i]
              << "': " << counts.conclusive[i] << "\n";
    human << "  inconclusive: " << counts.inconclusive << "\n";
    emit(doc, opts, human.str());
    return kExitOk;
}

int run_scan(const std::string& path, const GlobalOptions& opts, std::uint64_t samples,
             std::uint64_t seed) {
    const uqd::ChannelSet set = load_set(path, opts);
    const uqd::ScanReport report = uqd::no_ancilla_single_use_scan(set, samples, seed);
    json doc = uqd::io::scan_to_json(report, samples, seed);
    doc["command"] = "scan";

    std::ostringstream human;
    if (report.any_input_found) {
        human << "ancilla-free witness input found at sample " << *report.witness_sample << "\n";
    } else {
        human << "no witness found among " << report.tested << " samples"
              << " (sampling cannot prove impossibility)\n";
    }
    emit(doc, opts, human.str());
    return report.any_input_found ? kExitOk : kExitInfeasible;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"unambiguous discrimination of quantum channels given in Kraus form"};
    app.require_subcommand(1);

    GlobalOptions opts;
    app.add_flag("--machine", opts.machine, "emit one JSON document on stdout");
    double tol_rel = 0, tol_abs = 0;
    auto* rel_opt = app.add_option("--tol-rel", tol_rel, "override relative rank tolerance");
    auto* abs_opt = app.add_option("--tol-abs", tol_abs, "override absolute rank tolerance");

    std::string path;
    std::string probe_text;
    std::string truth;
    std::uint64_t trials = 0, seed = 0, samples = 0;

    auto* check_single = app.add_subcommand("check-single", "single-use feasibility test");
    check_single->add_option("file", path, "channel-set JSON file")->required();

    auto* check_multi = app.add_subcommand("check-multi", "multi-use feasibility test");
    check_multi->add_option("file", path, "channel-set JSON file")->required();

    auto* strategy = app.add_subcommand("strategy", "construct the n-use strategy");
    strategy->add_option("file", path, "channel-set JSON file")->required();
    strategy->add_option("--probe", probe_text, "comma-separated Schmidt coefficients");

    auto* evaluate = app.add_subcommand("evaluate", "exact outcome probabilities");
    evaluate->add_option("file", path, "channel-set or exported strategy JSON file")->required();
    evaluate->add_option("--probe", probe_text, "comma-separated Schmidt coefficients");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo run of the strategy");
    simulate->add_option("file", path, "channel-set or exported strategy JSON file")->required();
    simulate->add_option("--truth", truth, "true channel (name or 1-based index)")->required();
    simulate->add_option("--trials", trials, "number of trials")->required()
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed, "RNG seed")->required();
    simulate->add_option("--probe", probe_text, "comma-separated Schmidt coefficients");

    auto* scan = app.add_subcommand("scan", "sample ancilla-free single-use inputs");
    scan->add_option("file", path, "channel-set JSON file")->required();
    scan->add_option("--samples", samples, "number of sampled pure inputs")->required()
        ->check(CLI::PositiveNumber);
    scan->add_option("--seed", seed, "RNG seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    if (rel_opt->count() > 0) opts.tol_rel = tol_rel;
    if (abs_opt->count() > 0) opts.tol_abs = tol_abs;

    try {
        const std::vector<double> probe_coeffs =
            probe_text.empty() ? std::vector<double>{} : parse_probe(probe_text);
        if (check_single->parsed()) return run_check(path, opts, true);
        if (check_multi->parsed()) return run_check(path, opts, false);
        if (strategy->parsed()) return run_strategy(path, opts, probe_coeffs);
        if (evaluate->parsed()) return run_evaluate(path, opts, probe_coeffs);
        if (simulate->parsed()) return run_simulate(path, opts, probe_coeffs, truth, trials, seed);
        if (scan->parsed()) return run_scan(path, opts, samples, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
