#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "termerr/acceptance.hpp"
#include "termerr/closed_form.hpp"
#include "termerr/monte_carlo.hpp"
#include "termerr/oracle.hpp"
#include "termerr/report.hpp"

namespace {

using namespace termerr;

// exit codes shared by every subcommand
constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct SpecArgs {
    std::optional<std::int64_t> pos;
    std::optional<std::int64_t> neg;
    std::optional<std::string> k;
    std::optional<std::int64_t> r;
};

void add_spec_options(CLI::App* cmd, SpecArgs& args) {
    cmd->add_option("--pos", args.pos, "positive reward count");
    cmd->add_option("--neg", args.neg, "negative reward count");
    cmd->add_option("--k", args.k, "positive/negative ratio (integer, decimal or a/b); use with --neg");
    cmd->add_option("--r", args.r, "rewards margin pos-neg; use with --neg");
}

// accepts exactly one of: --pos/--neg, --neg/--k, --neg/--r
EpisodeSpec resolve_spec(const SpecArgs& args) {
    const bool by_pos = args.pos.has_value();
    const bool by_k = args.k.has_value();
    const bool by_r = args.r.has_value();
    if (by_pos + by_k + by_r != 1)
        throw CLI::ValidationError("spec", "give exactly one of --pos, --k or --r");
    if (!args.neg) throw CLI::ValidationError("spec", "--neg is required");
    const std::int64_t neg = *args.neg;
    if (by_pos) return EpisodeSpec(*args.pos, neg);
    if (by_r) return EpisodeSpec(neg + *args.r, neg);
    const Rational k = Rational::from_string(*args.k);
    const Rational pos_exact = k * Rational(neg);
    if (pos_exact.den() != BigInt(1))
        throw CLI::ValidationError("spec", "--k times --neg must be a whole reward count");
    return EpisodeSpec(pos_exact.num().to_i64(), neg);
}

int write_output(const std::string& payload, const std::string& path) {
    if (path.empty()) {
        std::cout << payload;
        return kExitOk;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return kExitIo;
    }
    out << payload;
    if (!out.good()) {
        std::cerr << "error: short write to '" << path << "'\n";
        return kExitIo;
    }
    return kExitOk;
}

std::string render_records(const std::vector<OutputRecord>& records, const std::string& format,
                           const RunMeta& meta) {
    if (format == "json") return to_json(records, meta);
    return to_csv(records);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"termination-error toolkit: closed forms, exact path counting and Monte Carlo\n"
                 "simulation for threshold stopping rules over reward sequences"};
    app.require_subcommand(1);
    app.set_config("--config");

    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 0;
    app.add_option("--seed", seed, "master seed (or set TERMERR_SEED)")
        ->envname("TERMERR_SEED")
        ->capture_default_str();
    app.add_option("--threads", threads, "worker threads, 0 = hardware")->capture_default_str();

    // ---- theory ----
    auto* theory_cmd = app.add_subcommand("theory", "evaluate the closed forms for one episode");
    SpecArgs theory_args;
    add_spec_options(theory_cmd, theory_args);

    // ---- bounds ----
    auto* bounds_cmd =
        app.add_subcommand("bounds", "minimum k and margin ratio for an error ceiling");
    std::string bound_value;
    bounds_cmd->add_option("-M,--bound", bound_value, "error ceiling in (0,1)")->required();

    // ---- simulate ----
    auto* sim_cmd = app.add_subcommand("simulate", "run seeded learning-episode experiments");
    SpecArgs sim_args;
    add_spec_options(sim_cmd, sim_args);
    std::string sim_rule = "rule1";
    std::int64_t sim_tests = 20, sim_episodes = 30000;
    std::string sim_format = "csv", sim_out;
    sim_cmd->add_option("--rule", sim_rule, "rule1, rule2 or rule2-literal")
        ->check(CLI::IsMember({"rule1", "rule2", "rule2-literal"}))
        ->capture_default_str();
    sim_cmd->add_option("--tests", sim_tests, "independent tests")->capture_default_str();
    sim_cmd->add_option("--episodes", sim_episodes, "episodes per test")->capture_default_str();
    sim_cmd->add_option("--format", sim_format)->check(CLI::IsMember({"csv", "json"}));
    sim_cmd->add_option("--out", sim_out, "output path (default: stdout)");

    // ---- table1 ----
    auto* table_cmd =
        app.add_subcommand("table1", "reproduce the six reference scenarios under both rules");
    std::int64_t table_tests = 20, table_episodes = 30000;
    std::string table_format = "csv", table_out;
    bool table_theory_only = false;
    table_cmd->add_option("--tests", table_tests)->capture_default_str();
    table_cmd->add_option("--episodes", table_episodes)->capture_default_str();
    table_cmd->add_flag("--theory-only", table_theory_only, "skip the simulation columns");
    table_cmd->add_option("--format", table_format)->check(CLI::IsMember({"csv", "json"}));
    table_cmd->add_option("--out", table_out, "output path (default: stdout)");

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "emit plot-ready curves");
    std::string sweep_mode;
    std::string sweep_from, sweep_to, sweep_step;
    std::vector<std::int64_t> sweep_xs;
    std::string sweep_out;
    sweep_cmd->add_option("--mode", sweep_mode, "k | margin | bound")
        ->check(CLI::IsMember({"k", "margin", "bound"}))
        ->required();
    sweep_cmd->add_option("--from", sweep_from)->required();
    sweep_cmd->add_option("--to", sweep_to)->required();
    sweep_cmd->add_option("--step", sweep_step)->required();
    sweep_cmd->add_option("--x", sweep_xs, "negative counts for per-x margin columns");
    sweep_cmd->add_option("--out", sweep_out, "output path (default: stdout)");

    // ---- oracle ----
    auto* oracle_cmd = app.add_subcommand(
        "oracle", "cross-validate enumeration, path counting and the closed forms");
    std::int64_t oracle_max_total = 12;
    std::vector<std::string> oracle_rules = {"rule1", "rule2", "rule2-literal"};
    oracle_cmd->add_option("--max-total", oracle_max_total, "largest episode length to check")
        ->capture_default_str();
    oracle_cmd->add_option("--rules", oracle_rules, "rules to verify")
        ->check(CLI::IsMember({"rule1", "rule2", "rule2-literal"}));

    // ---- check ----
    auto* check_cmd = app.add_subcommand("check", "run the full acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (theory_cmd->parsed()) {
            const TheoryReport report = theory_report(resolve_spec(theory_args));
            std::cout << "k           " << report.k.to_fixed(kCsvPrecision) << " ("
                      << report.k.to_string() << ")\n";
            std::cout << "r           " << report.margin << "\n";
            std::cout << "r/x         " << report.margin_ratio.to_fixed(kCsvPrecision) << " ("
                      << report.margin_ratio.to_string() << ")\n";
            std::cout << "p_rule1     " << report.p_rule1.to_fixed(kCsvPrecision) << " ("
                      << report.p_rule1.to_string() << ")\n";
            std::cout << "p_rule2     " << report.p_rule2.to_fixed(kCsvPrecision) << " ("
                      << report.p_rule2.to_string() << ")\n";
            std::cout << "reduction   " << report.reduction.to_fixed(kCsvPrecision) << " ("
                      << report.reduction.to_string() << ")\n";
            return kExitOk;
        }

        if (bounds_cmd->parsed()) {
            const ErrorBound bound{Rational::from_string(bound_value)};
            std::cout << "min k       " << min_k_for_error_bound(bound).to_fixed(kCsvPrecision)
                      << " (" << min_k_for_error_bound(bound).to_string() << ")\n";
            std::cout << "min r/x     "
                      << min_margin_ratio_for_error_bound(bound).to_fixed(kCsvPrecision) << " ("
                      << min_margin_ratio_for_error_bound(bound).to_string() << ")\n";
            return kExitOk;
        }

        if (sim_cmd->parsed()) {
            ExperimentConfig config{resolve_spec(sim_args), *rule_from_string(sim_rule),
                                    sim_tests, sim_episodes, seed};
            const ExperimentReport report = run_experiment(config, threads);
            const std::string payload = sim_format == "json" ? experiment_json(config, report)
                                                             : experiment_csv(config, report);
            const int code = write_output(payload, sim_out);
            if (code != kExitOk) return code;
            std::cerr << experiment_summary_line(config, report) << "\n";
            return kExitOk;
        }

        if (table_cmd->parsed()) {
            const std::vector<OutputRecord> records =
                table_theory_only ? table1_theory_records()
                                  : table1_records(seed, table_tests, table_episodes, threads);
            RunMeta meta{seed, table_tests, table_episodes, !table_theory_only};
            return write_output(render_records(records, table_format, meta), table_out);
        }

        if (sweep_cmd->parsed()) {
            const Rational from = Rational::from_string(sweep_from);
            const Rational to = Rational::from_string(sweep_to);
            const Rational step = Rational::from_string(sweep_step);
            std::string payload;
            if (sweep_mode == "k")
                payload = k_sweep_csv(from, to, step);
            else if (sweep_mode == "margin")
                payload = margin_sweep_csv(from, to, step, sweep_xs);
            else
                payload = bound_sweep_csv(from, to, step);
            return write_output(payload, sweep_out);
        }

        if (oracle_cmd->parsed()) {
            std::vector<StoppingRule> rules;
            for (const std::string& name : oracle_rules) rules.push_back(*rule_from_string(name));
            const OracleVerification verification = verify_oracle(oracle_max_total, rules);
            std::cout << oracle_text_report(verification);
            return verification.ok() ? kExitOk : kExitVerificationFailure;
        }

        if (check_cmd->parsed()) {
            AcceptanceOptions options;
            options.seed = seed;
            options.threads = threads;
            const auto results = run_acceptance(options, std::cout);
            return all_passed(results) ? kExitOk : kExitVerificationFailure;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}
