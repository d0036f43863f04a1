#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "termerr/episode.hpp"
#include "termerr/monte_carlo.hpp"
#include "termerr/oracle.hpp"
#include "termerr/rational.hpp"

namespace termerr {

// One row of the results table: a scenario under one rule, or the
// rule1-minus-rule2 gap row ("diff").
struct OutputRecord {
    std::string scenario;
    std::int64_t pos = 0;
    std::int64_t neg = 0;
    Rational k;
    std::int64_t r = 0;
    Rational r_over_x;
    std::string rule;
    std::optional<Rational> theory;
    std::optional<Rational> sim_mean;
    std::optional<double> sim_std;
    std::optional<Rational> abs_err;
};

// CSV: header row, comma separators, '.' decimal marks, LF endings, rational
// and float cells rounded half-up to 4 decimals, absent cells left empty.
inline constexpr int kCsvPrecision = 4;
extern const char* const kRecordCsvHeader;

std::string to_csv(const std::vector<OutputRecord>& records);
std::vector<OutputRecord> parse_records_csv(std::string_view text);

struct RunMeta {
    std::uint64_t seed = kDefaultSeed;
    std::int64_t tests = 0;
    std::int64_t episodes = 0;
    bool simulated = false;
};

// JSON carries exact rationals as "num/den" strings next to float renderings
std::string to_json(const std::vector<OutputRecord>& records, const RunMeta& meta);

struct Scenario {
    std::string label;
    std::int64_t pos;
    std::int64_t neg;
};
// the six reference compositions the tool reproduces end to end
const std::vector<Scenario>& table1_scenarios();

// exact theory columns only (runs in well under a second)
std::vector<OutputRecord> table1_theory_records();
// full protocol: `tests` x `episodes` per scenario and rule, deterministic in
// (seed); identical output for any thread count
std::vector<OutputRecord> table1_records(std::uint64_t seed, std::int64_t tests,
                                         std::int64_t episodes, unsigned threads = 0);

// per-test breakdown of a single experiment
std::string experiment_csv(const ExperimentConfig& config, const ExperimentReport& report);
std::string experiment_json(const ExperimentConfig& config, const ExperimentReport& report);
std::string experiment_summary_line(const ExperimentConfig& config,
                                    const ExperimentReport& report);

struct ExperimentCsvRow {
    std::string test;  // index, or "aggregate"
    std::optional<std::uint64_t> seed;
    std::int64_t failures = 0;
    std::int64_t episodes = 0;
    Rational error_rate;
};
std::vector<ExperimentCsvRow> parse_experiment_csv(std::string_view text);

// plot-ready sweep data (CSV strings); out-of-domain grid points are skipped
std::string k_sweep_csv(const Rational& from, const Rational& to, const Rational& step);
std::string margin_sweep_csv(const Rational& from, const Rational& to, const Rational& step,
                             const std::vector<std::int64_t>& margin_for_neg_counts);
std::string bound_sweep_csv(const Rational& from, const Rational& to, const Rational& step);

// ---- oracle cross-validation ----

struct OracleCheckRow {
    std::int64_t pos = 0;
    std::int64_t neg = 0;
    std::string rule;
    Rational dp_value;
    std::optional<Rational> brute_value;     // present within the enumeration cap
    std::optional<Rational> closed_value;    // rule1 / rule2 only
    std::optional<Rational> sequence_value;  // full-sequence reading, when it differs
    bool ok = true;
    std::string note;
};

struct ReflectionRow {
    std::int64_t pos = 0;
    std::int64_t neg = 0;
    BigInt up_touching;
    BigInt down;
    bool ok = true;
};

struct OracleVerification {
    std::int64_t max_total = 0;
    std::int64_t specs_checked = 0;
    std::vector<OracleCheckRow> rows;
    std::vector<ReflectionRow> reflections;
    std::vector<std::string> discrepancies;  // empty iff every required identity held
    std::vector<std::string> findings;       // expected semantic gaps, informational
    bool ok() const { return discrepancies.empty(); }
};

// Checks, for every admissible composition with total <= max_total: DP versus
// closed form (rule1/rule2), DP versus enumeration within the cap, the
// reflection count identity, and the first-step-negative fraction. Also
// surfaces where rule2's literal reading and per-sequence forgiving reading
// depart from the canonical rule2 value.
OracleVerification verify_oracle(std::int64_t max_total, const std::vector<StoppingRule>& rules,
                                 std::int64_t step_cap = kDefaultStepCap,
                                 std::int64_t enum_cap = kBruteForceCap);

std::string oracle_text_report(const OracleVerification& verification);

}  // namespace termerr
