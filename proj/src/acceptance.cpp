#include "termerr/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>
#include <random>

#include "termerr/closed_form.hpp"
#include "termerr/oracle.hpp"
#include "termerr/report.hpp"

namespace termerr {

namespace {

using Clock = std::chrono::steady_clock;

struct Checker {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void info(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

CriterionResult finish(int id, const std::string& name, Checker& check, Clock::time_point start,
                       std::ostream& out) {
    CriterionResult result;
    result.id = id;
    result.name = name;
    result.passed = check.ok;
    result.detail = check.detail;
    result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    out << (result.passed ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << name;
    if (!result.detail.empty()) out << " (" << result.detail << ")";
    char buf[32];
    std::snprintf(buf, sizeof buf, " [%.2fs]", result.seconds);
    out << buf << "\n" << std::flush;
    return result;
}

const std::vector<std::string>& expected_rule1_fixed() {
    static const std::vector<std::string> v = {"0.8000", "0.4000", "0.2000",
                                               "0.1000", "0.1000", "0.0303"};
    return v;
}
const std::vector<std::string>& expected_rule2_fixed() {
    static const std::vector<std::string> v = {"0.7838", "0.3838", "0.1818",
                                               "0.0905", "0.0976", "0.0273"};
    return v;
}
const std::vector<std::string>& expected_diff_fixed() {
    static const std::vector<std::string> v = {"0.0162", "0.0162", "0.0182",
                                               "0.0095", "0.0024", "0.0030"};
    return v;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream& out) {
    std::vector<CriterionResult> results;

    // 1. exact reproduction of the reference theory table
    {
        auto start = Clock::now();
        Checker check;
        std::vector<OutputRecord> records = table1_theory_records();
        const auto& scenarios = table1_scenarios();
        check.require(records.size() == scenarios.size() * 3, "unexpected record count");
        for (std::size_t i = 0; i < scenarios.size() && check.ok; ++i) {
            const std::string p1 = records[3 * i].theory->to_fixed(kCsvPrecision);
            const std::string p2 = records[3 * i + 1].theory->to_fixed(kCsvPrecision);
            const std::string diff = records[3 * i + 2].theory->to_fixed(kCsvPrecision);
            check.require(p1 == expected_rule1_fixed()[i],
                          scenarios[i].label + " rule1 " + p1 + " != " + expected_rule1_fixed()[i]);
            check.require(p2 == expected_rule2_fixed()[i],
                          scenarios[i].label + " rule2 " + p2 + " != " + expected_rule2_fixed()[i]);
            check.require(diff == expected_diff_fixed()[i],
                          scenarios[i].label + " diff " + diff + " != " + expected_diff_fixed()[i]);
        }
        double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        check.require(elapsed < 1.0, "exceeded 1 second");
        results.push_back(finish(1, "theory table matches reference values at 4 decimals", check,
                                 start, out));
    }

    // 2. Monte Carlo reproduction under the 20 x 30000 protocol
    std::vector<OutputRecord> mc_records;
    {
        auto start = Clock::now();
        Checker check;
        const Rational tolerance(5, 1000);
        mc_records = table1_records(options.seed, 20, 30000, options.threads);
        Rational worst(0);
        for (std::size_t i = 0; i + 2 < mc_records.size(); i += 3) {
            const OutputRecord& rule1_rec = mc_records[i];
            const OutputRecord& rule2_rec = mc_records[i + 1];
            for (const OutputRecord* rec : {&rule1_rec, &rule2_rec}) {
                check.require(rec->abs_err.has_value(), rec->scenario + " missing abs_err");
                if (!rec->abs_err) continue;
                if (*rec->abs_err > worst) worst = *rec->abs_err;
                check.require(*rec->abs_err <= tolerance,
                              rec->scenario + " " + rec->rule + " abs err " +
                                  rec->abs_err->to_fixed(4) + " > 0.005");
            }
            check.require(*rule2_rec.sim_mean < *rule1_rec.sim_mean,
                          rule1_rec.scenario + ": rule2 mean not below rule1 mean");
        }
        check.info("seed " + std::to_string(options.seed) + ", worst abs err " +
                   worst.to_fixed(4));
        results.push_back(
            finish(2, "simulation reproduces theory within 0.005, rule2 below rule1", check,
                   start, out));
    }

    // 3. oracle equivalence: enumeration == DP == closed forms up to 20 trials
    OracleVerification oracle20;
    {
        auto start = Clock::now();
        Checker check;
        oracle20 = verify_oracle(20, {StoppingRule::rule1, StoppingRule::rule2_forgive,
                                      StoppingRule::rule2_literal});
        check.require(oracle20.ok(), oracle20.discrepancies.empty()
                                         ? ""
                                         : oracle20.discrepancies.front());
        check.info(std::to_string(oracle20.specs_checked) + " compositions");
        double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        check.require(elapsed < 60.0, "exceeded 1 minute");
        results.push_back(finish(3, "enumeration, path-count DP and closed forms agree to 20 trials",
                                 check, start, out));
    }

    // 4. reflection counts equal and first-step-negative fraction exact to 60 trials
    {
        auto start = Clock::now();
        Checker check;
        OracleVerification refl = verify_oracle(60, {});
        check.require(refl.ok(), refl.discrepancies.empty() ? "" : refl.discrepancies.front());
        check.info(std::to_string(refl.specs_checked) + " compositions");
        results.push_back(
            finish(4, "reflection identity and first-step fraction exact to 60 trials", check,
                   start, out));
    }

    // 5. algebraic identities on randomized compositions
    {
        auto start = Clock::now();
        Checker check;
        std::mt19937_64 rng(0xACCE55ull);
        for (int i = 0; i < 1000 && check.ok; ++i) {
            const auto neg = static_cast<std::int64_t>(bounded_uniform(rng, 300)) + 1;
            const auto margin = static_cast<std::int64_t>(bounded_uniform(rng, 500)) + 1;
            EpisodeSpec spec(neg + margin, neg);
            const Rational reduction = error_reduction(spec);
            check.require(reduction == rule1_error(spec) - rule2_error(spec),
                          "reduction identity failed at pos " + std::to_string(spec.pos_count) +
                              " neg " + std::to_string(neg));
            check.require(reduction > Rational(0), "reduction not positive");
            check.require(error_reduction_from_margin(neg, margin) ==
                              rule1_error_from_margin(neg, margin) -
                                  rule2_error_from_margin(neg, margin),
                          "margin reduction identity failed at x " + std::to_string(neg) + " r " +
                              std::to_string(margin));
            check.require(rule1_error(spec) == rule1_error_from_margin(neg, margin) &&
                              rule2_error(spec) == rule2_error_from_margin(neg, margin),
                          "margin parameterization mismatch");
        }
        results.push_back(finish(5, "reduction identities exact on 1000 random compositions",
                                 check, start, out));
    }

    // 6. bound solvers and their round trip
    {
        auto start = Clock::now();
        Checker check;
        check.require(min_k_for_error_bound(ErrorBound{Rational(1, 5)}) == Rational(9),
                      "min k at M=0.2 not 9");
        check.require(min_margin_ratio_for_error_bound(ErrorBound{Rational(1, 5)}) == Rational(8),
                      "min margin ratio at M=0.2 not 8");
        check.require(min_margin_ratio_for_error_bound(ErrorBound{Rational(1, 2)}) == Rational(2),
                      "min margin ratio at M=0.5 not 2");
        for (int i = 1; i < 100 && check.ok; ++i) {
            const Rational m(i, 100);
            const Rational k_min = min_k_for_error_bound(ErrorBound{m});
            check.require(rule1_error_at_k(k_min) == m,
                          "round trip failed at M=" + m.to_string());
            check.require(rule1_error_at_k(k_min + Rational(1)) < m,
                          "larger k did not reduce the error at M=" + m.to_string());
        }
        results.push_back(finish(6, "bound solvers match worked values and invert exactly", check,
                                 start, out));
    }

    // 7. scale invariance of rule1, and its absence for rule2
    {
        auto start = Clock::now();
        Checker check;
        EpisodeSpec small(190, 10), large(760, 40);
        check.require(rule1_error(small) == rule1_error(large) &&
                          rule1_error(small) == Rational(1, 10),
                      "rule1 error not 0.1 on both compositions");
        check.require(rule2_error(small) != rule2_error(large), "rule2 errors unexpectedly equal");
        check.require(rule2_error(small).to_fixed(4) == "0.0905" &&
                          rule2_error(large).to_fixed(4) == "0.0976",
                      "rule2 renderings off");
        results.push_back(finish(7, "same k gives same rule1 error but different rule2 error",
                                 check, start, out));
    }

    // 8. byte-identical reference table across reruns and thread counts
    {
        auto start = Clock::now();
        Checker check;
        const std::string first = to_csv(table1_records(options.seed, 20, 30000, 1));
        const std::string rerun = to_csv(table1_records(options.seed, 20, 30000, 1));
        const std::string threaded = to_csv(table1_records(options.seed, 20, 30000, 2));
        check.require(first == rerun, "consecutive runs differ");
        check.require(first == threaded, "thread count changed the output");
        results.push_back(
            finish(8, "reference table bytes stable across reruns and thread counts", check,
                   start, out));
    }

    // 9. the rule2 ambiguity is reported: literal reading of (4,2) is 7/15, not 2/5
    {
        auto start = Clock::now();
        Checker check;
        const OracleCheckRow* literal_row = nullptr;
        for (const OracleCheckRow& row : oracle20.rows) {
            if (row.pos == 4 && row.neg == 2 && row.rule == to_string(StoppingRule::rule2_literal))
                literal_row = &row;
        }
        check.require(literal_row != nullptr, "no literal row for pos 4 neg 2");
        if (literal_row) {
            check.require(literal_row->dp_value == Rational(7, 15),
                          "literal probability " + literal_row->dp_value.to_string() +
                              " != 7/15");
            check.require(literal_row->note.find("no closed form") != std::string::npos,
                          "row not flagged as having no closed form");
            check.require(literal_row->note.find("2/5") != std::string::npos,
                          "row does not flag the rule2 value 2/5");
        }
        bool finding_present = false;
        for (const std::string& f : oracle20.findings)
            if (f.find("pos 4 neg 2 rule2-literal") != std::string::npos) finding_present = true;
        check.require(finding_present, "finding list misses the pos 4 neg 2 literal gap");
        results.push_back(finish(9, "oracle reports the literal rule2 gap on pos 4 neg 2", check,
                                 start, out));
    }

    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const CriterionResult& r : results)
        if (!r.passed) return false;
    return !results.empty();
}

}  // namespace termerr
