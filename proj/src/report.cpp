#include "termerr/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "termerr/closed_form.hpp"

namespace termerr {

namespace {

std::string fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", kCsvPrecision, v);
    return buf;
}

std::string cell(const std::optional<Rational>& v) {
    return v ? v->to_fixed(kCsvPrecision) : std::string{};
}

std::string cell(const std::optional<double>& v) { return v ? fixed(*v) : std::string{}; }

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            return out;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

nlohmann::ordered_json rational_json(const Rational& v) {
    return {{"exact", v.to_string()}, {"value", v.to_double()}};
}

nlohmann::ordered_json optional_rational_json(const std::optional<Rational>& v) {
    if (!v) return nullptr;
    return rational_json(*v);
}

}  // namespace

const char* const kRecordCsvHeader = "scenario,pos,neg,k,r,r_over_x,rule,theory,sim_mean,sim_std,abs_err";

std::string to_csv(const std::vector<OutputRecord>& records) {
    std::string out = kRecordCsvHeader;
    out += '\n';
    for (const OutputRecord& rec : records) {
        out += rec.scenario;
        out += ',';
        out += std::to_string(rec.pos);
        out += ',';
        out += std::to_string(rec.neg);
        out += ',';
        out += rec.k.to_fixed(kCsvPrecision);
        out += ',';
        out += std::to_string(rec.r);
        out += ',';
        out += rec.r_over_x.to_fixed(kCsvPrecision);
        out += ',';
        out += rec.rule;
        out += ',';
        out += cell(rec.theory);
        out += ',';
        out += cell(rec.sim_mean);
        out += ',';
        out += cell(rec.sim_std);
        out += ',';
        out += cell(rec.abs_err);
        out += '\n';
    }
    return out;
}

std::vector<OutputRecord> parse_records_csv(std::string_view text) {
    std::vector<OutputRecord> records;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (line.empty()) continue;
        if (line_no++ == 0) {
            if (line != kRecordCsvHeader)
                throw std::invalid_argument("unexpected CSV header: " + std::string(line));
            continue;
        }
        std::vector<std::string> f = split(line, ',');
        if (f.size() != 11)
            throw std::invalid_argument("CSV row with " + std::to_string(f.size()) + " fields");
        OutputRecord rec;
        rec.scenario = f[0];
        rec.pos = std::stoll(f[1]);
        rec.neg = std::stoll(f[2]);
        rec.k = Rational::from_string(f[3]);
        rec.r = std::stoll(f[4]);
        rec.r_over_x = Rational::from_string(f[5]);
        rec.rule = f[6];
        if (!f[7].empty()) rec.theory = Rational::from_string(f[7]);
        if (!f[8].empty()) rec.sim_mean = Rational::from_string(f[8]);
        if (!f[9].empty()) rec.sim_std = std::stod(f[9]);
        if (!f[10].empty()) rec.abs_err = Rational::from_string(f[10]);
        records.push_back(std::move(rec));
    }
    return records;
}

std::string to_json(const std::vector<OutputRecord>& records, const RunMeta& meta) {
    nlohmann::ordered_json doc;
    doc["meta"] = {{"seed", meta.seed},
                   {"tests", meta.tests},
                   {"episodes_per_test", meta.episodes},
                   {"simulated", meta.simulated},
                   {"rng", "mt19937_64"},
                   {"seed_mix", "splitmix64"},
                   {"std_convention", "sample"}};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const OutputRecord& rec : records) {
        nlohmann::ordered_json row;
        row["scenario"] = rec.scenario;
        row["pos"] = rec.pos;
        row["neg"] = rec.neg;
        row["k"] = rational_json(rec.k);
        row["r"] = rec.r;
        row["r_over_x"] = rational_json(rec.r_over_x);
        row["rule"] = rec.rule;
        row["theory"] = optional_rational_json(rec.theory);
        row["sim_mean"] = optional_rational_json(rec.sim_mean);
        row["sim_std"] = rec.sim_std ? nlohmann::ordered_json(*rec.sim_std) : nullptr;
        row["abs_err"] = optional_rational_json(rec.abs_err);
        rows.push_back(std::move(row));
    }
    doc["records"] = std::move(rows);
    return doc.dump(2) + "\n";
}

const std::vector<Scenario>& table1_scenarios() {
    static const std::vector<Scenario> scenarios = {
        {"45Pos30Neg", 45, 30},  {"80Pos20Neg", 80, 20},  {"90Pos10Neg", 90, 10},
        {"190Pos10Neg", 190, 10}, {"760Pos40Neg", 760, 40}, {"650Pos10Neg", 650, 10},
    };
    return scenarios;
}

namespace {

OutputRecord base_record(const Scenario& sc) {
    EpisodeSpec spec(sc.pos, sc.neg);
    OutputRecord rec;
    rec.scenario = sc.label;
    rec.pos = sc.pos;
    rec.neg = sc.neg;
    rec.k = spec.k();
    rec.r = spec.margin();
    rec.r_over_x = spec.margin_ratio();
    return rec;
}

}  // namespace

std::vector<OutputRecord> table1_theory_records() {
    std::vector<OutputRecord> records;
    for (const Scenario& sc : table1_scenarios()) {
        EpisodeSpec spec(sc.pos, sc.neg);
        OutputRecord rule1_rec = base_record(sc);
        rule1_rec.rule = to_string(StoppingRule::rule1);
        rule1_rec.theory = rule1_error(spec);
        OutputRecord rule2_rec = base_record(sc);
        rule2_rec.rule = to_string(StoppingRule::rule2_forgive);
        rule2_rec.theory = rule2_error(spec);
        OutputRecord diff = base_record(sc);
        diff.rule = "diff";
        diff.theory = *rule1_rec.theory - *rule2_rec.theory;
        records.push_back(std::move(rule1_rec));
        records.push_back(std::move(rule2_rec));
        records.push_back(std::move(diff));
    }
    return records;
}

std::vector<OutputRecord> table1_records(std::uint64_t seed, std::int64_t tests,
                                         std::int64_t episodes, unsigned threads) {
    std::vector<OutputRecord> records;
    for (const Scenario& sc : table1_scenarios()) {
        EpisodeSpec spec(sc.pos, sc.neg);
        ExperimentConfig config{spec, StoppingRule::rule1, tests, episodes, seed};
        ExperimentReport rule1_run = run_experiment(config, threads);
        config.rule = StoppingRule::rule2_forgive;
        ExperimentReport rule2_run = run_experiment(config, threads);

        OutputRecord rule1_rec = base_record(sc);
        rule1_rec.rule = to_string(StoppingRule::rule1);
        rule1_rec.theory = rule1_run.theory;
        rule1_rec.sim_mean = rule1_run.mean_exact;
        rule1_rec.sim_std = rule1_run.std_error;
        rule1_rec.abs_err = rule1_run.abs_error_exact;

        OutputRecord rule2_rec = base_record(sc);
        rule2_rec.rule = to_string(StoppingRule::rule2_forgive);
        rule2_rec.theory = rule2_run.theory;
        rule2_rec.sim_mean = rule2_run.mean_exact;
        rule2_rec.sim_std = rule2_run.std_error;
        rule2_rec.abs_err = rule2_run.abs_error_exact;

        OutputRecord diff = base_record(sc);
        diff.rule = "diff";
        diff.theory = *rule1_rec.theory - *rule2_rec.theory;
        diff.sim_mean = *rule1_rec.sim_mean - *rule2_rec.sim_mean;

        records.push_back(std::move(rule1_rec));
        records.push_back(std::move(rule2_rec));
        records.push_back(std::move(diff));
    }
    return records;
}

std::string experiment_csv(const ExperimentConfig& config, const ExperimentReport& report) {
    std::string out = "test,seed,failures,episodes,error_rate\n";
    for (std::size_t i = 0; i < report.per_test_failures.size(); ++i) {
        Rational rate(report.per_test_failures[i], report.episodes_per_test);
        out += std::to_string(i);
        out += ',';
        out += std::to_string(per_test_seed(config.master_seed, static_cast<std::int64_t>(i)));
        out += ',';
        out += std::to_string(report.per_test_failures[i]);
        out += ',';
        out += std::to_string(report.episodes_per_test);
        out += ',';
        out += rate.to_fixed(6);
        out += '\n';
    }
    std::int64_t total_failures = 0;
    for (std::int64_t f : report.per_test_failures) total_failures += f;
    out += "aggregate,,";
    out += std::to_string(total_failures);
    out += ',';
    out += std::to_string(static_cast<std::int64_t>(report.per_test_failures.size()) *
                          report.episodes_per_test);
    out += ',';
    out += report.mean_exact.to_fixed(6);
    out += '\n';
    return out;
}

std::vector<ExperimentCsvRow> parse_experiment_csv(std::string_view text) {
    std::vector<ExperimentCsvRow> rows;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (line.empty()) continue;
        if (line_no++ == 0) {
            if (line != "test,seed,failures,episodes,error_rate")
                throw std::invalid_argument("unexpected CSV header: " + std::string(line));
            continue;
        }
        std::vector<std::string> f = split(line, ',');
        if (f.size() != 5)
            throw std::invalid_argument("CSV row with " + std::to_string(f.size()) + " fields");
        ExperimentCsvRow row;
        row.test = f[0];
        if (!f[1].empty()) row.seed = std::stoull(f[1]);
        row.failures = std::stoll(f[2]);
        row.episodes = std::stoll(f[3]);
        row.error_rate = Rational::from_string(f[4]);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string experiment_json(const ExperimentConfig& config, const ExperimentReport& report) {
    nlohmann::ordered_json doc;
    doc["meta"] = {{"pos", config.spec.pos_count},
                   {"neg", config.spec.neg_count},
                   {"rule", to_string(config.rule)},
                   {"tests", config.tests},
                   {"episodes_per_test", config.episodes_per_test},
                   {"seed", config.master_seed},
                   {"rng", "mt19937_64"},
                   {"seed_mix", "splitmix64"},
                   {"std_convention", "sample"}};
    nlohmann::ordered_json tests = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < report.per_test_failures.size(); ++i) {
        Rational rate(report.per_test_failures[i], report.episodes_per_test);
        tests.push_back({{"test", i},
                         {"seed", per_test_seed(config.master_seed, static_cast<std::int64_t>(i))},
                         {"failures", report.per_test_failures[i]},
                         {"error_rate", rational_json(rate)}});
    }
    doc["tests"] = std::move(tests);
    nlohmann::ordered_json agg;
    agg["mean"] = rational_json(report.mean_exact);
    agg["std"] = report.std_error ? nlohmann::ordered_json(*report.std_error) : nullptr;
    agg["theory"] = optional_rational_json(report.theory);
    agg["abs_err"] = optional_rational_json(report.abs_error_exact);
    doc["aggregate"] = std::move(agg);
    return doc.dump(2) + "\n";
}

std::string experiment_summary_line(const ExperimentConfig& config,
                                    const ExperimentReport& report) {
    std::string line = "pos ";
    line += std::to_string(config.spec.pos_count);
    line += " neg ";
    line += std::to_string(config.spec.neg_count);
    line += " ";
    line += to_string(config.rule);
    line += ": mean ";
    line += report.mean_exact.to_fixed(kCsvPrecision);
    line += report.std_error ? " std " + fixed(*report.std_error) : " std n/a";
    if (report.theory) {
        line += " theory " + report.theory->to_fixed(kCsvPrecision);
        line += " abs_err " + report.abs_error_exact->to_fixed(kCsvPrecision);
    } else {
        line += " theory n/a";
    }
    return line;
}

std::string k_sweep_csv(const Rational& from, const Rational& to, const Rational& step) {
    if (step <= Rational(0)) throw std::invalid_argument("sweep step must be positive");
    std::string out = "k,p\n";
    for (Rational k = from; k <= to; k += step) {
        if (k <= Rational(1)) continue;  // closed form holds on (1, inf) only
        out += k.to_fixed(kCsvPrecision);
        out += ',';
        out += rule1_error_at_k(k).to_fixed(kCsvPrecision);
        out += '\n';
    }
    return out;
}

std::string margin_sweep_csv(const Rational& from, const Rational& to, const Rational& step,
                             const std::vector<std::int64_t>& margin_for_neg_counts) {
    if (step <= Rational(0)) throw std::invalid_argument("sweep step must be positive");
    std::string out = "r_over_x,p";
    for (std::int64_t x : margin_for_neg_counts) {
        if (x < 1) throw std::invalid_argument("negative counts in a margin sweep must be >= 1");
        out += ",r_x" + std::to_string(x);
    }
    out += '\n';
    for (Rational ratio = from; ratio <= to; ratio += step) {
        if (ratio <= Rational(0)) continue;
        out += ratio.to_fixed(kCsvPrecision);
        out += ',';
        out += rule1_error_at_margin_ratio(ratio).to_fixed(kCsvPrecision);
        for (std::int64_t x : margin_for_neg_counts) {
            out += ',';
            out += (ratio * Rational(x)).to_fixed(kCsvPrecision);
        }
        out += '\n';
    }
    return out;
}

std::string bound_sweep_csv(const Rational& from, const Rational& to, const Rational& step) {
    if (step <= Rational(0)) throw std::invalid_argument("sweep step must be positive");
    std::string out = "M,min_k,min_r_over_x\n";
    for (Rational m = from; m <= to; m += step) {
        if (m <= Rational(0) || m >= Rational(1)) continue;
        ErrorBound bound{m};
        out += m.to_fixed(kCsvPrecision);
        out += ',';
        out += min_k_for_error_bound(bound).to_fixed(kCsvPrecision);
        out += ',';
        out += min_margin_ratio_for_error_bound(bound).to_fixed(kCsvPrecision);
        out += '\n';
    }
    return out;
}

namespace {

std::string spec_tag(std::int64_t pos, std::int64_t neg, const char* rule) {
    return "pos " + std::to_string(pos) + " neg " + std::to_string(neg) + " " + rule;
}

}  // namespace

OracleVerification verify_oracle(std::int64_t max_total, const std::vector<StoppingRule>& rules,
                                 std::int64_t step_cap, std::int64_t enum_cap) {
    if (max_total > step_cap)
        throw std::length_error("verify_oracle: max_total exceeds the DP step cap of " +
                                std::to_string(step_cap));
    OracleVerification v;
    v.max_total = max_total;
    for (std::int64_t total = 3; total <= max_total; ++total) {
        for (std::int64_t neg = 1; 2 * neg < total; ++neg) {
            const std::int64_t pos = total - neg;
            EpisodeSpec spec(pos, neg);
            ++v.specs_checked;
            const bool enumerable = total <= enum_cap;

            for (StoppingRule rule : rules) {
                OracleCheckRow row;
                row.pos = pos;
                row.neg = neg;
                row.rule = to_string(rule);
                row.dp_value = exact_probability(spec, rule, step_cap);

                if (rule == StoppingRule::rule1)
                    row.closed_value = rule1_error(spec);
                else if (rule == StoppingRule::rule2_forgive)
                    row.closed_value = rule2_error(spec);

                if (row.closed_value && *row.closed_value != row.dp_value) {
                    row.ok = false;
                    v.discrepancies.push_back(spec_tag(pos, neg, row.rule.c_str()) +
                                              ": path count " + row.dp_value.to_string() +
                                              " != closed form " + row.closed_value->to_string());
                }
                if (enumerable) {
                    row.brute_value = brute_force_probability(spec, rule);
                    if (*row.brute_value != row.dp_value) {
                        row.ok = false;
                        v.discrepancies.push_back(spec_tag(pos, neg, row.rule.c_str()) +
                                                  ": path count " + row.dp_value.to_string() +
                                                  " != enumeration " +
                                                  row.brute_value->to_string());
                    }
                }

                if (rule == StoppingRule::rule2_literal) {
                    Rational canonical = rule2_error(spec);
                    row.note = "no closed form";
                    if (row.dp_value != canonical) {
                        row.note += "; differs from rule2 value " + canonical.to_string() + " (" +
                                    canonical.to_fixed(kCsvPrecision) + ")";
                        v.findings.push_back(spec_tag(pos, neg, row.rule.c_str()) +
                                             ": literal reading gives " +
                                             row.dp_value.to_string() + " (" +
                                             row.dp_value.to_fixed(kCsvPrecision) +
                                             "), rule2 closed form gives " +
                                             canonical.to_string() + " (" +
                                             canonical.to_fixed(kCsvPrecision) + ")");
                    }
                } else if (rule == StoppingRule::rule2_forgive && enumerable) {
                    Rational per_sequence = sequence_semantics_probability(spec, rule);
                    if (per_sequence != row.dp_value) {
                        row.sequence_value = per_sequence;
                        row.note = "per-sequence forgiving reading gives " +
                                   per_sequence.to_string();
                        v.findings.push_back(
                            spec_tag(pos, neg, row.rule.c_str()) +
                            ": forgiving the realized sequence's first negative gives " +
                            per_sequence.to_string() + ", canonical rule2 gives " +
                            row.dp_value.to_string());
                    }
                }
                v.rows.push_back(std::move(row));
            }

            ReflectionRow refl;
            refl.pos = pos;
            refl.neg = neg;
            ReflectionCounts counts = reflection_check(spec, step_cap);
            refl.up_touching = counts.first_step_up_touching;
            refl.down = counts.first_step_down;
            refl.ok = counts.equal();
            if (!refl.ok)
                v.discrepancies.push_back(spec_tag(pos, neg, "reflection") + ": " +
                                          refl.up_touching.to_string() +
                                          " != " + refl.down.to_string());
            // the first-step-negative fraction must equal neg/total exactly
            Rational first_down(refl.down, binomial(total, neg));
            if (first_down != Rational(neg, total))
                v.discrepancies.push_back(spec_tag(pos, neg, "first-step") +
                                          ": first-negative fraction " + first_down.to_string() +
                                          " != " + Rational(neg, total).to_string());
            v.reflections.push_back(std::move(refl));
        }
    }
    return v;
}

std::string oracle_text_report(const OracleVerification& v) {
    std::ostringstream out;
    out << "oracle cross-validation up to " << v.max_total << " trials: " << v.specs_checked
        << " admissible compositions checked\n";
    for (const OracleCheckRow& row : v.rows) {
        out << "  pos " << row.pos << " neg " << row.neg << " " << row.rule << ": dp "
            << row.dp_value.to_string() << " (" << row.dp_value.to_fixed(kCsvPrecision) << ")";
        if (row.brute_value) out << ", enum " << row.brute_value->to_string();
        if (row.closed_value) out << ", closed " << row.closed_value->to_string();
        if (!row.note.empty()) out << " [" << row.note << "]";
        out << (row.ok ? "" : "  << MISMATCH") << "\n";
    }
    std::size_t reflection_failures = 0;
    for (const ReflectionRow& row : v.reflections) {
        if (row.ok) continue;
        ++reflection_failures;
        out << "  pos " << row.pos << " neg " << row.neg << " reflection: "
            << row.up_touching.to_string() << " != " << row.down.to_string() << "  << MISMATCH\n";
    }
    if (reflection_failures == 0)
        out << "reflection identity held for all " << v.reflections.size() << " compositions\n";
    if (!v.findings.empty()) {
        out << "semantic findings (expected, informational):\n";
        for (const std::string& f : v.findings) out << "  " << f << "\n";
    }
    if (v.ok()) {
        out << "RESULT: all cross-checks agree\n";
    } else {
        out << "RESULT: " << v.discrepancies.size() << " discrepancies\n";
        for (const std::string& d : v.discrepancies) out << "  " << d << "\n";
    }
    return out.str();
}

}  // namespace termerr
