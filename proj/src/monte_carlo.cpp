#include "termerr/monte_carlo.hpp"

#include <cmath>
#include <thread>

#include "termerr/closed_form.hpp"
#include "termerr/oracle.hpp"

namespace termerr {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t per_test_seed(std::uint64_t master_seed, std::int64_t test_index) {
    return splitmix64(master_seed + static_cast<std::uint64_t>(test_index) * 0x9E3779B97F4A7C15ull);
}

std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t n) {
    using u128 = unsigned __int128;
    u128 m = static_cast<u128>(rng()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
        const std::uint64_t threshold = -n % n;
        while (lo < threshold) {
            m = static_cast<u128>(rng()) * n;
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

namespace {

Reward draw_without_replacement(std::int64_t& pos_remaining, std::int64_t& neg_remaining,
                                std::mt19937_64& rng) {
    const auto remaining = static_cast<std::uint64_t>(pos_remaining + neg_remaining);
    if (bounded_uniform(rng, remaining) < static_cast<std::uint64_t>(pos_remaining)) {
        --pos_remaining;
        return Reward::positive;
    }
    --neg_remaining;
    return Reward::negative;
}

}  // namespace

EpisodeOutcome simulate_episode(const EpisodeSpec& spec, StoppingRule rule, std::mt19937_64& rng) {
    const EffectiveProcess proc = effective_process(spec, rule);
    std::int64_t pos_remaining = proc.pos_count;
    std::int64_t neg_remaining = proc.neg_count;
    RuleMachine machine(proc.rule);
    while (pos_remaining + neg_remaining > 0) {
        // once the counted lead exceeds every negative still in the urn, no
        // completion of this episode can fire the rule
        if (machine.state().phase == RuleMachine::Phase::plain &&
            machine.counted_pos() - machine.counted_neg() > neg_remaining)
            return {false, std::nullopt};
        const Reward r = draw_without_replacement(pos_remaining, neg_remaining, rng);
        if (machine.step(r)) return {true, machine.stop_index()};
    }
    return {false, std::nullopt};
}

std::int64_t count_failures(const EpisodeSpec& spec, StoppingRule rule, std::int64_t episodes,
                            std::uint64_t test_seed) {
    std::mt19937_64 rng(test_seed);
    std::int64_t failures = 0;
    for (std::int64_t i = 0; i < episodes; ++i) {
        if (simulate_episode(spec, rule, rng).terminated_early) ++failures;
    }
    return failures;
}

Rational run_test(const EpisodeSpec& spec, StoppingRule rule, std::int64_t episodes,
                  std::uint64_t test_seed) {
    if (episodes < 1) throw std::invalid_argument("run_test: episodes must be >= 1");
    return Rational(count_failures(spec, rule, episodes, test_seed), episodes);
}

std::vector<double> ExperimentReport::per_test_error() const {
    std::vector<double> rates;
    rates.reserve(per_test_failures.size());
    for (std::int64_t f : per_test_failures)
        rates.push_back(static_cast<double>(f) / static_cast<double>(episodes_per_test));
    return rates;
}

ExperimentReport run_experiment(const ExperimentConfig& config, unsigned threads) {
    if (config.tests < 1 || config.episodes_per_test < 1)
        throw std::invalid_argument("run_experiment: tests and episodes must be >= 1");

    ExperimentReport report;
    report.episodes_per_test = config.episodes_per_test;
    report.per_test_failures.assign(static_cast<std::size_t>(config.tests), 0);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(config.tests));

    auto worker = [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i) {
            report.per_test_failures[static_cast<std::size_t>(i)] =
                count_failures(config.spec, config.rule, config.episodes_per_test,
                               per_test_seed(config.master_seed, i));
        }
    };

    if (threads <= 1) {
        worker(0, config.tests);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        const std::int64_t chunk = (config.tests + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::int64_t begin = static_cast<std::int64_t>(t) * chunk;
            const std::int64_t end = std::min<std::int64_t>(begin + chunk, config.tests);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    std::int64_t total_failures = 0;
    for (std::int64_t f : report.per_test_failures) total_failures += f;
    report.mean_exact = Rational(total_failures, config.tests * config.episodes_per_test);
    report.mean_error = report.mean_exact.to_double();

    if (config.tests >= 2) {
        double sum_sq = 0.0;
        for (double rate : report.per_test_error()) {
            const double d = rate - report.mean_error;
            sum_sq += d * d;
        }
        report.std_error = std::sqrt(sum_sq / static_cast<double>(config.tests - 1));
    }

    const bool has_theory = config.spec.formula_admissible() &&
                            config.rule != StoppingRule::rule2_literal;
    if (has_theory) {
        report.theory = config.rule == StoppingRule::rule1 ? rule1_error(config.spec)
                                                           : rule2_error(config.spec);
        Rational diff = report.mean_exact - *report.theory;
        if (diff.sign() < 0) diff = -diff;
        report.abs_error_exact = diff;
        report.abs_error = diff.to_double();
    }
    return report;
}

RewardSequence draw_arrangement(const EpisodeSpec& spec, std::mt19937_64& rng) {
    std::int64_t pos_remaining = spec.pos_count;
    std::int64_t neg_remaining = spec.neg_count;
    std::vector<Reward> steps;
    steps.reserve(static_cast<std::size_t>(spec.total()));
    while (pos_remaining + neg_remaining > 0)
        steps.push_back(draw_without_replacement(pos_remaining, neg_remaining, rng));
    return RewardSequence(spec, std::move(steps));
}

}  // namespace termerr
