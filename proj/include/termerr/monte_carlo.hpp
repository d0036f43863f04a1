#pragma once
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "termerr/episode.hpp"
#include "termerr/rational.hpp"

namespace termerr {

inline constexpr std::uint64_t kDefaultSeed = 123456789;

// SplitMix64 output function (Vigna's reference constants); used only to
// spread the master seed into well-separated per-test seeds.
std::uint64_t splitmix64(std::uint64_t x);

// seed of the mt19937_64 stream that test `test_index` owns
std::uint64_t per_test_seed(std::uint64_t master_seed, std::int64_t test_index);

// unbiased draw in [0, n) via 128-bit multiply with rejection
std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t n);

struct ExperimentConfig {
    EpisodeSpec spec;
    StoppingRule rule = StoppingRule::rule1;
    std::int64_t tests = 20;
    std::int64_t episodes_per_test = 30000;
    std::uint64_t master_seed = kDefaultSeed;
};

struct ExperimentReport {
    std::vector<std::int64_t> per_test_failures;
    std::int64_t episodes_per_test = 0;

    Rational mean_exact;        // total failures / total episodes
    double mean_error = 0.0;
    // sample standard deviation (divisor tests-1) of per-test error rates;
    // absent for a single test
    std::optional<double> std_error;

    std::optional<Rational> theory;     // matching closed form, when one exists
    std::optional<Rational> abs_error_exact;
    std::optional<double> abs_error;

    std::vector<double> per_test_error() const;
};

// One episode: rewards drawn sequentially without replacement from the
// effective composition (each remaining reward equally likely), with the rule
// evaluated incrementally. Returns at the first termination, at episode end,
// or as soon as the surviving walk can no longer be caught by the remaining
// negatives; the outcome distribution is that of a uniform random ordering.
EpisodeOutcome simulate_episode(const EpisodeSpec& spec, StoppingRule rule, std::mt19937_64& rng);

// error rate of one test: episodes that terminated early / episodes run
std::int64_t count_failures(const EpisodeSpec& spec, StoppingRule rule, std::int64_t episodes,
                            std::uint64_t test_seed);
Rational run_test(const EpisodeSpec& spec, StoppingRule rule, std::int64_t episodes,
                  std::uint64_t test_seed);

// Runs config.tests independent tests, each on its own per_test_seed stream,
// and aggregates in test-index order. The report is identical for any thread
// count (0 picks hardware concurrency).
ExperimentReport run_experiment(const ExperimentConfig& config, unsigned threads = 0);

// one full uniform ordering of the episode's rewards, no early exit
RewardSequence draw_arrangement(const EpisodeSpec& spec, std::mt19937_64& rng);

}  // namespace termerr
