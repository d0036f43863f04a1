#include "doctest.h"

#include <stdexcept>

#include <optional>
#include <random>
#include <vector>

#include "termerr/episode.hpp"

#include "reference_rules.hpp"

using termerr::EpisodeOutcome;
using termerr::EpisodeSpec;
using termerr::Rational;
using termerr::Reward;
using termerr::RewardSequence;
using termerr::StoppingRule;

namespace {

constexpr Reward P = Reward::positive;
constexpr Reward N = Reward::negative;

RewardSequence make_seq(std::vector<Reward> steps) {
    std::int64_t negs = 0;
    for (Reward r : steps)
        if (r == N) ++negs;
    EpisodeSpec spec(static_cast<std::int64_t>(steps.size()) - negs, negs);
    return RewardSequence(spec, std::move(steps));
}

std::vector<Reward> random_steps(std::mt19937_64& rng, int max_len) {
    const auto len = 1 + rng() % static_cast<std::uint64_t>(max_len);
    std::vector<Reward> steps(len);
    for (auto& s : steps) s = (rng() & 1) ? N : P;
    return steps;
}

}  // namespace

TEST_CASE("spec accessors and invariants") {
    EpisodeSpec spec(45, 30);
    CHECK(spec.total() == 75);
    CHECK(spec.k() == Rational(3, 2));
    CHECK(spec.margin() == 15);
    CHECK(spec.margin_ratio() == Rational(1, 2));
    CHECK(spec.formula_admissible());
    // rational identities: k*neg == pos and margin == ratio*neg
    CHECK(spec.k() * Rational(spec.neg_count) == Rational(spec.pos_count));
    CHECK(spec.margin_ratio() * Rational(spec.neg_count) == Rational(spec.margin()));

    CHECK_FALSE(EpisodeSpec(3, 3).formula_admissible());
    CHECK_FALSE(EpisodeSpec(2, 3).formula_admissible());
    CHECK_FALSE(EpisodeSpec(5, 0).formula_admissible());
    CHECK(EpisodeSpec(5, 0).total() == 5);
    CHECK_THROWS_AS(EpisodeSpec(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(EpisodeSpec(-1, 2), std::invalid_argument);
    CHECK_THROWS_AS(EpisodeSpec(5, 0).k(), std::domain_error);
    CHECK_THROWS_AS(EpisodeSpec(5, 0).margin_ratio(), std::domain_error);
}

TEST_CASE("reward sequence validation") {
    CHECK_NOTHROW(RewardSequence(EpisodeSpec(2, 1), {P, N, P}));
    CHECK_THROWS_AS(RewardSequence(EpisodeSpec(2, 1), {P, P, P}), std::invalid_argument);
    CHECK_THROWS_AS(RewardSequence(EpisodeSpec(2, 1), {P, N}), std::invalid_argument);
}

TEST_CASE("rule names round trip") {
    using termerr::rule_from_string;
    CHECK(rule_from_string("rule1") == StoppingRule::rule1);
    CHECK(rule_from_string("rule2") == StoppingRule::rule2_forgive);
    CHECK(rule_from_string("rule2-forgive") == StoppingRule::rule2_forgive);
    CHECK(rule_from_string("rule2-literal") == StoppingRule::rule2_literal);
    CHECK_FALSE(rule_from_string("rule3").has_value());
}

TEST_CASE("run_rule on the worked examples") {
    CHECK(run_rule(make_seq({P, P, N}), StoppingRule::rule1) == EpisodeOutcome{false, {}});
    CHECK(run_rule(make_seq({N, P, P}), StoppingRule::rule1) == EpisodeOutcome{true, 1});
    CHECK(run_rule(make_seq({P, N, P}), StoppingRule::rule1) == EpisodeOutcome{true, 2});
    CHECK(run_rule(make_seq({N, P, P}), StoppingRule::rule2_forgive) == EpisodeOutcome{false, {}});
    CHECK(run_rule(make_seq({N, N, P, P, P, P}), StoppingRule::rule2_literal) ==
          EpisodeOutcome{true, 2});
    // literal behaves exactly like rule1 after a positive first reward
    CHECK(run_rule(make_seq({P, N, P}), StoppingRule::rule2_literal) == EpisodeOutcome{true, 2});
    // while the forgiving rule survives that sequence
    CHECK(run_rule(make_seq({P, N, P}), StoppingRule::rule2_forgive) == EpisodeOutcome{false, {}});
    // a forgiven first negative still leaves later negatives counted
    CHECK(run_rule(make_seq({N, P, N, P, P, P}), StoppingRule::rule2_forgive) ==
          EpisodeOutcome{true, 3});
    // single negative, no second reward to observe
    CHECK(run_rule(make_seq({N}), StoppingRule::rule2_literal) == EpisodeOutcome{false, {}});
    CHECK(run_rule(make_seq({N}), StoppingRule::rule2_forgive) == EpisodeOutcome{false, {}});
    CHECK(run_rule(make_seq({N}), StoppingRule::rule1) == EpisodeOutcome{true, 1});
}

TEST_CASE("run_rule matches the independent reference on random sequences") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 3000; ++i) {
        std::vector<Reward> steps = random_steps(rng, 40);
        RewardSequence seq = make_seq(steps);
        for (StoppingRule rule : {StoppingRule::rule1, StoppingRule::rule2_forgive,
                                  StoppingRule::rule2_literal}) {
            const EpisodeOutcome outcome = run_rule(seq, rule);
            const auto expected = testref::ref_stop(steps, rule);
            CHECK(outcome.terminated_early == expected.has_value());
            if (expected) CHECK(outcome.stop_index == *expected);
        }
    }
}

TEST_CASE("rule properties") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 2000; ++i) {
        std::vector<Reward> steps = random_steps(rng, 30);
        RewardSequence seq = make_seq(steps);
        const EpisodeOutcome rule1_outcome = run_rule(seq, StoppingRule::rule1);

        // count-based and walk-based formulations coincide
        std::int64_t walk = 0;
        bool touched = false;
        for (Reward r : steps) {
            walk += r == P ? 1 : -1;
            if (walk <= 0) touched = true;
        }
        CHECK(rule1_outcome.terminated_early == touched);

        // a leading negative stops rule1 at trial 1
        if (steps.front() == N) CHECK(rule1_outcome.stop_index == 1);

        // no negatives means no rule can fire
        if (seq.spec.neg_count == 0) {
            for (StoppingRule rule : {StoppingRule::rule1, StoppingRule::rule2_forgive,
                                      StoppingRule::rule2_literal})
                CHECK_FALSE(run_rule(seq, rule).terminated_early);
        }

        // a nonpositive final walk forces rule1 to fire somewhere
        if (seq.spec.pos_count <= seq.spec.neg_count) CHECK(rule1_outcome.terminated_early);

        // forgiving semantics == rule1 on the sequence with its first negative
        // deleted, with stop indices shifted back past the deletion point
        std::vector<Reward> deleted = steps;
        std::int64_t forgiven_at = 0;
        for (std::size_t j = 0; j < deleted.size(); ++j) {
            if (deleted[j] == N) {
                forgiven_at = static_cast<std::int64_t>(j) + 1;
                deleted.erase(deleted.begin() + static_cast<std::ptrdiff_t>(j));
                break;
            }
        }
        const EpisodeOutcome forgive_outcome = run_rule(seq, StoppingRule::rule2_forgive);
        if (forgiven_at == 0) {
            CHECK(forgive_outcome == rule1_outcome);
        } else if (deleted.empty()) {
            CHECK_FALSE(forgive_outcome.terminated_early);
        } else {
            const EpisodeOutcome reduced = run_rule(make_seq(deleted), StoppingRule::rule1);
            CHECK(forgive_outcome.terminated_early == reduced.terminated_early);
            if (reduced.terminated_early) {
                const std::int64_t mapped =
                    *reduced.stop_index + (*reduced.stop_index >= forgiven_at ? 1 : 0);
                CHECK(forgive_outcome.stop_index == mapped);
            }
        }
    }
}
