#pragma once
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "termerr/rational.hpp"

namespace termerr {

enum class Reward : std::uint8_t { positive = 0, negative = 1 };

enum class StoppingRule : std::uint8_t {
    // stop at the first trial where cumulative negatives >= cumulative positives
    rule1,
    // canonical rule II: the episode's first negative reward is forgiven, the
    // comparison runs over the remaining rewards
    rule2_forgive,
    // literal rule II wording: only a trial-1 negative can be forgiven, and a
    // second consecutive negative stops the episode outright
    rule2_literal,
};

const char* to_string(StoppingRule rule);
std::optional<StoppingRule> rule_from_string(std::string_view name);

// Composition of one learning episode: how many positive and negative rewards
// it holds in total. The order they arrive in is the random part.
struct EpisodeSpec {
    std::int64_t pos_count = 0;
    std::int64_t neg_count = 0;

    EpisodeSpec(std::int64_t pos, std::int64_t neg);

    std::int64_t total() const { return pos_count + neg_count; }
    std::int64_t margin() const { return pos_count - neg_count; }
    Rational k() const;             // pos/neg, requires neg_count >= 1
    Rational margin_ratio() const;  // margin/neg, requires neg_count >= 1

    // closed forms only hold for pos > neg >= 1 (ratio strictly above 1)
    bool formula_admissible() const { return neg_count >= 1 && pos_count > neg_count; }

    bool operator==(const EpisodeSpec&) const = default;
};

struct EpisodeOutcome {
    bool terminated_early = false;
    std::optional<std::int64_t> stop_index;  // 1-based, present iff terminated_early

    bool operator==(const EpisodeOutcome&) const = default;
};

// One ordered arrangement of the episode's rewards (a lattice path).
struct RewardSequence {
    EpisodeSpec spec;
    std::vector<Reward> steps;

    RewardSequence(EpisodeSpec s, std::vector<Reward> path);  // validates counts
};

// Incremental evaluation of a stopping rule. This is the single transition
// function shared by the sequence scanner, the Monte Carlo simulator, and the
// path-count DP, so all three agree on rule semantics by construction.
class RuleMachine {
public:
    enum class Phase : std::uint8_t {
        plain,          // comparison active over counted rewards
        seeking_first,  // rule2_forgive: no negative seen yet
        literal_start,  // rule2_literal: before trial 1
        await_second,   // rule2_literal: trial 1 was negative
    };

    struct DiscreteState {
        Phase phase;
        bool forgiven;
        bool operator==(const DiscreteState&) const = default;
    };

    explicit RuleMachine(StoppingRule rule);

    // resume from a known control state; counted rewards are reconstructed
    // from the trial count and negatives seen so far
    RuleMachine(StoppingRule rule, DiscreteState s, std::int64_t trials_done,
                std::int64_t negatives_seen);

    // feeds the next reward; returns true when the rule fires at this trial
    bool step(Reward r);

    bool stopped() const { return stopped_; }
    std::int64_t trial() const { return trial_; }
    std::int64_t stop_index() const { return stop_index_; }
    DiscreteState state() const { return {phase_, forgiven_}; }
    std::int64_t counted_pos() const { return counted_pos_; }
    std::int64_t counted_neg() const { return counted_neg_; }

private:
    StoppingRule rule_;
    Phase phase_;
    bool forgiven_ = false;
    bool stopped_ = false;
    std::int64_t trial_ = 0;
    std::int64_t stop_index_ = 0;
    std::int64_t counted_pos_ = 0;
    std::int64_t counted_neg_ = 0;

    void count_and_compare(Reward r);
};

// Earliest termination point under the rule; scans the sequence at most once.
EpisodeOutcome run_rule(const RewardSequence& seq, StoppingRule rule);

}  // namespace termerr
