#include "termerr/episode.hpp"

#include <algorithm>
#include <stdexcept>

namespace termerr {

const char* to_string(StoppingRule rule) {
    switch (rule) {
    case StoppingRule::rule1: return "rule1";
    case StoppingRule::rule2_forgive: return "rule2";
    case StoppingRule::rule2_literal: return "rule2-literal";
    }
    return "?";
}

std::optional<StoppingRule> rule_from_string(std::string_view name) {
    if (name == "rule1") return StoppingRule::rule1;
    if (name == "rule2" || name == "rule2-forgive") return StoppingRule::rule2_forgive;
    if (name == "rule2-literal") return StoppingRule::rule2_literal;
    return std::nullopt;
}

EpisodeSpec::EpisodeSpec(std::int64_t pos, std::int64_t neg) : pos_count(pos), neg_count(neg) {
    if (pos < 0 || neg < 0 || pos + neg < 1)
        throw std::invalid_argument("EpisodeSpec: counts must be nonnegative with at least one trial");
}

Rational EpisodeSpec::k() const {
    if (neg_count < 1) throw std::domain_error("EpisodeSpec: k undefined with no negative rewards");
    return Rational(pos_count, neg_count);
}

Rational EpisodeSpec::margin_ratio() const {
    if (neg_count < 1)
        throw std::domain_error("EpisodeSpec: margin ratio undefined with no negative rewards");
    return Rational(margin(), neg_count);
}

RewardSequence::RewardSequence(EpisodeSpec s, std::vector<Reward> path)
    : spec(s), steps(std::move(path)) {
    auto negs = static_cast<std::int64_t>(std::count(steps.begin(), steps.end(), Reward::negative));
    auto poss = static_cast<std::int64_t>(steps.size()) - negs;
    if (poss != spec.pos_count || negs != spec.neg_count)
        throw std::invalid_argument("RewardSequence: step counts do not match the episode spec");
}

namespace {

RuleMachine::Phase initial_phase(StoppingRule rule) {
    switch (rule) {
    case StoppingRule::rule1: return RuleMachine::Phase::plain;
    case StoppingRule::rule2_forgive: return RuleMachine::Phase::seeking_first;
    case StoppingRule::rule2_literal: return RuleMachine::Phase::literal_start;
    }
    return RuleMachine::Phase::plain;
}

}  // namespace

RuleMachine::RuleMachine(StoppingRule rule) : rule_(rule), phase_(initial_phase(rule)) {}

RuleMachine::RuleMachine(StoppingRule rule, DiscreteState s, std::int64_t trials_done,
                         std::int64_t negatives_seen)
    : rule_(rule),
      phase_(s.phase),
      forgiven_(s.forgiven),
      trial_(trials_done),
      counted_pos_(trials_done - negatives_seen),
      counted_neg_(negatives_seen - (s.forgiven ? 1 : 0)) {
    if (counted_pos_ < 0 || counted_neg_ < 0)
        throw std::invalid_argument("RuleMachine: inconsistent resume state");
}

void RuleMachine::count_and_compare(Reward r) {
    if (r == Reward::positive)
        ++counted_pos_;
    else
        ++counted_neg_;
    if (counted_neg_ >= counted_pos_) {
        stopped_ = true;
        stop_index_ = trial_;
    }
}

bool RuleMachine::step(Reward r) {
    if (stopped_) throw std::logic_error("RuleMachine: step after termination");
    ++trial_;
    switch (phase_) {
    case Phase::plain:
        count_and_compare(r);
        break;
    case Phase::seeking_first:
        if (r == Reward::negative) {
            // the forgiven reward: uncounted, and no comparison at this trial
            forgiven_ = true;
            phase_ = Phase::plain;
        } else {
            ++counted_pos_;  // an all-positive prefix can never fire
        }
        break;
    case Phase::literal_start:
        if (r == Reward::positive) {
            phase_ = Phase::plain;
            count_and_compare(r);
        } else {
            forgiven_ = true;
            phase_ = Phase::await_second;
        }
        break;
    case Phase::await_second:
        if (r == Reward::negative) {
            // two leading negatives: stop immediately per the rule text
            stopped_ = true;
            stop_index_ = trial_;
        } else {
            phase_ = Phase::plain;
            count_and_compare(r);
        }
        break;
    }
    return stopped_;
}

EpisodeOutcome run_rule(const RewardSequence& seq, StoppingRule rule) {
    RuleMachine machine(rule);
    for (Reward r : seq.steps) {
        if (machine.step(r)) return {true, machine.stop_index()};
    }
    return {false, std::nullopt};
}

}  // namespace termerr
