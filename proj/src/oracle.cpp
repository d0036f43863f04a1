#include "termerr/oracle.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace termerr {

namespace {

constexpr int kPhaseCount = 4;
constexpr int kStateCount = kPhaseCount * 2;

int state_index(RuleMachine::DiscreteState s) {
    return static_cast<int>(s.phase) * 2 + (s.forgiven ? 1 : 0);
}

RuleMachine::DiscreteState state_from_index(int idx) {
    return {static_cast<RuleMachine::Phase>(idx / 2), (idx % 2) != 0};
}

void check_cap(std::int64_t trials, std::int64_t cap, const char* what) {
    if (trials > cap)
        throw std::length_error(std::string(what) + ": episode of " + std::to_string(trials) +
                                " trials exceeds the configured cap of " + std::to_string(cap));
}

// Forward DP over orderings of pos positives and neg negatives, all starting
// from one rule-machine control state at trial t0. A prefix that fires the
// rule moves into an absorbing pool that keeps branching over the leftover
// rewards, so the final pool size is the count of full orderings that
// terminate early.
BigInt dp_terminating(std::int64_t pos, std::int64_t neg, StoppingRule rule, std::int64_t t0,
                      RuleMachine::DiscreteState init_state, std::int64_t init_negs) {
    const std::int64_t last = pos + neg;
    std::array<std::vector<BigInt>, kStateCount> alive, next_alive;
    for (auto& v : alive) v.assign(static_cast<std::size_t>(neg) + 1, BigInt{});
    for (auto& v : next_alive) v.assign(static_cast<std::size_t>(neg) + 1, BigInt{});
    std::vector<BigInt> stopped(static_cast<std::size_t>(neg) + 1), next_stopped;
    next_stopped.assign(stopped.size(), BigInt{});

    alive[static_cast<std::size_t>(state_index(init_state))][static_cast<std::size_t>(init_negs)] =
        BigInt{1};

    for (std::int64_t t = t0; t < last; ++t) {
        for (auto& v : next_alive)
            for (auto& c : v) c = BigInt{};
        for (auto& c : next_stopped) c = BigInt{};

        for (std::int64_t n = 0; n <= neg; ++n) {
            const std::int64_t pos_used = t - n;
            if (pos_used < 0) continue;
            const bool can_pos = pos_used < pos;
            const bool can_neg = n < neg;

            auto& halted = stopped[static_cast<std::size_t>(n)];
            if (!halted.is_zero()) {
                if (can_pos) next_stopped[static_cast<std::size_t>(n)] += halted;
                if (can_neg) next_stopped[static_cast<std::size_t>(n) + 1] += halted;
            }

            for (int s = 0; s < kStateCount; ++s) {
                const BigInt& count = alive[static_cast<std::size_t>(s)][static_cast<std::size_t>(n)];
                if (count.is_zero()) continue;
                for (Reward r : {Reward::positive, Reward::negative}) {
                    if (r == Reward::positive ? !can_pos : !can_neg) continue;
                    RuleMachine machine(rule, state_from_index(s), t, n);
                    const bool fired = machine.step(r);
                    const std::size_t n2 =
                        static_cast<std::size_t>(n) + (r == Reward::negative ? 1 : 0);
                    if (fired)
                        next_stopped[n2] += count;
                    else
                        next_alive[static_cast<std::size_t>(state_index(machine.state()))][n2] +=
                            count;
                }
            }
        }
        alive.swap(next_alive);
        stopped.swap(next_stopped);
    }

    // every ordering ends with all negatives placed
    BigInt surviving;
    for (int s = 0; s < kStateCount; ++s)
        surviving += alive[static_cast<std::size_t>(s)][static_cast<std::size_t>(neg)];
    BigInt terminating = stopped[static_cast<std::size_t>(neg)];
    BigInt expected_total = binomial(pos + neg - t0, neg - init_negs);
    if (terminating + surviving != expected_total)
        throw std::logic_error("path-count DP lost mass");
    return terminating;
}

std::int64_t enumerate_terminating(std::int64_t pos, std::int64_t neg, StoppingRule rule) {
    std::vector<std::uint8_t> order(static_cast<std::size_t>(pos), 0);
    order.insert(order.end(), static_cast<std::size_t>(neg), 1);
    std::int64_t fired_count = 0;
    do {
        RuleMachine machine(rule);
        for (std::uint8_t s : order) {
            if (machine.step(s ? Reward::negative : Reward::positive)) {
                ++fired_count;
                break;
            }
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return fired_count;
}

}  // namespace

EffectiveProcess effective_process(const EpisodeSpec& spec, StoppingRule rule) {
    if (rule == StoppingRule::rule2_forgive)
        return {spec.pos_count, std::max<std::int64_t>(spec.neg_count - 1, 0), StoppingRule::rule1};
    return {spec.pos_count, spec.neg_count, rule};
}

PathCount count_paths(const EpisodeSpec& spec, StoppingRule rule, std::int64_t step_cap) {
    const EffectiveProcess proc = effective_process(spec, rule);
    check_cap(proc.pos_count + proc.neg_count, step_cap, "count_paths");
    PathCount result;
    result.total = binomial(proc.pos_count + proc.neg_count, proc.neg_count);
    if (proc.pos_count + proc.neg_count == 0) {
        result.terminating = BigInt{0};
        return result;
    }
    RuleMachine fresh(proc.rule);
    result.terminating = dp_terminating(proc.pos_count, proc.neg_count, proc.rule, 0,
                                        fresh.state(), 0);
    return result;
}

Rational exact_probability(const EpisodeSpec& spec, StoppingRule rule, std::int64_t step_cap) {
    PathCount counts = count_paths(spec, rule, step_cap);
    return Rational(std::move(counts.terminating), std::move(counts.total));
}

Rational brute_force_probability(const EpisodeSpec& spec, StoppingRule rule) {
    const EffectiveProcess proc = effective_process(spec, rule);
    const std::int64_t trials = proc.pos_count + proc.neg_count;
    check_cap(trials, kBruteForceCap, "brute_force_probability");
    if (trials == 0) return Rational(0);
    std::int64_t fired = enumerate_terminating(proc.pos_count, proc.neg_count, proc.rule);
    return Rational(BigInt(fired), binomial(trials, proc.neg_count));
}

Rational sequence_semantics_probability(const EpisodeSpec& spec, StoppingRule rule) {
    check_cap(spec.total(), kBruteForceCap, "sequence_semantics_probability");
    std::int64_t fired = enumerate_terminating(spec.pos_count, spec.neg_count, rule);
    return Rational(BigInt(fired), binomial(spec.total(), spec.neg_count));
}

ReflectionCounts reflection_check(const EpisodeSpec& spec, std::int64_t step_cap) {
    if (!spec.formula_admissible())
        throw std::domain_error("reflection_check requires pos > neg >= 1");
    check_cap(spec.total(), step_cap, "reflection_check");
    ReflectionCounts counts;
    counts.first_step_down = binomial(spec.total() - 1, spec.pos_count);
    // force trial 1 positive, then count orderings whose walk still returns
    // to a tie at some later trial (rule1 firing is exactly that event)
    RuleMachine after_up(StoppingRule::rule1);
    after_up.step(Reward::positive);
    counts.first_step_up_touching = dp_terminating(spec.pos_count, spec.neg_count,
                                                   StoppingRule::rule1, 1, after_up.state(), 0);
    return counts;
}

}  // namespace termerr
