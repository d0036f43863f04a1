#pragma once
#include <cstdint>

#include "termerr/bigint.hpp"
#include "termerr/episode.hpp"
#include "termerr/rational.hpp"

namespace termerr {

// DP size guard: covers every Table-class composition (max 800 trials) with
// headroom; configurable per call.
inline constexpr std::int64_t kDefaultStepCap = 2000;
// full enumeration guard for the brute-force cross-check
inline constexpr std::int64_t kBruteForceCap = 24;

struct PathCount {
    BigInt terminating;  // orderings that trigger the rule
    BigInt total;        // all orderings of the effective composition
};

// The composition a rule actually operates on. rule1 and rule2_literal run on
// the episode as specified; canonical rule2 forgives one negative up front, so
// it runs rule1 over (pos, neg-1). That reduction, not a per-sequence rewrite,
// is what matches the forgiving rule's termination probability; see
// sequence_semantics_probability for the contrast.
struct EffectiveProcess {
    std::int64_t pos_count;
    std::int64_t neg_count;
    StoppingRule rule;
};
EffectiveProcess effective_process(const EpisodeSpec& spec, StoppingRule rule);

// Exact count of orderings that trigger the rule, by forward DP over
// (trial, negatives used, rule-machine control state) with big-integer
// counts. No closed forms anywhere on this path. Throws std::length_error
// when the episode exceeds step_cap trials.
PathCount count_paths(const EpisodeSpec& spec, StoppingRule rule,
                      std::int64_t step_cap = kDefaultStepCap);

// terminating/total in lowest terms
Rational exact_probability(const EpisodeSpec& spec, StoppingRule rule,
                           std::int64_t step_cap = kDefaultStepCap);

// Replays the rule machine over every distinct ordering of the effective
// composition: the slow, assumption-free cross-check for the DP. Throws
// std::length_error beyond kBruteForceCap trials.
Rational brute_force_probability(const EpisodeSpec& spec, StoppingRule rule);

// Applies run_rule literally to every ordering of the FULL composition.
// Identical to brute_force_probability for rule1 and rule2_literal; for
// rule2_forgive it measures the per-sequence reading (forgive the realized
// sequence's first negative), whose probability does not equal the canonical
// rule2 value because deleting the first negative skews the leftover
// arrangement toward late negatives. Kept to document that gap.
Rational sequence_semantics_probability(const EpisodeSpec& spec, StoppingRule rule);

// The two path families whose sizes a reflection argument proves equal:
// first-step-positive orderings whose walk later returns to zero, and
// first-step-negative orderings (counted directly as a binomial).
struct ReflectionCounts {
    BigInt first_step_up_touching;  // counted by DP
    BigInt first_step_down;         // binomial(total-1, pos)
    bool equal() const { return first_step_up_touching == first_step_down; }
};
ReflectionCounts reflection_check(const EpisodeSpec& spec,
                                  std::int64_t step_cap = kDefaultStepCap);

}  // namespace termerr
