#pragma once
#include <cstdint>

#include "termerr/episode.hpp"
#include "termerr/rational.hpp"

namespace termerr {

// desired ceiling on the termination error, strictly inside (0, 1)
struct ErrorBound {
    Rational value;
    explicit ErrorBound(Rational m);
};

// the closed-form quantities for one episode composition, all exact
struct TheoryReport {
    Rational p_rule1;
    Rational p_rule2;
    Rational reduction;  // p_rule1 - p_rule2
    Rational k;
    std::int64_t margin = 0;
    Rational margin_ratio;
};

// Every function below that takes a spec requires it to be formula-admissible
// (pos > neg >= 1, i.e. ratio k strictly above 1) and throws std::domain_error
// otherwise; the exact oracle covers compositions outside that interval.

// probability that rule I fires before the episode completes: 2x/(x+kx)
Rational rule1_error(const EpisodeSpec& spec);
// the same in margin form, x negatives and margin r: 2x/(2x+r)
Rational rule1_error_from_margin(std::int64_t neg_count, std::int64_t margin);

// probability that canonical rule II fires: 2(x-1)/(kx+x-1)
Rational rule2_error(const EpisodeSpec& spec);
// margin form: 2(x-1)/(2x+r-1)
Rational rule2_error_from_margin(std::int64_t neg_count, std::int64_t margin);

// error reduction of rule II over rule I, 2k/((k+1)((k+1)x-1)); equals
// rule1_error - rule2_error exactly
Rational error_reduction(const EpisodeSpec& spec);
// margin form: 2(x+r)/((2x+r)(2x+r-1))
Rational error_reduction_from_margin(std::int64_t neg_count, std::int64_t margin);

// smallest ratio k with rule1 error <= M: (2-M)/M
Rational min_k_for_error_bound(const ErrorBound& bound);
// smallest proportional margin r/x with rule1 error <= M: 2(1-M)/M
Rational min_margin_ratio_for_error_bound(const ErrorBound& bound);

TheoryReport theory_report(const EpisodeSpec& spec);

// formula evaluated directly at a ratio (sweep support)
Rational rule1_error_at_k(const Rational& k);                    // 2/(k+1), k > 1
Rational rule1_error_at_margin_ratio(const Rational& ratio);     // 2/(2+r/x), ratio > 0
// margin r needed for error p at a given negative count: 2x(1-p)/p
Rational margin_for_error(std::int64_t neg_count, const Rational& p);

}  // namespace termerr
