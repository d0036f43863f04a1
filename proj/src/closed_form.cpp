#include "termerr/closed_form.hpp"

#include <stdexcept>

namespace termerr {

namespace {

void require_admissible(const EpisodeSpec& spec) {
    if (!spec.formula_admissible())
        throw std::domain_error(
            "closed form requires pos > neg >= 1 (reward ratio in (1, inf)); "
            "use the exact oracle outside that interval");
}

void require_margin_inputs(std::int64_t neg_count, std::int64_t margin) {
    if (neg_count < 1 || margin < 1)
        throw std::domain_error("margin form requires neg >= 1 and margin >= 1");
}

}  // namespace

ErrorBound::ErrorBound(Rational m) : value(std::move(m)) {
    if (value <= Rational(0) || value >= Rational(1))
        throw std::domain_error("error bound must lie strictly inside (0, 1)");
}

Rational rule1_error(const EpisodeSpec& spec) {
    require_admissible(spec);
    return Rational(2 * spec.neg_count, spec.total());
}

Rational rule1_error_from_margin(std::int64_t neg_count, std::int64_t margin) {
    require_margin_inputs(neg_count, margin);
    return Rational(2 * neg_count, 2 * neg_count + margin);
}

Rational rule2_error(const EpisodeSpec& spec) {
    require_admissible(spec);
    return Rational(2 * (spec.neg_count - 1), spec.total() - 1);
}

Rational rule2_error_from_margin(std::int64_t neg_count, std::int64_t margin) {
    require_margin_inputs(neg_count, margin);
    return Rational(2 * (neg_count - 1), 2 * neg_count + margin - 1);
}

Rational error_reduction(const EpisodeSpec& spec) {
    require_admissible(spec);
    // evaluated structurally in k and x, as an independent route from
    // rule1_error - rule2_error
    Rational k = spec.k();
    Rational k1 = k + Rational(1);
    Rational denom = k1 * (k1 * Rational(spec.neg_count) - Rational(1));
    return Rational(2) * k / denom;
}

Rational error_reduction_from_margin(std::int64_t neg_count, std::int64_t margin) {
    require_margin_inputs(neg_count, margin);
    std::int64_t base = 2 * neg_count + margin;
    return Rational(2 * (neg_count + margin)) / Rational(base * (base - 1));
}

Rational min_k_for_error_bound(const ErrorBound& bound) {
    return (Rational(2) - bound.value) / bound.value;
}

Rational min_margin_ratio_for_error_bound(const ErrorBound& bound) {
    return Rational(2) * (Rational(1) - bound.value) / bound.value;
}

TheoryReport theory_report(const EpisodeSpec& spec) {
    require_admissible(spec);
    TheoryReport report;
    report.p_rule1 = rule1_error(spec);
    report.p_rule2 = rule2_error(spec);
    report.reduction = error_reduction(spec);
    report.k = spec.k();
    report.margin = spec.margin();
    report.margin_ratio = spec.margin_ratio();
    return report;
}

Rational rule1_error_at_k(const Rational& k) {
    if (k <= Rational(1)) throw std::domain_error("rule1 error defined for k > 1 only");
    return Rational(2) / (k + Rational(1));
}

Rational rule1_error_at_margin_ratio(const Rational& ratio) {
    if (ratio <= Rational(0)) throw std::domain_error("margin ratio must be positive");
    return Rational(2) / (Rational(2) + ratio);
}

Rational margin_for_error(std::int64_t neg_count, const Rational& p) {
    if (neg_count < 1) throw std::domain_error("negative count must be >= 1");
    if (p <= Rational(0) || p >= Rational(1))
        throw std::domain_error("error probability must lie strictly inside (0, 1)");
    return Rational(2 * neg_count) * (Rational(1) - p) / p;
}

}  // namespace termerr
