#pragma once

// Comparison theory between the power and Rado mean scales: the five common
// means of both scales, sharp two-sided power-mean envelopes of R_alpha with
// the five parameter regimes, the h-profile characterization of homogeneous
// symmetric means, and entropy functions built from means.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "meanref/errors.hpp"
#include "meanref/means.hpp"

namespace meanref {

struct PowerEnvelope {
    double lower_exponent;
    double upper_exponent;
    std::string regime;
};

namespace detail {

// alpha ln2 / ln(1+alpha), extended by its limit ln 2 at alpha = 0.
inline double envelope_log_exponent(double alpha) {
    if (alpha == 0.0) return ln2;
    return alpha * ln2 / std::log1p(alpha);
}

}  // namespace detail

// Sharp power-mean exponent pair (lower, upper) with M_lower <= R_alpha <= M_upper.
// Five regimes; adjacent regimes agree on shared endpoints.
inline PowerEnvelope rado_power_envelope(ExtendedReal alpha) {
    if (alpha.is_neg_inf())
        return {-std::numeric_limits<double>::infinity(), 0.0, "alpha<=-2"};
    if (alpha.is_pos_inf())
        return {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                "alpha>=1"};
    double a = alpha.value();
    if (a <= -2.0) return {(a + 2.0) / 3.0, 0.0, "alpha<=-2"};
    if (a <= -1.0) return {0.0, (a + 2.0) / 3.0, "-2<=alpha<=-1"};
    if (a <= -0.5) return {detail::envelope_log_exponent(a), (a + 2.0) / 3.0, "-1<alpha<=-1/2"};
    if (a < 1.0) return {(a + 2.0) / 3.0, detail::envelope_log_exponent(a), "-1/2<=alpha<1"};
    return {detail::envelope_log_exponent(a), (a + 2.0) / 3.0, "alpha>=1"};
}

struct EnvelopeViolation {
    double x, y;
    double r;        // R_alpha(x,y)
    double m_lower;  // M_lower(x,y)
    double m_upper;  // M_upper(x,y)
};

struct EnvelopeReport {
    std::vector<EnvelopeViolation> violations;
    double max_slack = std::numeric_limits<double>::infinity();  // smallest observed relative gap
    int samples = 0;
};

// Checks M_lower <= R_alpha <= M_upper on random positive pairs. A violation
// requires relative excess > 1e-9; max_slack witnesses near-sharpness.
inline EnvelopeReport verify_envelope(ExtendedReal alpha, int samples, std::uint64_t seed) {
    if (samples < 1) throw DomainError("verify_envelope: samples must be >= 1");
    PowerEnvelope env = rado_power_envelope(alpha);
    MeanKind r = MeanKind::rado(alpha);
    MeanKind lo = MeanKind::power(ExtendedReal::from_double(env.lower_exponent));
    MeanKind hi = MeanKind::power(ExtendedReal::from_double(env.upper_exponent));

    EnvelopeReport report;
    report.samples = samples;
    for (int i = 0; i < samples; ++i) {
        auto rng = detail::sample_rng(seed, static_cast<std::uint64_t>(i));
        double x = rng.log_uniform(-3.0, 3.0);
        double y = rng.log_uniform(-3.0, 3.0);
        double rv = eval_mean(r, x, y);
        double mlo = eval_mean(lo, x, y);
        double mhi = eval_mean(hi, x, y);
        if (mlo - rv > 1e-9 * rv || rv - mhi > 1e-9 * rv)
            report.violations.push_back({x, y, rv, mlo, mhi});
        double slack = std::min((rv - mlo) / rv, (mhi - rv) / rv);
        report.max_slack = std::min(report.max_slack, slack);
    }
    return report;
}

// The five means lying in both scales: M_alpha = R_beta exactly.
// Note the semi-quadratic pair is (1/2, -1/2): R_{-1/2}(x,y) = ((sqrt x + sqrt y)/2)^2,
// which the evaluation cross-check pins down (and which matches the envelope
// theorem collapsing to a single exponent at alpha = -1/2).
inline std::vector<std::pair<ExtendedReal, ExtendedReal>> common_scale_means() {
    return {
        {ExtendedReal::neg_inf(), ExtendedReal::neg_inf()},
        {ExtendedReal::finite(0.0), ExtendedReal::finite(-2.0)},
        {ExtendedReal::finite(0.5), ExtendedReal::finite(-0.5)},
        {ExtendedReal::finite(1.0), ExtendedReal::finite(1.0)},
        {ExtendedReal::pos_inf(), ExtendedReal::pos_inf()},
    };
}

struct HProfile {
    double t;
    double h;
};

// Homogeneity profile of a mean: M(x,y) = (x+y) h(ln(y/x)), so
// h(t) = M(1, e^t) / (1 + e^t). Requires a homogeneous kind.
inline HProfile h_profile(const MeanKind& kind, double t) {
    double et = std::exp(t);
    return {t, eval_mean(kind, 1.0, et) / (1.0 + et)};
}

// Ratio condition of the characterization theorem for 0 <= t1 <= t2:
// e^{t1}(e^{t2}+1) / (e^{t2}(e^{t1}+1)) <= h(t1)/h(t2) <= (e^{t2}+1)/(e^{t1}+1).
inline bool check_characterization(const MeanKind& kind, double t1, double t2) {
    if (!(0.0 <= t1 && t1 <= t2)) throw DomainError("check_characterization: need 0 <= t1 <= t2");
    constexpr double tol = 1e-12;
    double h1 = h_profile(kind, t1).h;
    double h2 = h_profile(kind, t2).h;
    double e1 = std::exp(t1), e2 = std::exp(t2);
    double ratio = h1 / h2;
    double lo = e1 * (e2 + 1.0) / (e2 * (e1 + 1.0));
    double hi = (e2 + 1.0) / (e1 + 1.0);
    return ratio >= lo - tol && ratio <= hi + tol;
}

// H = -ln M(p1, p2) for a probability pair. The weighted-geometric kind
// G_{p1,p2} yields Shannon entropy; Gini(1, alpha) yields Renyi entropy.
inline double entropy_from_mean(const MeanKind& kind, double p1, double p2) {
    if (!(p1 > 0.0) || !(p2 > 0.0)) throw DomainError("entropy_from_mean: probabilities must be positive");
    if (std::abs(p1 + p2 - 1.0) > 1e-12)
        throw DomainError("entropy_from_mean: probabilities must sum to 1");
    return -std::log(eval_mean(kind, p1, p2));
}

inline double shannon_entropy(double p1, double p2) {
    return entropy_from_mean(MeanKind::weighted_geometric(p1), p1, p2);
}

inline double renyi_entropy(double alpha, double p1, double p2) {
    if (alpha == 1.0) return shannon_entropy(p1, p2);
    return entropy_from_mean(MeanKind::gini(1.0, alpha), p1, p2);
}

// Converse direction of the characterization: wrap a user h-function as a
// mean kind, to be validated with check_axioms.
inline MeanKind mean_from_h(std::function<double(double)> h, std::string label = "h") {
    return MeanKind::from_h(std::move(h), std::move(label));
}

}  // namespace meanref
