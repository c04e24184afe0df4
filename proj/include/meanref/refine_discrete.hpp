#pragma once

// Discrete Cauchy-Bunyakovskii refinements. The CDE sandwich
//   (sum x_k y_k)^2 <= sum M(x_k,y_k)^2 * sum M*(x_k,y_k)^2 <= sum x_k^2 sum y_k^2
// for any mean M satisfying the abstract-mean axioms; the Aczel reverse
// refinement in spaces with a sign-indefinite form; the DFT support
// uncertainty relation A*B >= n; and the four-variable Pontryagin-form
// Lagrange identity.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "meanref/errors.hpp"
#include "meanref/means.hpp"

namespace meanref {

// (lower, middle, upper) with verdicts; the universal output of every
// sandwich refinement. Verdicts hold up to tol * max(|lower|,|middle|,|upper|).
struct RefinementChain {
    double lower = 0.0;
    double middle = 0.0;
    double upper = 0.0;
    bool lower_holds = false;
    bool upper_holds = false;
    double slack_lower = 0.0;  // middle - lower
    double slack_upper = 0.0;  // upper - middle
};

inline RefinementChain make_chain(double lower, double middle, double upper,
                                  double rel_tol = 1e-9, double extra_abs_tol = 0.0) {
    RefinementChain c;
    c.lower = lower;
    c.middle = middle;
    c.upper = upper;
    double scale = std::max({std::abs(lower), std::abs(middle), std::abs(upper)});
    double tol = rel_tol * scale + extra_abs_tol;
    c.lower_holds = lower <= middle + tol;
    c.upper_holds = middle <= upper + tol;
    c.slack_lower = middle - lower;
    c.slack_upper = upper - middle;
    return c;
}

struct SequencePair {
    std::vector<double> xs;
    std::vector<double> ys;
};

namespace detail {

inline bool is_min_like(const MeanKind& kind) {
    if (std::holds_alternative<MeanKind::Min>(kind.node())) return true;
    if (auto* p = std::get_if<MeanKind::Power>(&kind.node())) return p->alpha.is_neg_inf();
    if (auto* r = std::get_if<MeanKind::Rado>(&kind.node())) return r->beta.is_neg_inf();
    return false;
}

inline bool is_max_like(const MeanKind& kind) {
    if (std::holds_alternative<MeanKind::Max>(kind.node())) return true;
    if (auto* p = std::get_if<MeanKind::Power>(&kind.node())) return p->alpha.is_pos_inf();
    if (auto* r = std::get_if<MeanKind::Rado>(&kind.node())) return r->beta.is_pos_inf();
    return false;
}

// Kinds whose mean and complementary mean extend continuously to zero
// arguments: min/max and the positive-exponent power/Rado scales.
inline bool admits_zero(const MeanKind& kind) {
    if (is_min_like(kind) || is_max_like(kind)) return true;
    if (auto* p = std::get_if<MeanKind::Power>(&kind.node()))
        return p->alpha.is_finite() && p->alpha.value() > 0.0;
    if (auto* r = std::get_if<MeanKind::Rado>(&kind.node()))
        return r->beta.is_finite() && r->beta.value() > 0.0;
    return false;
}

// M*(x,y) with the continuous extension at zero arguments.
inline double complementary_value(const MeanKind& kind, double x, double y, double m) {
    if (x > 0.0 && y > 0.0) return x * y / m;
    if (!admits_zero(kind)) throw DomainError("mean does not extend to zero arguments");
    if (x == 0.0 && y == 0.0) return 0.0;
    // xy = 0: lim M* = max for min-like kinds (M -> 0), else 0 (M > 0).
    return is_min_like(kind) ? std::max(x, y) : 0.0;
}

inline double mean_value_at(const MeanKind& kind, double x, double y) {
    if ((x == 0.0 || y == 0.0) && !admits_zero(kind))
        throw DomainError("mean does not extend to zero arguments");
    return eval_mean(kind, x, y);
}

}  // namespace detail

// CDE sandwich for an axiom-satisfying mean. kind=Power(2) reproduces Milne's
// inequality; kind=WeightedGeometric((1+a)/2) reproduces Callebaut's.
inline RefinementChain cde_refine(const MeanKind& kind, const SequencePair& pair) {
    if (pair.xs.size() != pair.ys.size()) throw LengthMismatch("cde_refine: sequence lengths differ");
    if (pair.xs.empty()) throw DomainError("cde_refine: empty sequences");
    double s = 0.0, sum_m2 = 0.0, sum_c2 = 0.0, sum_x2 = 0.0, sum_y2 = 0.0;
    for (std::size_t k = 0; k < pair.xs.size(); ++k) {
        double x = pair.xs[k], y = pair.ys[k];
        if (x < 0.0 || y < 0.0) throw DomainError("cde_refine: sequences must be nonnegative");
        double m = detail::mean_value_at(kind, x, y);
        double c = detail::complementary_value(kind, x, y, m);
        s += x * y;
        sum_m2 += m * m;
        sum_c2 += c * c;
        sum_x2 += x * x;
        sum_y2 += y * y;
    }
    return make_chain(s * s, sum_m2 * sum_c2, sum_x2 * sum_y2);
}

struct CdeConditionReport {
    bool homogeneous = false;      // f(tx, ty) = t^2 f(x, y)
    bool hybrid_condition = false; // y f(x,1)/(x f(y,1)) + x f(y,1)/(y f(x,1)) <= x/y + y/x
};

// Samples the two CDE characterization conditions for a candidate pair
// generator f (the paired g is x^2 y^2 / f).
inline CdeConditionReport cde_condition_check(const std::function<double(double, double)>& f,
                                              int samples, std::uint64_t seed) {
    if (samples < 1) throw DomainError("cde_condition_check: samples must be >= 1");
    constexpr double tol = 1e-9;
    CdeConditionReport rep{true, true};
    for (int i = 0; i < samples; ++i) {
        auto rng = detail::sample_rng(seed, static_cast<std::uint64_t>(i));
        double x = rng.log_uniform(-2.0, 2.0);
        double y = rng.log_uniform(-2.0, 2.0);
        double lam = rng.log_uniform(-1.0, 1.0);
        double lhs_h = f(lam * x, lam * y);
        double rhs_h = lam * lam * f(x, y);
        if (std::abs(lhs_h - rhs_h) > tol * std::max(std::abs(lhs_h), std::abs(rhs_h)))
            rep.homogeneous = false;
        double fx = f(x, 1.0), fy = f(y, 1.0);
        if (!(fx > 0.0) || !(fy > 0.0)) throw DomainError("cde_condition_check: f must be positive");
        double t = (y * fx) / (x * fy);
        double lhs = t + 1.0 / t;
        double rhs = x / y + y / x;
        if (lhs > rhs + tol * rhs) rep.hybrid_condition = false;
    }
    return rep;
}

// Aczel refinement: a reversed chain in Lorentz/Pontryagin spaces. With
// deficiencies D_x = x0^2 - sum x_k^2 >= 0, D_y likewise, and A the CDE
// middle of the tails:
//   D_x * D_y <= (x0 y0 - sqrt A)^2 <= (x0 y0 - sum x_k y_k)^2.
inline RefinementChain aczel_refine(const MeanKind& kind, const std::vector<double>& x,
                                    const std::vector<double>& y) {
    if (x.size() != y.size()) throw LengthMismatch("aczel_refine: sequence lengths differ");
    if (x.empty()) throw DomainError("aczel_refine: need the head entries x0, y0");
    SequencePair tails;
    for (std::size_t k = 1; k < x.size(); ++k) {
        if (x[k] < 0.0 || y[k] < 0.0) throw DomainError("aczel_refine: tail entries must be nonnegative");
        tails.xs.push_back(x[k]);
        tails.ys.push_back(y[k]);
    }
    double sum_x2 = 0.0, sum_y2 = 0.0, sum_xy = 0.0;
    for (std::size_t k = 0; k < tails.xs.size(); ++k) {
        sum_x2 += tails.xs[k] * tails.xs[k];
        sum_y2 += tails.ys[k] * tails.ys[k];
        sum_xy += tails.xs[k] * tails.ys[k];
    }
    double dx = x[0] * x[0] - sum_x2;
    double dy = y[0] * y[0] - sum_y2;
    if (dx < 0.0 || dy < 0.0)
        throw AdmissibilityError("aczel_refine: deficiency condition x0^2 >= sum x_k^2 violated");

    double a_mid = 0.0;
    if (!tails.xs.empty()) {
        RefinementChain inner = cde_refine(kind, tails);
        a_mid = inner.middle;
    }
    double head = x[0] * y[0];
    double lower = dx * dy;
    double middle = (head - std::sqrt(a_mid)) * (head - std::sqrt(a_mid));
    double upper = (head - sum_xy) * (head - sum_xy);
    return make_chain(lower, middle, upper);
}

struct DftUncertainty {
    int support_a = 0;
    int support_b = 0;
    long long product = 0;
    bool holds = false;
    bool equality = false;
};

// Support uncertainty for the discrete Fourier transform,
// b_j = n^{-1/2} sum_k a_k w^{-jk}: the supports satisfy A*B >= n.
// Support counting uses a relative magnitude threshold of 1e-9.
inline DftUncertainty dft_uncertainty(const std::vector<std::complex<double>>& a, int n) {
    if (n < 1 || a.size() != static_cast<std::size_t>(n))
        throw DomainError("dft_uncertainty: vector length must equal n >= 1");
    double max_a = 0.0;
    for (const auto& v : a) max_a = std::max(max_a, std::abs(v));
    if (max_a == 0.0) throw ZeroVectorError("dft_uncertainty: zero vector");

    std::vector<std::complex<double>> b(n);
    const double two_pi = 6.283185307179586476925287;
    double max_b = 0.0;
    for (int j = 0; j < n; ++j) {
        std::complex<double> acc = 0.0;
        for (int k = 0; k < n; ++k) {
            double phase = -two_pi * static_cast<double>(j) * static_cast<double>(k) / n;
            acc += a[k] * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        b[j] = acc / std::sqrt(static_cast<double>(n));
        max_b = std::max(max_b, std::abs(b[j]));
    }

    DftUncertainty r;
    for (int k = 0; k < n; ++k)
        if (std::abs(a[k]) > 1e-9 * max_a) ++r.support_a;
    for (int j = 0; j < n; ++j)
        if (std::abs(b[j]) > 1e-9 * max_b) ++r.support_b;
    r.product = static_cast<long long>(r.support_a) * r.support_b;
    r.holds = r.product >= n;
    r.equality = r.product == n;
    return r;
}

struct PontryaginResidual {
    double form_value = 0.0;     // (x.y form)^2 - (x form)(y form), signature (+,+,-,-)
    double squares_value = 0.0;  // the six-squares Lagrange combination
    double residual = 0.0;
};

// Four-variable Lagrange identity for the Pontryagin form: both sides
// evaluated independently; residual = |form - squares|.
inline PontryaginResidual pontryagin_identity_residual(const std::array<double, 4>& x,
                                                       const std::array<double, 4>& y) {
    double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
    double y1 = y[0], y2 = y[1], y3 = y[2], y4 = y[3];

    double dot = x1 * y1 + x2 * y2 - x3 * y3 - x4 * y4;
    double qx = x1 * x1 + x2 * x2 - x3 * x3 - x4 * x4;
    double qy = y1 * y1 + y2 * y2 - y3 * y3 - y4 * y4;
    double form = dot * dot - qx * qy;

    auto sq = [](double v) { return v * v; };
    double squares = sq(y3 * x1 - x3 * y1) + sq(x4 * y1 - x1 * y4) + sq(y3 * x2 - y2 * x3) +
                     sq(y2 * x4 - y4 * x2) - sq(y2 * x1 - y1 * x2) - sq(y3 * x4 - x3 * y4);

    return {form, squares, std::abs(form - squares)};
}

}  // namespace meanref
