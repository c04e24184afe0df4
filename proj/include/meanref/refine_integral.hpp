#pragma once

// Integral Cauchy-Bunyakovskii refinements via quadrature:
//   (int fg)^2 <= int M(f,g)^2 * int M*(f,g)^2 <= int f^2 * int g^2
// for an abstract mean M, the max/min special case with its exact gap
// identity over the sets E(f>=g), E(f<=g), the sign-relaxed variant, and the
// Jackson q-integral analog.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "meanref/errors.hpp"
#include "meanref/means.hpp"
#include "meanref/quadrature.hpp"
#include "meanref/refine_discrete.hpp"

namespace meanref {

struct Integrand {
    std::function<double(double)> eval;
    std::string label = "f";

    double operator()(double x) const { return eval(x); }
};

namespace detail {

// Verdict tolerance: chain tolerance plus the propagated quadrature errors,
// so quadrature noise never reports a false violation.
inline double chain_extra_tol(double err_lower, double err_middle, double err_upper) {
    return 4.0 * (err_lower + err_middle + err_upper);
}

inline void check_nonnegative_samples(const Integrand& f, const Integrand& g, double a, double b) {
    constexpr int grid = 257;
    for (int i = 0; i < grid; ++i) {
        double x = a + (b - a) * static_cast<double>(i) / (grid - 1);
        if (f(x) < -1e-12 || g(x) < -1e-12)
            throw DomainError("integral refinement: integrands must be nonnegative on [a,b]");
    }
}

}  // namespace detail

struct IntegralChain {
    RefinementChain chain;
    double s = 0.0;           // int fg
    double quad_error = 0.0;  // combined absolute error estimate over the chain
    long nodes = 0;
};

inline IntegralChain integral_refine_full(const MeanKind& kind, const Integrand& f,
                                          const Integrand& g, const QuadratureSpec& quad) {
    quad.validate();
    detail::check_nonnegative_samples(f, g, quad.a, quad.b);

    auto clamp0 = [](double v) { return v < 0.0 ? 0.0 : v; };
    auto mean_fn = [&](double x) {
        double fx = clamp0(f(x)), gx = clamp0(g(x));
        double m = detail::mean_value_at(kind, fx, gx);
        return m * m;
    };
    auto comp_fn = [&](double x) {
        double fx = clamp0(f(x)), gx = clamp0(g(x));
        double m = detail::mean_value_at(kind, fx, gx);
        double c = detail::complementary_value(kind, fx, gx, m);
        return c * c;
    };

    QuadResult s = integrate([&](double x) { return f(x) * g(x); }, quad);
    QuadResult m2 = integrate(mean_fn, quad);
    QuadResult c2 = integrate(comp_fn, quad);
    QuadResult f2 = integrate([&](double x) { double v = f(x); return v * v; }, quad);
    QuadResult g2 = integrate([&](double x) { double v = g(x); return v * v; }, quad);

    double lower = s.value * s.value;
    double middle = m2.value * c2.value;
    double upper = f2.value * g2.value;
    double err_lower = 2.0 * std::abs(s.value) * s.error;
    double err_middle = std::abs(m2.value) * c2.error + std::abs(c2.value) * m2.error;
    double err_upper = std::abs(f2.value) * g2.error + std::abs(g2.value) * f2.error;

    IntegralChain out;
    out.chain = make_chain(lower, middle, upper, 1e-9,
                           detail::chain_extra_tol(err_lower, err_middle, err_upper));
    out.s = s.value;
    out.quad_error = err_lower + err_middle + err_upper;
    out.nodes = s.nodes + m2.nodes + c2.nodes + f2.nodes + g2.nodes;
    return out;
}

inline RefinementChain integral_refine(const MeanKind& kind, const Integrand& f, const Integrand& g,
                                       const QuadratureSpec& quad) {
    return integral_refine_full(kind, f, g, quad).chain;
}

struct MinMaxGapIdentity {
    double gap = 0.0;      // upper - middle of the max/min chain
    double product = 0.0;  // int_{E(f>=g)} (f^2-g^2) * int_{E(f<=g)} (g^2-f^2)
    double residual = 0.0;
    double quad_error = 0.0;
};

// Exact gap identity of the max/min refinement; holds for integrands of any
// sign. Region membership is resolved by the sign of f-g on quadrature cells.
inline MinMaxGapIdentity minmax_gap_identity(const Integrand& f, const Integrand& g,
                                             const QuadratureSpec& quad) {
    quad.validate();
    auto fg_max2 = [&](double x) {
        double v = std::max(f(x), g(x));
        return v * v;
    };
    auto fg_min2 = [&](double x) {
        double v = std::min(f(x), g(x));
        return v * v;
    };
    QuadResult max2 = integrate(fg_max2, quad);
    QuadResult min2 = integrate(fg_min2, quad);
    QuadResult f2 = integrate([&](double x) { double v = f(x); return v * v; }, quad);
    QuadResult g2 = integrate([&](double x) { double v = g(x); return v * v; }, quad);

    auto diff = [&](double x) { return f(x) - g(x); };
    QuadResult plus = integrate_region(
        [&](double x) { double fv = f(x), gv = g(x); return fv * fv - gv * gv; }, diff, true, quad);
    QuadResult minus = integrate_region(
        [&](double x) { double fv = f(x), gv = g(x); return gv * gv - fv * fv; }, diff, false, quad);

    MinMaxGapIdentity out;
    out.gap = f2.value * g2.value - max2.value * min2.value;
    out.product = plus.value * minus.value;
    out.residual = std::abs(out.gap - out.product);
    out.quad_error = std::abs(f2.value) * g2.error + std::abs(g2.value) * f2.error +
                     std::abs(max2.value) * min2.error + std::abs(min2.value) * max2.error +
                     std::abs(plus.value) * minus.error + std::abs(minus.value) * plus.error;
    return out;
}

enum class ChainDirection { forward, reversed, indeterminate };

inline const char* to_string(ChainDirection d) {
    switch (d) {
        case ChainDirection::forward: return "forward";
        case ChainDirection::reversed: return "reversed";
        default: return "indeterminate";
    }
}

struct SignedMinMaxChain {
    RefinementChain chain;
    ChainDirection direction = ChainDirection::indeterminate;
};

// max/min refinement without a sign assumption. direction classifies the
// sampled sign of f+g: forward when f+g >= 0 everywhere (the chain holds as
// printed), reversed when f+g <= 0 everywhere (the negated pair is the
// forward case, so the max/min roles swap pointwise while the product chain
// keeps the same members and direction), indeterminate otherwise (members
// reported, verdicts not meaningful).
inline SignedMinMaxChain minmax_refine_signed(const Integrand& f, const Integrand& g,
                                              const QuadratureSpec& quad) {
    quad.validate();
    constexpr int grid = 1001;
    bool all_nonneg = true, all_nonpos = true;
    for (int i = 0; i < grid; ++i) {
        double x = quad.a + (quad.b - quad.a) * static_cast<double>(i) / (grid - 1);
        double s = f(x) + g(x);
        if (s < -1e-12) all_nonneg = false;
        if (s > 1e-12) all_nonpos = false;
    }

    QuadResult s = integrate([&](double x) { return f(x) * g(x); }, quad);
    QuadResult max2 = integrate([&](double x) { double v = std::max(f(x), g(x)); return v * v; }, quad);
    QuadResult min2 = integrate([&](double x) { double v = std::min(f(x), g(x)); return v * v; }, quad);
    QuadResult f2 = integrate([&](double x) { double v = f(x); return v * v; }, quad);
    QuadResult g2 = integrate([&](double x) { double v = g(x); return v * v; }, quad);

    double err_lower = 2.0 * std::abs(s.value) * s.error;
    double err_middle = std::abs(max2.value) * min2.error + std::abs(min2.value) * max2.error;
    double err_upper = std::abs(f2.value) * g2.error + std::abs(g2.value) * f2.error;

    SignedMinMaxChain out;
    out.chain = make_chain(s.value * s.value, max2.value * min2.value, f2.value * g2.value, 1e-9,
                           detail::chain_extra_tol(err_lower, err_middle, err_upper));
    out.direction = all_nonneg   ? ChainDirection::forward
                    : all_nonpos ? ChainDirection::reversed
                                 : ChainDirection::indeterminate;
    return out;
}

struct JacksonResult {
    double value = 0.0;
    long terms_used = 0;
};

// Jackson q-integral int_0^1 f d_q t = (1-q) sum_k f(q^k) q^k, truncated when
// the geometric tail bound sup|f| * q^{N+1} drops below tail_tol.
inline JacksonResult jackson_integral(const Integrand& f, double q, double tail_tol) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("jackson_integral: q must lie in (0,1)");
    if (!(tail_tol > 0.0)) throw DomainError("jackson_integral: tail_tol must be positive");

    double sum = 0.0;
    double qk = 1.0;  // q^k
    double sup_f = 0.0;
    double sup_prev_window = -1.0;
    constexpr long cap = 5000000;
    for (long k = 0; k < cap; ++k) {
        double v = f(qk);
        if (!std::isfinite(v)) throw DivergentSeries("jackson_integral: non-finite sample near t=0");
        sup_f = std::max(sup_f, std::abs(v));
        sum += v * qk;
        qk *= q;
        if (sup_f * qk <= tail_tol) return {(1.0 - q) * sum, k + 1};
        // divergence watch: the weighted sup must decay between doubling windows
        if (k >= 4096 && (k & (k - 1)) == 0) {
            double weighted = sup_f * qk;
            if (sup_prev_window >= 0.0 && weighted >= sup_prev_window)
                throw DivergentSeries("jackson_integral: sampled values grow toward t -> 0+");
            sup_prev_window = weighted;
        }
    }
    throw DivergentSeries("jackson_integral: series did not meet the tail bound");
}

struct JacksonChain {
    RefinementChain chain;
    long terms_used = 0;
};

// Jackson q-integral version of the mean sandwich; members computed with
// jackson_integral on the q-lattice {q^k}.
inline JacksonChain jackson_refine(const MeanKind& kind, const Integrand& f, const Integrand& g,
                                   double q, double tail_tol) {
    auto lattice_nonneg = [&](const Integrand& h) {
        double qk = 1.0;
        for (int k = 0; k < 64; ++k) {
            if (h(qk) < -1e-12) throw DomainError("jackson_refine: integrand negative on the q-lattice");
            qk *= q;
        }
    };
    lattice_nonneg(f);
    lattice_nonneg(g);

    auto clamp0 = [](double v) { return v < 0.0 ? 0.0 : v; };
    Integrand fg{[&](double t) { return f(t) * g(t); }, "fg"};
    Integrand m2{[&](double t) {
                     double fv = clamp0(f(t)), gv = clamp0(g(t));
                     double m = detail::mean_value_at(kind, fv, gv);
                     return m * m;
                 },
                 "M^2"};
    Integrand c2{[&](double t) {
                     double fv = clamp0(f(t)), gv = clamp0(g(t));
                     double m = detail::mean_value_at(kind, fv, gv);
                     double c = detail::complementary_value(kind, fv, gv, m);
                     return c * c;
                 },
                 "M*^2"};
    Integrand f2{[&](double t) { double v = f(t); return v * v; }, "f^2"};
    Integrand g2{[&](double t) { double v = g(t); return v * v; }, "g^2"};

    JacksonResult s = jackson_integral(fg, q, tail_tol);
    JacksonResult jm = jackson_integral(m2, q, tail_tol);
    JacksonResult jc = jackson_integral(c2, q, tail_tol);
    JacksonResult jf = jackson_integral(f2, q, tail_tol);
    JacksonResult jg = jackson_integral(g2, q, tail_tol);

    double scale_hint = std::max({1.0, std::abs(jm.value), std::abs(jc.value), std::abs(jf.value),
                                  std::abs(jg.value), std::abs(s.value)});
    JacksonChain out;
    out.chain = make_chain(s.value * s.value, jm.value * jc.value, jf.value * jg.value, 1e-9,
                           8.0 * tail_tol * scale_hint);
    out.terms_used = std::max({s.terms_used, jm.terms_used, jc.terms_used, jf.terms_used, jg.terms_used});
    return out;
}

}  // namespace meanref
