#pragma once

// Reference special functions and the concrete inequality applications:
//  - gamma / log-gamma and the incomplete gamma pair (series below x = a+1,
//    Lentz continued fraction above),
//  - the Turan-type gamma chain
//      Gamma^2(a+1) <= (g(a,1)+G(a+2,1)) (g(a+2,1)+G(a,1)) <= Gamma(a+2) Gamma(a)
//    with its cancellation-free gap identity,
//  - the complete elliptic integral K via the AGM, the closed-form two-sided
//    bounds L_0..L_2 <= K <= G_2..G_0 produced by the iterative refinement
//    with the split f = (1+t)^{-1/2} w^{-1/4}, g = (1+xt)^{-1/2} w^{-1/4},
//    w = (1-t)(1-xt), and the elementary AM-GM lower bound,
//  - Jacobi theta_3 and the bound m(q) <= exp(-(q^2+2q)/(1-q^2)) for its
//    minimum, with an optional extended-precision evaluation of the minimum
//    itself (MPFR, configurable mantissa width).

#include <cmath>
#include <limits>
#include <utility>

#include "meanref/errors.hpp"

#if defined(MEANREF_HAVE_MPFR)
#include <mpfr.h>
#endif

namespace meanref {

inline double log_gamma(double a) {
    if (!(a > 0.0)) throw DomainError("log_gamma: a must be positive");
    return std::lgamma(a);
}

inline double gamma_fn(double a) {
    if (!(a > 0.0)) throw DomainError("gamma: a must be positive");
    double g = std::tgamma(a);
    if (!std::isfinite(g)) throw NonFiniteError("gamma: overflow");
    return g;
}

struct IncompleteGammaPair {
    double lower = 0.0;  // gamma(a, x)
    double upper = 0.0;  // Gamma(a, x)
};

namespace detail {

// Regularized lower incomplete gamma by series, for x < a + 1.
inline double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int i = 0; i < 10000; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-17)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw NoConvergence("incomplete gamma series did not converge");
}

// Regularized upper incomplete gamma by Lentz continued fraction, x >= a + 1.
inline double gamma_q_cf(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-17)
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw NoConvergence("incomplete gamma continued fraction did not converge");
}

}  // namespace detail

// Returns (gamma(a,x), Gamma(a,x)); the numerically dominant branch is
// computed directly and the partner by subtraction, so the partition
// gamma + Gamma = Gamma(a) holds by construction.
inline IncompleteGammaPair incomplete_gamma(double a, double x) {
    if (!(a > 0.0)) throw DomainError("incomplete_gamma: a must be positive");
    if (x < 0.0) throw DomainError("incomplete_gamma: x must be nonnegative");
    double whole = gamma_fn(a);
    if (x == 0.0) return {0.0, whole};
    if (x < a + 1.0) {
        double p = detail::gamma_p_series(a, x);
        double lower = p * whole;
        return {lower, whole - lower};
    }
    double q = detail::gamma_q_cf(a, x);
    double upper = q * whole;
    return {whole - upper, upper};
}

struct GammaChain {
    double a = 0.0;
    double lower = 0.0;   // Gamma^2(a+1)
    double middle = 0.0;  // (g(a,1)+G(a+2,1)) (g(a+2,1)+G(a,1))
    double upper = 0.0;   // Gamma(a+2) Gamma(a)
    double g_ratio = 0.0; // middle / upper, in (a/(a+1), 1]
    double g_gap = 0.0;   // 1 - g_ratio via the cancellation-free identity
};

// Turan-type chain for the gamma function at the split point x = 1. The gap
// uses the exact product identity
//   upper - middle = (G(a+2,1) - G(a,1)) * (g(a,1) - g(a+2,1)),
// with both factors written as positive combinations:
//   G(a+2,1) - G(a,1) = (a(a+1)-1) G(a,1) + (a+2)/e,
//   g(a,1) - g(a+2,1) = e^{-1} sum_n T_n(a) (n+1)(2a+n+2)/((a+n+1)(a+n+2)),
// where T_n(a) = 1/(a(a+1)...(a+n)); no subtractive cancellation remains.
inline GammaChain gamma_turan_chain(double a) {
    if (!(a > 0.0)) throw DomainError("gamma_turan_chain: a must be positive");
    GammaChain chain;
    chain.a = a;

    IncompleteGammaPair at_a = incomplete_gamma(a, 1.0);
    IncompleteGammaPair at_a2 = incomplete_gamma(a + 2.0, 1.0);

    double ln_upper = std::lgamma(a + 2.0) + std::lgamma(a);
    chain.lower = std::exp(2.0 * std::lgamma(a + 1.0));
    chain.middle = (at_a.lower + at_a2.upper) * (at_a2.lower + at_a.upper);
    chain.upper = std::exp(ln_upper);
    chain.g_ratio = std::exp(std::log(at_a.lower + at_a2.upper) + std::log(at_a2.lower + at_a.upper) -
                             ln_upper);

    const double inv_e = std::exp(-1.0);
    double factor1 = (a * (a + 1.0) - 1.0) * at_a.upper + (a + 2.0) * inv_e;
    double t = 1.0 / a;  // T_0
    double factor2 = 0.0;
    for (int n = 0; n < 500; ++n) {
        double add = t * (n + 1.0) * (2.0 * a + n + 2.0) / ((a + n + 1.0) * (a + n + 2.0));
        factor2 += add;
        if (add < factor2 * 1e-17) break;
        t /= a + n + 1.0;
    }
    factor2 *= inv_e;
    chain.g_gap = std::exp(std::log(factor1) + std::log(factor2) - ln_upper);
    return chain;
}

// Complete elliptic integral of the first kind in the modulus convention,
//   K(x) = int_0^1 dt / sqrt((1-t^2)(1-x^2 t^2)),
// computed as (pi/2) / AGM(1, sqrt(1-x^2)).
inline double elliptic_k(double x) {
    if (!(x >= 0.0 && x < 1.0)) throw DomainError("elliptic_k: x must lie in [0,1)");
    double a = 1.0;
    double b = std::sqrt((1.0 - x) * (1.0 + x));
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-17 * a; ++i) {
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return 1.5707963267948966 / (0.5 * (a + b));
}

struct EllipticBounds {
    double x = 0.0;
    int level = 0;
    double lower = 0.0;  // L_level(x) <= K(x)
    double upper = 0.0;  // K(x) <= G_level(x)
};

namespace detail {

// I(beta) = int_0^1 dt / ((1 + beta t) sqrt((1-t)(1-xt)))
//         = ln((2 s + 1 + x + 2 beta) / (1-x)) / s,  s = sqrt((1+beta)(beta+x)).
// Every bound produced by the refinement iteration is a convex combination of
// these elementary integrals.
inline double elliptic_base_integral(double beta, double x) {
    double s = std::sqrt((1.0 + beta) * (beta + x));
    return std::log((2.0 * s + 1.0 + x + 2.0 * beta) / (1.0 - x)) / s;
}

}  // namespace detail

// Closed-form two-sided bounds of level 0, 1, 2 for K(x). Level n uses the
// mean iteration with exponent 2 (power means M_2 / M_{-2}, i.e. arithmetic /
// harmonic on the squared iterates), which keeps every integral elementary:
//   L_0 = I(1),  G_0 = I(x),  L_1 = I(m),  G_1 = (I(1)+I(x))/2,
//   L_2 = (I(m + c) + I(m - c))/2 with c = (1-x)/(2 sqrt 2),
//   G_2 = I(1)/4 + I(x)/4 + I(m)/2,   m = (1+x)/2.
// All levels share the x -> 1 asymptote (1/2) ln(1/(1-x)) + (3/2) ln 2 of K.
inline EllipticBounds elliptic_bounds(double x, int level) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("elliptic_bounds: x must lie in (0,1)");
    if (level < 0 || level > 2) throw DomainError("elliptic_bounds: level must be 0, 1 or 2");
    using detail::elliptic_base_integral;
    EllipticBounds out;
    out.x = x;
    out.level = level;
    double m = 0.5 * (1.0 + x);
    switch (level) {
        case 0:
            out.lower = elliptic_base_integral(1.0, x);
            out.upper = elliptic_base_integral(x, x);
            break;
        case 1:
            out.lower = elliptic_base_integral(m, x);
            out.upper = 0.5 * (elliptic_base_integral(1.0, x) + elliptic_base_integral(x, x));
            break;
        default: {
            double c = (1.0 - x) / (2.0 * std::sqrt(2.0));
            out.lower = 0.5 * (elliptic_base_integral(m + c, x) + elliptic_base_integral(m - c, x));
            out.upper = 0.25 * elliptic_base_integral(1.0, x) + 0.25 * elliptic_base_integral(x, x) +
                        0.5 * elliptic_base_integral(m, x);
            break;
        }
    }
    return out;
}

// Elementary AM-GM lower bound for K:
//   K(k) >= sqrt(1/(2(1+k^2))) ln((1 + sqrt((1+k^2)/2)) / (1 - sqrt((1+k^2)/2))).
inline double elliptic_elementary_lower(double k) {
    if (!(k > 0.0 && k < 1.0)) throw DomainError("elliptic_elementary_lower: k must lie in (0,1)");
    double r = std::sqrt(0.5 * (1.0 + k * k));
    return std::sqrt(1.0 / (2.0 * (1.0 + k * k))) * std::log((1.0 + r) / (1.0 - r));
}

// theta_3(z, q) = 1 + 2 sum_{k>=1} q^{k^2} cos(2kz), truncated when
// 2 q^{k^2} < tail_tol.
inline double theta3(double z, double q, double tail_tol) {
    if (!(q >= 0.0 && q < 1.0)) throw DomainError("theta3: q must lie in [0,1)");
    if (!(tail_tol > 0.0)) throw DomainError("theta3: tail_tol must be positive");
    if (q == 0.0) return 1.0;
    double sum = 1.0;
    double qk2 = 1.0;   // q^{k^2}
    double qodd = q;    // q^{2k-1}
    for (int k = 1; k < 100000000; ++k) {
        qk2 *= qodd;          // q^{k^2} = q^{(k-1)^2} q^{2k-1}
        qodd *= q * q;
        if (2.0 * qk2 < tail_tol) break;
        sum += 2.0 * qk2 * std::cos(2.0 * k * z);
        if (qk2 == 0.0) break;
    }
    return sum;
}

struct ThetaMinBound {
    double bound = 0.0;      // exp(log_bound); underflows to 0 for q near 1
    double log_bound = 0.0;  // -(q^2 + 2q)/(1 - q^2), exact even when bound underflows
};

// Upper bound for the minimum m(q) = theta_3(pi/2, q).
inline ThetaMinBound theta_min_bound(double q) {
    if (!(q >= 0.0 && q < 1.0)) throw DomainError("theta_min_bound: q must lie in [0,1)");
    double log_bound = -(q * q + 2.0 * q) / ((1.0 - q) * (1.0 + q));
    return {std::exp(log_bound), log_bound};
}

#if defined(MEANREF_HAVE_MPFR)

// Extended-precision log10 of m(q) = theta_3(pi/2, q) = 1 + 2 sum (-1)^k q^{k^2}.
// The alternating series cancels to ~10^{-1069} at q = 0.999, hence the
// configurable mantissa width.
inline double theta3_min_log10_highprec(double q, long prec_bits) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("theta3_min_log10_highprec: q must lie in (0,1)");
    if (prec_bits < 64) throw DomainError("theta3_min_log10_highprec: need at least 64 bits");
    mpfr_t sum, qk2, qodd, qq, term;
    mpfr_inits2(prec_bits, sum, qk2, qodd, qq, term, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_d(sum, 1.0, MPFR_RNDN);
    mpfr_set_d(qk2, 1.0, MPFR_RNDN);
    mpfr_set_d(qodd, q, MPFR_RNDN);
    mpfr_set_d(qq, q, MPFR_RNDN);
    mpfr_mul(qq, qq, qq, MPFR_RNDN);  // q^2

    long target_exp = -prec_bits - 64;
    for (long k = 1; k < 100000000; ++k) {
        mpfr_mul(qk2, qk2, qodd, MPFR_RNDN);
        mpfr_mul(qodd, qodd, qq, MPFR_RNDN);
        mpfr_mul_si(term, qk2, (k % 2 == 0) ? 2 : -2, MPFR_RNDN);
        mpfr_add(sum, sum, term, MPFR_RNDN);
        if (mpfr_zero_p(qk2) || mpfr_get_exp(qk2) < target_exp) break;
    }
    double out;
    if (mpfr_sgn(sum) <= 0) {
        out = -std::numeric_limits<double>::infinity();  // precision exhausted
    } else {
        mpfr_log10(term, sum, MPFR_RNDN);
        out = mpfr_get_d(term, MPFR_RNDN);
    }
    mpfr_clears(sum, qk2, qodd, qq, term, static_cast<mpfr_ptr>(nullptr));
    return out;
}

#endif  // MEANREF_HAVE_MPFR

}  // namespace meanref
