#pragma once

// Iterative tightening of the Cauchy-Bunyakovskii bound: starting from
// U_0 = f, V_0 = g, the updates U_{n+1} = M_a(U_n, V_n), V_{n+1} = M_{-a}(U_n, V_n)
// preserve U V = f g pointwise, and the integrals L_n = int V_n^2,
// G_n = int U_n^2, A_n = L_n G_n squeeze S^2 = (int fg)^2 monotonically:
//   S^2 <= A_n <= A_{n-1},   and for n >= 1:  L_n <= S <= G_n.
// (The printed n = 0 case of the second chain fails in general; see the
// envelope example f = x, g = 1-x where L_0 = 1/3 > S = 1/6.)
//
// Functions are represented by their values on a fixed composite Simpson
// grid, refined until A_0 is stable under node doubling.

#include <cmath>
#include <vector>

#include "meanref/errors.hpp"
#include "meanref/means.hpp"
#include "meanref/quadrature.hpp"
#include "meanref/refine_integral.hpp"

namespace meanref {

struct BoundTrace {
    double alpha = 1.0;
    std::vector<double> L;  // steps+1 entries
    std::vector<double> G;
    std::vector<double> A;
    double s_estimate = 0.0;  // quadrature value of int fg
    int steps = 0;
};

enum class IterMeanFamily {
    power,
    rado,  // experimental: no monotonicity guarantees
};

namespace detail {

inline double simpson_grid(const std::vector<double>& v, double h) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 2 < v.size(); i += 2)
        acc += (v[i] + 4.0 * v[i + 1] + v[i + 2]) * (h / 3.0);
    return acc;
}

// Pointwise mean step with the continuous extension at zero samples.
inline void mean_step(std::vector<double>& u, std::vector<double>& v, double alpha,
                      IterMeanFamily family) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        double a = u[i], b = v[i];
        double up;
        if (a == b) {
            up = a;
        } else if (a == 0.0 || b == 0.0) {
            up = family == IterMeanFamily::power
                     ? std::max(a, b) * std::exp2(-1.0 / alpha)
                     : std::max(a, b) * std::pow(alpha + 1.0, -1.0 / alpha);
        } else {
            up = family == IterMeanFamily::power ? detail::power_mean_pos(alpha, a, b)
                                                 : detail::rado_mean_pos(alpha, a, b);
        }
        // complementary partner keeps U V = f g exactly
        double vp = up > 0.0 ? a * b / up : 0.0;
        u[i] = up;
        v[i] = vp;
    }
}

}  // namespace detail

inline BoundTrace iterate_bounds(const Integrand& f, const Integrand& g, const QuadratureSpec& quad,
                                 double alpha, int steps,
                                 IterMeanFamily family = IterMeanFamily::power) {
    quad.validate();
    if (!(alpha > 0.0)) throw DomainError("iterate_bounds: alpha must be positive");
    if (steps < 1) throw DomainError("iterate_bounds: steps must be >= 1");

    // Grid selection: double the composite Simpson node count until A_0 and S
    // are stable to rel_tol.
    int n = quad.rule == QuadRule::fixed_composite ? (quad.fixed_n | 1) : 129;
    if (n < 17) n = 17;
    double prev_a0 = 0.0, prev_s = 0.0;
    std::vector<double> fs, gs;
    double h = 0.0;
    for (;;) {
        fs.resize(n);
        gs.resize(n);
        h = (quad.b - quad.a) / (n - 1);
        for (int i = 0; i < n; ++i) {
            double x = quad.a + i * h;
            double fv = f(x), gv = g(x);
            if (fv < -1e-12 || gv < -1e-12)
                throw DomainError("iterate_bounds: integrands must be nonnegative");
            fs[i] = fv < 0.0 ? 0.0 : fv;
            gs[i] = gv < 0.0 ? 0.0 : gv;
        }
        std::vector<double> f2(n), g2(n), fg(n);
        for (int i = 0; i < n; ++i) {
            f2[i] = fs[i] * fs[i];
            g2[i] = gs[i] * gs[i];
            fg[i] = fs[i] * gs[i];
        }
        double a0 = detail::simpson_grid(f2, h) * detail::simpson_grid(g2, h);
        double s = detail::simpson_grid(fg, h);
        bool stable = prev_a0 != 0.0 && std::abs(a0 - prev_a0) <= quad.rel_tol * std::abs(a0) &&
                      std::abs(s - prev_s) <= quad.rel_tol * std::max(std::abs(s), 1e-300);
        if (stable || 2 * (n - 1) + 1 > quad.max_nodes) {
            if (!stable && quad.rule != QuadRule::fixed_composite)
                throw QuadratureFailure("iterate_bounds: grid did not stabilize within max_nodes");
            break;
        }
        if (quad.rule == QuadRule::fixed_composite) break;
        prev_a0 = a0;
        prev_s = s;
        n = 2 * (n - 1) + 1;
    }

    std::vector<double> u = fs, v = gs;
    std::vector<double> work(n);
    BoundTrace trace;
    trace.alpha = alpha;
    trace.steps = steps;
    auto record = [&]() {
        for (int i = 0; i < n; ++i) work[i] = v[i] * v[i];
        double l = detail::simpson_grid(work, h);
        for (int i = 0; i < n; ++i) work[i] = u[i] * u[i];
        double gq = detail::simpson_grid(work, h);
        trace.L.push_back(l);
        trace.G.push_back(gq);
        trace.A.push_back(l * gq);
    };
    record();
    for (int s = 0; s < steps; ++s) {
        detail::mean_step(u, v, alpha, family);
        record();
    }
    for (int i = 0; i < n; ++i) work[i] = fs[i] * gs[i];
    trace.s_estimate = detail::simpson_grid(work, h);
    return trace;
}

struct TraceCheck {
    bool it1_holds = false;    // S^2 <= A_n <= A_{n-1} over the whole trace
    int it2_holds_from = 0;    // smallest n with L_m <= S <= G_m for all m >= n
    bool converging = false;   // (A_last - S^2) < (A_1 - S^2)/2
};

inline TraceCheck check_trace(const BoundTrace& trace) {
    if (trace.A.empty()) throw DomainError("check_trace: empty trace");
    double s = trace.s_estimate;
    double s2 = s * s;
    double scale = std::max(std::abs(trace.A.front()), 1e-300);
    double tol = 1e-12 * scale;

    TraceCheck out;
    out.it1_holds = true;
    for (std::size_t k = 0; k < trace.A.size(); ++k) {
        if (s2 > trace.A[k] + tol) out.it1_holds = false;
        if (k > 0 && trace.A[k] > trace.A[k - 1] + tol) out.it1_holds = false;
    }

    double tol_s = 1e-12 * std::max(std::abs(s), 1e-300);
    int from = static_cast<int>(trace.L.size());
    for (int k = static_cast<int>(trace.L.size()) - 1; k >= 0; --k) {
        if (trace.L[k] <= s + tol_s && s <= trace.G[k] + tol_s) from = k;
        else break;
    }
    out.it2_holds_from = from;

    if (trace.A.size() >= 2)
        out.converging = (trace.A.back() - s2) < 0.5 * (trace.A[1] - s2) + tol;
    return out;
}

}  // namespace meanref
