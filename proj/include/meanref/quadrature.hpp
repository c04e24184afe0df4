#pragma once

// Quadrature backend for the integral refinements: adaptive Simpson with the
// classic (S_fine - S_coarse)/15 error estimate and Richardson correction,
// a fixed composite Simpson rule, and sign-classified region integration
// used by the max/min gap identity.

#include <cmath>
#include <functional>

#include "meanref/errors.hpp"

namespace meanref {

enum class QuadRule { adaptive_simpson, fixed_composite };

struct QuadratureSpec {
    double a = 0.0;
    double b = 1.0;
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    long max_nodes = 2000000;
    QuadRule rule = QuadRule::adaptive_simpson;
    int fixed_n = 2049;  // node count for fixed_composite (odd)

    QuadratureSpec() = default;
    QuadratureSpec(double a_, double b_) : a(a_), b(b_) {}

    void validate() const {
        if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
            throw DomainError("quadrature: need finite a < b");
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("quadrature: tolerances must be positive");
        if (max_nodes < 16) throw DomainError("quadrature: max_nodes must be >= 16");
    }
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    long nodes = 0;
};

namespace detail {

struct AdaptiveSimpson {
    const std::function<double(double)>& f;
    long max_nodes;
    long nodes = 0;
    double value = 0.0;
    double error = 0.0;

    double sample(double x) {
        if (++nodes > max_nodes)
            throw QuadratureFailure("adaptive Simpson: node budget exhausted");
        double v = f(x);
        if (std::isnan(v)) throw QuadratureFailure("adaptive Simpson: non-finite integrand sample");
        return v;
    }

    static double simpson(double h, double fa, double fm, double fb) {
        return (fa + 4.0 * fm + fb) * (h / 6.0);
    }

    void recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                 int depth) {
        double m = 0.5 * (a + b);
        double lm = 0.5 * (a + m);
        double rm = 0.5 * (m + b);
        double flm = sample(lm);
        double frm = sample(rm);
        double h = b - a;
        double left = simpson(0.5 * h, fa, flm, fm);
        double right = simpson(0.5 * h, fm, frm, fb);
        double delta = left + right - whole;
        if ((depth >= 2 && std::abs(delta) <= 15.0 * tol) || depth >= 52) {
            value += left + right + delta / 15.0;
            error += std::abs(delta) / 15.0;
            return;
        }
        recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1);
        recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace detail

inline QuadResult integrate(const std::function<double(double)>& f, const QuadratureSpec& spec) {
    spec.validate();
    if (spec.rule == QuadRule::fixed_composite) {
        int n = spec.fixed_n | 1;  // force odd
        if (n < 3) n = 3;
        double h = (spec.b - spec.a) / (n - 1);
        double fine = 0.0, coarse = 0.0;
        // composite Simpson over all nodes and over every second node
        for (int pass = 0; pass < 2; ++pass) {
            int step = pass == 0 ? 1 : 2;
            if ((n - 1) % (2 * step) != 0) break;
            double acc = 0.0;
            for (int i = 0; i + 2 * step <= n - 1; i += 2 * step) {
                double x0 = spec.a + i * h;
                double x1 = spec.a + (i + step) * h;
                double x2 = spec.a + (i + 2 * step) * h;
                acc += (f(x0) + 4.0 * f(x1) + f(x2)) * (x2 - x0) / 6.0;
            }
            (pass == 0 ? fine : coarse) = acc;
        }
        return {fine, std::abs(fine - coarse) / 15.0, n};
    }
    detail::AdaptiveSimpson engine{f, spec.max_nodes};
    double fa = engine.sample(spec.a);
    double fm = engine.sample(0.5 * (spec.a + spec.b));
    double fb = engine.sample(spec.b);
    double whole = detail::AdaptiveSimpson::simpson(spec.b - spec.a, fa, fm, fb);
    double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(whole));
    engine.recurse(spec.a, spec.b, fa, fm, fb, whole, tol, 0);
    return {engine.value, engine.error, engine.nodes};
}

// Integral of u over the subset of [a,b] where sign(x) has the requested
// sign. Cells are classified by the sign of `sign` at their endpoints and
// midpoint; straddling cells are bisected until width < 1e-12 or the node
// budget runs out.
inline QuadResult integrate_region(const std::function<double(double)>& u,
                                   const std::function<double(double)>& sign,
                                   bool positive_side, const QuadratureSpec& spec) {
    spec.validate();
    QuadResult total;
    long nodes_left = spec.max_nodes;

    std::function<void(double, double, double, double, int)> walk = [&](double a, double b,
                                                                        double sa, double sb,
                                                                        int depth) {
        double m = 0.5 * (a + b);
        double sm = sign(m);
        if (--nodes_left < 0) throw QuadratureFailure("integrate_region: node budget exhausted");
        auto on_side = [&](double s) { return positive_side ? s >= 0.0 : s <= 0.0; };
        auto off_side = [&](double s) { return positive_side ? s <= 0.0 : s >= 0.0; };
        if (on_side(sa) && on_side(sm) && on_side(sb)) {
            QuadratureSpec cell = spec;
            cell.a = a;
            cell.b = b;
            cell.abs_tol = std::max(spec.abs_tol * (b - a) / (spec.b - spec.a), 1e-300);
            cell.max_nodes = nodes_left;
            QuadResult r = integrate(u, cell);
            nodes_left -= r.nodes;
            total.value += r.value;
            total.error += r.error;
            total.nodes += r.nodes;
            return;
        }
        if (off_side(sa) && off_side(sm) && off_side(sb)) return;
        if (b - a < 1e-12 || depth >= 60) {
            if (on_side(sm)) {
                double h = b - a;
                total.value += (u(a) + 4.0 * u(m) + u(b)) * (h / 6.0);
                total.error += std::abs(u(m)) * h;
            }
            return;
        }
        walk(a, m, sa, sm, depth + 1);
        walk(m, b, sm, sb, depth + 1);
    };

    walk(spec.a, spec.b, sign(spec.a), sign(spec.b), 0);
    return total;
}

}  // namespace meanref
