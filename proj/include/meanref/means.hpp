#pragma once

// Catalog of two-argument means: power and Rado scales with their extended
// parameter values as explicit tags, Gini/Lehmer, weighted, quasi-arithmetic,
// iterative (compound) means, complementary means M*(x,y) = xy / M(x,y), and
// a sampling-based axiom checker (intermediacy, unbiasedness, homogeneity,
// monotonicity).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "meanref/detail/util.hpp"
#include "meanref/errors.hpp"

namespace meanref {

// Real line extended by -inf/+inf. The infinities are tags, never large
// finite stand-ins; evaluation dispatches on them exactly.
class ExtendedReal {
public:
    enum class Kind { neg_inf, finite, pos_inf };

    static ExtendedReal neg_inf() { return ExtendedReal(Kind::neg_inf, 0.0); }
    static ExtendedReal pos_inf() { return ExtendedReal(Kind::pos_inf, 0.0); }
    static ExtendedReal finite(double v) {
        if (std::isnan(v) || std::isinf(v)) throw DomainError("finite() requires a finite value");
        return ExtendedReal(Kind::finite, v);
    }
    // Maps IEEE +/-inf onto the tags; rejects NaN.
    static ExtendedReal from_double(double v) {
        if (std::isnan(v)) throw DomainError("NaN parameter");
        if (std::isinf(v)) return v > 0 ? pos_inf() : neg_inf();
        return finite(v);
    }

    Kind kind() const noexcept { return kind_; }
    bool is_finite() const noexcept { return kind_ == Kind::finite; }
    bool is_neg_inf() const noexcept { return kind_ == Kind::neg_inf; }
    bool is_pos_inf() const noexcept { return kind_ == Kind::pos_inf; }

    // Finite value; only meaningful when is_finite().
    double value() const noexcept { return value_; }

    // For reporting: the IEEE image of the extended value.
    double as_double() const noexcept {
        switch (kind_) {
            case Kind::neg_inf: return -std::numeric_limits<double>::infinity();
            case Kind::pos_inf: return std::numeric_limits<double>::infinity();
            default: return value_;
        }
    }

    friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.kind_ != b.kind_) return false;
        return a.kind_ != Kind::finite || a.value_ == b.value_;
    }

private:
    ExtendedReal(Kind k, double v) : kind_(k), value_(v) {}
    Kind kind_;
    double value_;
};

// Generator of a quasi-arithmetic mean: strictly monotone forward map with
// its inverse, valid on [lo, hi].
struct MonotoneFn {
    std::function<double(double)> forward;
    std::function<double(double)> inverse;
    double lo = 1e-9;
    double hi = 1e9;
    std::string label = "f";
};

// Spot-checks strict monotonicity and inverse(forward(x)) == x on a sample
// grid before accepting the generator.
inline MonotoneFn checked_monotone_fn(std::function<double(double)> forward,
                                      std::function<double(double)> inverse,
                                      double lo, double hi, std::string label = "f") {
    if (!(lo < hi)) throw DomainError("monotone generator: empty domain");
    MonotoneFn fn{std::move(forward), std::move(inverse), lo, hi, std::move(label)};
    constexpr int grid = 33;
    double prev = 0.0;
    int direction = 0;
    for (int i = 0; i < grid; ++i) {
        // geometric grid keeps wide domains honest
        double t = static_cast<double>(i) / (grid - 1);
        double x = lo * std::pow(hi / lo, t);
        double fx = fn.forward(x);
        if (!std::isfinite(fx)) throw DomainError("monotone generator: non-finite forward value");
        double back = fn.inverse(fx);
        if (std::abs(back - x) > 1e-10 * std::max(1.0, std::abs(x)))
            throw DomainError("monotone generator: inverse does not invert forward");
        if (i > 0) {
            int d = fx > prev ? 1 : (fx < prev ? -1 : 0);
            if (d == 0) throw DomainError("monotone generator: not strictly monotone");
            if (direction == 0) direction = d;
            else if (d != direction) throw DomainError("monotone generator: not monotone");
        }
        prev = fx;
    }
    return fn;
}

class MeanKind {
public:
    struct Power { ExtendedReal alpha; };
    struct Rado { ExtendedReal beta; };
    struct Gini { double u, v; };
    struct Lehmer { double u; };
    struct WeightedArithmetic { double w; };
    struct WeightedGeometric { double w; };
    struct QuasiArithmetic { MonotoneFn generator; };
    struct Iterative {
        std::shared_ptr<const MeanKind> m;
        std::shared_ptr<const MeanKind> n;
    };
    struct Complementary { std::shared_ptr<const MeanKind> inner; };
    struct Min {};
    struct Max {};
    // Mean reconstructed from its homogeneity profile h: M(x,y) = (x+y) h(ln(y/x)).
    struct FromH {
        std::function<double(double)> h;
        std::string label;
    };

    using Node = std::variant<Power, Rado, Gini, Lehmer, WeightedArithmetic, WeightedGeometric,
                              QuasiArithmetic, Iterative, Complementary, Min, Max, FromH>;

    static MeanKind power(ExtendedReal alpha) { return MeanKind(Power{alpha}); }
    static MeanKind power(double alpha) { return power(ExtendedReal::from_double(alpha)); }
    static MeanKind rado(ExtendedReal beta) { return MeanKind(Rado{beta}); }
    static MeanKind rado(double beta) { return rado(ExtendedReal::from_double(beta)); }
    static MeanKind gini(double u, double v) {
        if (std::isnan(u) || std::isnan(v)) throw DomainError("gini: NaN parameter");
        return MeanKind(Gini{u, v});
    }
    static MeanKind lehmer(double u) {
        if (std::isnan(u)) throw DomainError("lehmer: NaN parameter");
        return MeanKind(Lehmer{u});
    }
    static MeanKind weighted_arithmetic(double w) {
        if (!(w >= 0.0 && w <= 1.0)) throw DomainError("weighted mean: w must lie in [0,1]");
        return MeanKind(WeightedArithmetic{w});
    }
    static MeanKind weighted_geometric(double w) {
        if (!(w >= 0.0 && w <= 1.0)) throw DomainError("weighted mean: w must lie in [0,1]");
        return MeanKind(WeightedGeometric{w});
    }
    static MeanKind quasi_arithmetic(MonotoneFn generator) {
        return MeanKind(QuasiArithmetic{std::move(generator)});
    }
    static MeanKind iterative(MeanKind m, MeanKind n) {
        return MeanKind(Iterative{std::make_shared<const MeanKind>(std::move(m)),
                                  std::make_shared<const MeanKind>(std::move(n))});
    }
    static MeanKind complementary(MeanKind inner) {
        return MeanKind(Complementary{std::make_shared<const MeanKind>(std::move(inner))});
    }
    static MeanKind min() { return MeanKind(Min{}); }
    static MeanKind max() { return MeanKind(Max{}); }
    static MeanKind from_h(std::function<double(double)> h, std::string label = "h") {
        return MeanKind(FromH{std::move(h), std::move(label)});
    }

    const Node& node() const noexcept { return node_; }

private:
    explicit MeanKind(Node n) : node_(std::move(n)) {}
    Node node_;
};

double eval_mean(const MeanKind& kind, double x, double y);

namespace detail {

constexpr double ln2 = 0.6931471805599453;

// ((x^a + y^a)/2)^(1/a) for finite a != 0 and x, y > 0. Factoring out the
// dominant argument keeps the intermediate exponential in [0,1], so the same
// expression covers |a| > 50 and inputs spanning the full double range.
inline double power_mean_pos(double alpha, double x, double y) {
    if (x == y) return x;
    if (std::abs(alpha) < 1e-5) {
        // 2nd-order expansion around alpha = 0; the direct form cancels here
        double u = std::log(x), v = std::log(y);
        double d = 0.5 * (u - v);
        double lnm = 0.5 * (u + v) + alpha * d * d * 0.5 - alpha * alpha * alpha * d * d * d * d / 12.0;
        return std::exp(lnm);
    }
    double anchor = alpha > 0 ? std::max(x, y) : std::min(x, y);
    double other = alpha > 0 ? std::min(x, y) : std::max(x, y);
    double t = alpha * std::log(other / anchor);  // <= 0
    return anchor * std::exp((std::log1p(std::exp(t)) - ln2) / alpha);
}

// Rado mean for finite beta not in {0, -1} and x, y > 0.
inline double rado_mean_pos(double beta, double x, double y) {
    if (x == y) return x;
    if (x < y) std::swap(x, y);  // formula is symmetric
    double mx = x;
    if (std::abs(x - y) < 1e-7 * mx) {
        // removable-cancellation band: R_b(x,y) ~ m (1 + (b-1) e^2 / 6)
        double m = 0.5 * (x + y);
        double eps = (x - y) / (x + y);
        return m * (1.0 + (beta - 1.0) * eps * eps / 6.0);
    }
    double u = std::log(x), v = std::log(y);
    double p = beta + 1.0;
    double d = u - v;  // > 0
    double ln_ratio;   // ln( expm1(p d) / p ), positive argument for all p != 0
    double w = p * d;
    if (p > 0) {
        ln_ratio = (w > 500.0 ? w + std::log1p(-std::exp(-w)) : std::log(std::expm1(w))) - std::log(p);
    } else {
        ln_ratio = std::log1p(-std::exp(w)) - std::log(-p);
    }
    double ln_base = p * v + ln_ratio - std::log(x - y);
    return std::exp(ln_base / beta);
}

// log mean (y-x)/(ln y - ln x)
inline double log_mean_pos(double x, double y) {
    if (x == y) return x;
    if (x < y) std::swap(x, y);
    if (std::abs(x - y) < 1e-7 * x) {
        double m = 0.5 * (x + y);
        double eps = (x - y) / (x + y);
        return m * (1.0 - eps * eps / 3.0);
    }
    return (x - y) / std::log(x / y);
}

// identric mean e^{-1} (y^y / x^x)^{1/(y-x)}
inline double identric_mean_pos(double x, double y) {
    if (x == y) return x;
    if (std::abs(x - y) < 1e-7 * std::max(x, y)) {
        double m = 0.5 * (x + y);
        double eps = (x - y) / (x + y);
        return m * (1.0 - eps * eps / 6.0);
    }
    return std::exp((y * std::log(y) - x * std::log(x)) / (y - x) - 1.0);
}

// ln(x^s + y^s) in log domain
inline double lse_pow(double s, double lx, double ly) {
    double a = s * lx, b = s * ly;
    double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

inline double gini_mean_pos(double u, double v, double x, double y) {
    if (x == y) return x;
    double lx = std::log(x), ly = std::log(y);
    double scale = std::max({1.0, std::abs(u), std::abs(v)});
    if (std::abs(u - v) <= 1e-8 * scale) {
        // equal-parameter limit: exp of the x^s-weighted mean of logs
        double s = 0.5 * (u + v);
        double t = s * (ly - lx);
        double wx = 1.0 / (1.0 + std::exp(t));
        return std::exp(wx * lx + (1.0 - wx) * ly);
    }
    return std::exp((lse_pow(u, lx, ly) - lse_pow(v, lx, ly)) / (u - v));
}

inline bool gini_needs_positive(double u, double v) { return u < 0.0 || v < 0.0; }

// Gini mean with nonnegative parameters admits zero arguments directly.
inline double gini_mean_zero(double u, double v, double x, double y) {
    double xu = std::pow(x, u), yu = std::pow(y, u);
    double xv = std::pow(x, v), yv = std::pow(y, v);
    if (u == v) {
        if (x == 0.0 && y == 0.0) return 0.0;
        if (u == 0.0) return std::sqrt(x) * std::sqrt(y);
        double num = (x > 0 ? xu * std::log(x) : 0.0) + (y > 0 ? yu * std::log(y) : 0.0);
        return std::exp(num / (xu + yu));
    }
    double denom = xv + yv;
    if (denom == 0.0) return 0.0;
    return std::pow((xu + yu) / denom, 1.0 / (u - v));
}

}  // namespace detail

struct IterateResult {
    double value = 0.0;
    int iterations = 0;
};

// Compound (iterative) mean: x_{n+1} = M(x_n, y_n), y_{n+1} = N(x_n, y_n),
// stopping when |x_n - y_n| <= rel_tol * max(x_n, y_n).
inline IterateResult iterate_mean(const MeanKind& m, const MeanKind& n, double x0, double y0,
                                  double rel_tol, int max_iter) {
    if (!(x0 > 0.0) || !(y0 > 0.0)) throw DomainError("iterate_mean: arguments must be positive");
    if (!(rel_tol > 0.0)) throw DomainError("iterate_mean: rel_tol must be positive");
    if (max_iter < 1) throw DomainError("iterate_mean: max_iter must be >= 1");
    double x = x0, y = y0;
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(x - y) <= rel_tol * std::max(std::abs(x), std::abs(y)))
            return {0.5 * (x + y), it};
        double nx = eval_mean(m, x, y);
        double ny = eval_mean(n, x, y);
        x = nx;
        y = ny;
    }
    if (std::abs(x - y) <= rel_tol * std::max(std::abs(x), std::abs(y)))
        return {0.5 * (x + y), max_iter};
    throw NoConvergence("iterate_mean: mean pair did not contract within the iteration budget");
}

inline double eval_mean(const MeanKind& kind, double x, double y) {
    if (std::isnan(x) || std::isnan(y) || std::isinf(x) || std::isinf(y))
        throw DomainError("eval_mean: arguments must be finite");
    if (x < 0.0 || y < 0.0) throw DomainError("eval_mean: arguments must be nonnegative");

    const bool has_zero = (x == 0.0 || y == 0.0);

    double result = std::visit(
        [&](const auto& node) -> double {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, MeanKind::Power>) {
                const ExtendedReal& a = node.alpha;
                if (a.is_neg_inf()) return std::min(x, y);
                if (a.is_pos_inf()) return std::max(x, y);
                double alpha = a.value();
                if (x == y) return x;
                if (alpha == 0.0) {
                    return std::sqrt(x) * std::sqrt(y);
                }
                if (has_zero) {
                    if (alpha < 0.0) throw DomainError("power mean with negative exponent needs positive arguments");
                    // M_a(0, t) = t 2^{-1/a}
                    return std::max(x, y) * std::exp2(-1.0 / alpha);
                }
                return detail::power_mean_pos(alpha, x, y);
            } else if constexpr (std::is_same_v<T, MeanKind::Rado>) {
                const ExtendedReal& b = node.beta;
                if (b.is_neg_inf()) return std::min(x, y);
                if (b.is_pos_inf()) return std::max(x, y);
                double beta = b.value();
                if (x == y) return x;
                if (has_zero) {
                    if (beta <= 0.0) throw DomainError("Rado mean with beta <= 0 needs positive arguments");
                    // R_b(0, t) = t (b+1)^{-1/b}
                    return std::max(x, y) * std::pow(beta + 1.0, -1.0 / beta);
                }
                if (beta == -1.0) return detail::log_mean_pos(x, y);
                if (beta == 0.0) return detail::identric_mean_pos(x, y);
                return detail::rado_mean_pos(beta, x, y);
            } else if constexpr (std::is_same_v<T, MeanKind::Gini>) {
                if (has_zero) {
                    if (detail::gini_needs_positive(node.u, node.v))
                        throw DomainError("Gini mean with negative parameters needs positive arguments");
                    return detail::gini_mean_zero(node.u, node.v, x, y);
                }
                return detail::gini_mean_pos(node.u, node.v, x, y);
            } else if constexpr (std::is_same_v<T, MeanKind::Lehmer>) {
                if (has_zero) {
                    if (node.u < 0.0)
                        throw DomainError("Lehmer mean with u < 0 needs positive arguments");
                    return detail::gini_mean_zero(node.u + 1.0, node.u, x, y);
                }
                return detail::gini_mean_pos(node.u + 1.0, node.u, x, y);
            } else if constexpr (std::is_same_v<T, MeanKind::WeightedArithmetic>) {
                return node.w * x + (1.0 - node.w) * y;
            } else if constexpr (std::is_same_v<T, MeanKind::WeightedGeometric>) {
                if (x == 0.0) return node.w > 0.0 ? 0.0 : y;
                if (y == 0.0) return node.w < 1.0 ? 0.0 : x;
                if (x == y) return x;
                return std::exp(node.w * std::log(x) + (1.0 - node.w) * std::log(y));
            } else if constexpr (std::is_same_v<T, MeanKind::QuasiArithmetic>) {
                const MonotoneFn& f = node.generator;
                if (x < f.lo || x > f.hi || y < f.lo || y > f.hi)
                    throw DomainError("quasi-arithmetic mean: argument outside generator domain");
                return f.inverse(0.5 * (f.forward(x) + f.forward(y)));
            } else if constexpr (std::is_same_v<T, MeanKind::Iterative>) {
                if (x == y) return x;
                if (has_zero) throw DomainError("iterative mean needs positive arguments");
                return iterate_mean(*node.m, *node.n, x, y, 1e-15, 300).value;
            } else if constexpr (std::is_same_v<T, MeanKind::Complementary>) {
                if (has_zero) throw DomainError("complementary mean needs positive arguments");
                return x * y / eval_mean(*node.inner, x, y);
            } else if constexpr (std::is_same_v<T, MeanKind::Min>) {
                return std::min(x, y);
            } else if constexpr (std::is_same_v<T, MeanKind::Max>) {
                return std::max(x, y);
            } else {  // FromH
                if (has_zero) throw DomainError("h-profile mean needs positive arguments");
                if (x == y) return x * 2.0 * node.h(0.0);
                return (x + y) * node.h(std::log(y / x));
            }
        },
        kind.node());

    if (!std::isfinite(result)) throw NonFiniteError("eval_mean: non-finite result");
    return result;
}

// M*(x,y) = xy / M(x,y)
inline double complementary_eval(const MeanKind& inner, double x, double y) {
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError("complementary_eval: arguments must be positive");
    double m = eval_mean(inner, x, y);
    double r = x * y / m;
    if (!std::isfinite(r)) throw NonFiniteError("complementary_eval: non-finite result");
    return r;
}

// n-ary quasi-arithmetic mean f^{-1}(sum p_k f(x_k)); weights must sum to 1.
inline double quasi_arithmetic_eval(const MonotoneFn& f, const std::vector<double>& xs,
                                    const std::vector<double>& weights) {
    if (xs.empty()) throw DomainError("quasi_arithmetic_eval: empty input");
    if (xs.size() != weights.size()) throw LengthMismatch("quasi_arithmetic_eval: length mismatch");
    double wsum = 0.0, acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (weights[i] < 0.0) throw DomainError("quasi_arithmetic_eval: negative weight");
        if (xs[i] < f.lo || xs[i] > f.hi)
            throw DomainError("quasi_arithmetic_eval: argument outside generator domain");
        wsum += weights[i];
        acc += weights[i] * f.forward(xs[i]);
    }
    if (std::abs(wsum - 1.0) > 1e-12) throw DomainError("quasi_arithmetic_eval: weights must sum to 1");
    double r = f.inverse(acc);
    if (!std::isfinite(r)) throw NonFiniteError("quasi_arithmetic_eval: non-finite result");
    return r;
}

struct AxiomViolation {
    const char* axiom;
    double x, y;
    double aux;  // homogeneity scale or perturbed coordinate
    double lhs, rhs;
};

struct AxiomReport {
    std::vector<AxiomViolation> intermediacy_violations;
    std::vector<AxiomViolation> reflexivity_violations;
    std::vector<AxiomViolation> homogeneity_violations;
    std::vector<AxiomViolation> monotonicity_violations;
    int samples_used = 0;
    std::uint64_t seed = 0;

    bool clean() const {
        return intermediacy_violations.empty() && reflexivity_violations.empty() &&
               homogeneity_violations.empty() && monotonicity_violations.empty();
    }
};

// Samples pseudo-random positive pairs (log-uniform over [1e-3, 1e3]) and
// records every axiom check that fails beyond relative tolerance 1e-9.
inline AxiomReport check_axioms(const MeanKind& kind, int samples, std::uint64_t seed) {
    if (samples < 1) throw DomainError("check_axioms: samples must be >= 1");
    constexpr double tol = 1e-9;
    AxiomReport report;
    report.samples_used = samples;
    report.seed = seed;

    for (int i = 0; i < samples; ++i) {
        auto rng = detail::sample_rng(seed, static_cast<std::uint64_t>(i));
        double x = rng.log_uniform(-3.0, 3.0);
        double y = rng.log_uniform(-3.0, 3.0);
        double m = eval_mean(kind, x, y);
        double lo = std::min(x, y), hi = std::max(x, y);

        if (m < lo - tol * hi || m > hi + tol * hi)
            report.intermediacy_violations.push_back({"intermediacy", x, y, 0.0, m, lo});

        double mx = eval_mean(kind, x, x);
        if (std::abs(mx - x) > tol * x)
            report.reflexivity_violations.push_back({"reflexivity", x, x, 0.0, mx, x});

        double a = rng.log_uniform(-2.0, 2.0);
        double ms = eval_mean(kind, a * x, a * y);
        if (std::abs(ms - a * m) > tol * std::max(std::abs(ms), std::abs(a * m)))
            report.homogeneity_violations.push_back({"homogeneity", x, y, a, ms, a * m});

        double x2 = x * (1.0 + rng.uniform(0.0, 1.0));
        double y2 = y * (1.0 + rng.uniform(0.0, 1.0));
        double m_x2 = eval_mean(kind, x2, y);
        double m_y2 = eval_mean(kind, x, y2);
        if (m_x2 < m - tol * std::max(m, m_x2))
            report.monotonicity_violations.push_back({"monotonicity", x, y, x2, m_x2, m});
        if (m_y2 < m - tol * std::max(m, m_y2))
            report.monotonicity_violations.push_back({"monotonicity", x, y, y2, m_y2, m});
    }
    return report;
}

// ---------------------------------------------------------------------------
// Canonical text form: power:0.5, rado:-1, gini:2:1, lehmer:1, warith:0.3,
// wgeom:0.3, min, max, compl(power:2), iter(power:1,power:0).
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_extended(const ExtendedReal& e) {
    if (e.is_neg_inf()) return "-inf";
    if (e.is_pos_inf()) return "inf";
    return format_double(e.value());
}

}  // namespace detail

inline std::string format_mean_kind(const MeanKind& kind) {
    return std::visit(
        [](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, MeanKind::Power>) {
                return "power:" + detail::format_extended(node.alpha);
            } else if constexpr (std::is_same_v<T, MeanKind::Rado>) {
                return "rado:" + detail::format_extended(node.beta);
            } else if constexpr (std::is_same_v<T, MeanKind::Gini>) {
                return "gini:" + detail::format_double(node.u) + ":" + detail::format_double(node.v);
            } else if constexpr (std::is_same_v<T, MeanKind::Lehmer>) {
                return "lehmer:" + detail::format_double(node.u);
            } else if constexpr (std::is_same_v<T, MeanKind::WeightedArithmetic>) {
                return "warith:" + detail::format_double(node.w);
            } else if constexpr (std::is_same_v<T, MeanKind::WeightedGeometric>) {
                return "wgeom:" + detail::format_double(node.w);
            } else if constexpr (std::is_same_v<T, MeanKind::QuasiArithmetic>) {
                return "quasi(" + node.generator.label + ")";  // not parseable
            } else if constexpr (std::is_same_v<T, MeanKind::Iterative>) {
                return "iter(" + format_mean_kind(*node.m) + "," + format_mean_kind(*node.n) + ")";
            } else if constexpr (std::is_same_v<T, MeanKind::Complementary>) {
                return "compl(" + format_mean_kind(*node.inner) + ")";
            } else if constexpr (std::is_same_v<T, MeanKind::Min>) {
                return "min";
            } else if constexpr (std::is_same_v<T, MeanKind::Max>) {
                return "max";
            } else {
                return "fromh(" + node.label + ")";  // not parseable
            }
        },
        kind.node());
}

namespace detail {

class MeanKindParser {
public:
    explicit MeanKindParser(std::string_view text) : text_(text) {}

    MeanKind parse() {
        MeanKind k = parse_kind();
        if (pos_ != text_.size()) throw ParseError("trailing characters", pos_, "end of input");
        return k;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

    void expect(char c) {
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw ParseError("unexpected character", pos_, std::string("'") + c + "'");
        ++pos_;
    }

    ExtendedReal parse_extended() {
        if (starts_with("-inf")) { pos_ += 4; return ExtendedReal::neg_inf(); }
        if (starts_with("+inf")) { pos_ += 4; return ExtendedReal::pos_inf(); }
        if (starts_with("inf")) { pos_ += 3; return ExtendedReal::pos_inf(); }
        return ExtendedReal::finite(parse_number());
    }

    double parse_number() {
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        double v = 0.0;
        auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc()) throw ParseError("expected a number", pos_, "number");
        pos_ += static_cast<std::size_t>(res.ptr - first);
        return v;
    }

    MeanKind parse_kind() {
        if (starts_with("power:")) { pos_ += 6; return MeanKind::power(parse_extended()); }
        if (starts_with("rado:")) { pos_ += 5; return MeanKind::rado(parse_extended()); }
        if (starts_with("gini:")) {
            pos_ += 5;
            double u = parse_number();
            expect(':');
            double v = parse_number();
            return MeanKind::gini(u, v);
        }
        if (starts_with("lehmer:")) { pos_ += 7; return MeanKind::lehmer(parse_number()); }
        if (starts_with("warith:")) { pos_ += 7; return MeanKind::weighted_arithmetic(parse_number()); }
        if (starts_with("wgeom:")) { pos_ += 6; return MeanKind::weighted_geometric(parse_number()); }
        if (starts_with("compl(")) {
            pos_ += 6;
            MeanKind inner = parse_kind();
            expect(')');
            return MeanKind::complementary(std::move(inner));
        }
        if (starts_with("iter(")) {
            pos_ += 5;
            MeanKind m = parse_kind();
            expect(',');
            MeanKind n = parse_kind();
            expect(')');
            return MeanKind::iterative(std::move(m), std::move(n));
        }
        if (starts_with("min")) { pos_ += 3; return MeanKind::min(); }
        if (starts_with("max")) { pos_ += 3; return MeanKind::max(); }
        throw ParseError("unknown mean kind", pos_,
                         "power:|rado:|gini:|lehmer:|warith:|wgeom:|min|max|compl(|iter(");
    }
};

}  // namespace detail

inline MeanKind parse_mean_kind(std::string_view text) {
    return detail::MeanKindParser(text).parse();
}

}  // namespace meanref
