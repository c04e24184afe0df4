#pragma once

#include <charconv>
#include <cstdint>
#include <cmath>
#include <string>
#include <system_error>

namespace meanref::detail {

// splitmix64; used to derive independent per-sample generators so that
// results do not depend on how samples are partitioned across threads.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_bits() {
        state_ = splitmix64(state_ + 0x9e3779b97f4a7c15ULL);
        return state_;
    }

    // uniform in [0, 1)
    double uniform01() { return static_cast<double>(next_bits() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // 10^U(lo_exp, hi_exp)
    double log_uniform(double lo_exp, double hi_exp) {
        return std::pow(10.0, uniform(lo_exp, hi_exp));
    }

    // standard normal via Box-Muller
    double gaussian() {
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

private:
    std::uint64_t state_;
};

// Per-sample generator: deterministic for a given (seed, index) regardless of
// how the sample loop is split across threads.
inline SampleRng sample_rng(std::uint64_t seed, std::uint64_t index) {
    return SampleRng(splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1))));
}

// Shortest decimal form that round-trips; used by the canonical mean-kind
// text form and the CLI JSON emitter.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Fixed 17-significant-digit form for CSV exports.
inline std::string format_double_17(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline bool parse_double(std::string_view text, double& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

}  // namespace meanref::detail
