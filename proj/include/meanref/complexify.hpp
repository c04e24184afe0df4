#pragma once

// Complex-plane classification for the complexified AM-GM inequality
// |s| <= |(s+1)/2|^2 and its separating quartic curve
//   x^4 + y^4 + 2x^2y^2 + 4x^3 + 4xy^2 - 10x^2 - 14y^2 + 4x + 1 = 0,
// given in polar form by r = 2 - cos(phi) +/- sqrt((2-cos(phi))^2 - 1).
//
// Region naming follows the sign of rhs - lhs, not the prose: "outside" is
// where the inequality holds (as it does for |s| large and inside the inner
// branch), "inside" is the region between the two branches where the reversed
// inequality holds. On the real axis that region is exactly
// (-3-2*sqrt(2), -3+2*sqrt(2)).

#include <cmath>
#include <complex>
#include <vector>

#include "meanref/errors.hpp"

namespace meanref {

enum class Region { inside, boundary, outside };

inline const char* to_string(Region r) {
    switch (r) {
        case Region::inside: return "inside";
        case Region::boundary: return "boundary";
        default: return "outside";
    }
}

struct PointClass {
    std::complex<double> s;
    double lhs = 0.0;  // |s|
    double rhs = 0.0;  // |(s+1)/2|^2
    Region region = Region::outside;
};

inline PointClass classify_point(std::complex<double> s, double tol) {
    if (!(tol > 0.0)) throw DomainError("classify_point: tol must be positive");
    PointClass out;
    out.s = s;
    out.lhs = std::abs(s);
    out.rhs = std::norm(0.5 * (s + 1.0));
    double band = tol * (1.0 + out.lhs);
    if (std::abs(out.lhs - out.rhs) <= band) out.region = Region::boundary;
    else if (out.lhs > out.rhs) out.region = Region::inside;
    else out.region = Region::outside;
    return out;
}

enum class CurveBranch { plus, minus };

struct CurvePoint {
    double phi = 0.0;
    CurveBranch branch = CurveBranch::plus;
    double r = 0.0;
    double x = 0.0;
    double y = 0.0;
};

// x^4+y^4+2x^2y^2+4x^3+4xy^2-10x^2-14y^2+4x+1; zero on the curve.
inline double quartic_residual(double x, double y) {
    double x2 = x * x, y2 = y * y;
    return x2 * x2 + y2 * y2 + 2.0 * x2 * y2 + 4.0 * x2 * x + 4.0 * x * y2 - 10.0 * x2 -
           14.0 * y2 + 4.0 * x + 1.0;
}

inline CurvePoint curve_point(double phi, CurveBranch branch) {
    double c = 2.0 - std::cos(phi);
    double root = std::sqrt(c * c - 1.0);  // c >= 1, radicand >= 0 for all phi
    double r = branch == CurveBranch::plus ? c + root : c - root;
    CurvePoint p;
    p.phi = phi;
    p.branch = branch;
    p.r = r;
    p.x = r * std::cos(phi);
    p.y = r * std::sin(phi);
    return p;
}

// n points per branch at uniform phi in [0, 2*pi).
inline std::vector<CurvePoint> sample_curve(int n) {
    if (n < 4) throw DomainError("sample_curve: need n >= 4");
    std::vector<CurvePoint> pts;
    pts.reserve(2 * static_cast<std::size_t>(n));
    const double two_pi = 6.283185307179586476925287;
    for (int b = 0; b < 2; ++b) {
        CurveBranch branch = b == 0 ? CurveBranch::plus : CurveBranch::minus;
        for (int i = 0; i < n; ++i) pts.push_back(curve_point(two_pi * i / n, branch));
    }
    return pts;
}

struct UnitDiskClass {
    Region region = Region::outside;  // position of s relative to the unit circle
    bool inequality_holds = false;    // |s| <= ((|s|+1)/2)^2
    double slack = 0.0;               // ((|s|+1)/2)^2 - |s| = ((|s|-1)/2)^2 >= 0
};

// Second complexified inequality |s| <= ((|s|+1)/2)^2. It depends on |s|
// only and holds for every s, with equality exactly on the unit circle
// (slack ((|s|-1)/2)^2); the classifier reports the disk position alongside
// the verdict.
inline UnitDiskClass classify_unit_disk(std::complex<double> s, double tol = 1e-12) {
    UnitDiskClass out;
    double u = std::abs(s);
    double rhs = 0.25 * (u + 1.0) * (u + 1.0);
    out.slack = rhs - u;
    out.inequality_holds = u <= rhs + tol;
    if (std::abs(u - 1.0) <= tol * (1.0 + u)) out.region = Region::boundary;
    else if (u < 1.0) out.region = Region::inside;
    else out.region = Region::outside;
    return out;
}

}  // namespace meanref
