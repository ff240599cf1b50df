#include "sweepout/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sweepout/certificate.hpp"

namespace sweepout {

namespace {

// Adaptive Simpson on [a, b].  Stops when the local error estimate is below
// both the absolute and the relative budget for the subinterval.
double simpson(const std::function<double(double)>& f, double a, double m, double b,
               double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double b,
                     double fa, double fm, double fb, double whole, double tol_abs,
                     double tol_rel, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(f, a, lm, m, fa, flm, fm);
    double right = simpson(f, m, rm, b, fm, frm, fb);
    double diff = left + right - whole;
    if (depth <= 0 ||
        std::fabs(diff) <= 15.0 * std::max(tol_abs, tol_rel * std::fabs(left + right)))
        return left + right + diff / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, tol_abs * 0.5, tol_rel, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, tol_abs * 0.5, tol_rel, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol_abs, double tol_rel) {
    if (b <= a) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = simpson(f, a, m, b, fa, fm, fb);
    return adaptive_step(f, a, b, fa, fm, fb, whole, tol_abs, tol_rel, 52);
}

double volume_ratio(double t, int n) {
    return hyperbolic_ball_volume(4.5 * t, n) / hyperbolic_ball_volume(0.5 * t, n);
}

constexpr int kGridPoints = 10000;

}  // namespace

double unit_sphere_area(int m) {
    if (m < 0) throw std::invalid_argument("unit_sphere_area: m < 0");
    return 2.0 * std::pow(M_PI, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

double hyperbolic_ball_volume(double r, int n) {
    if (n < 2) throw std::invalid_argument("hyperbolic_ball_volume: n < 2");
    if (r < 0.0) throw std::invalid_argument("hyperbolic_ball_volume: r < 0");
    if (r == 0.0) return 0.0;
    // Integrate sinh^{n-1}(r u) over u in [0, 1]; the substitution keeps the
    // integrand well-scaled for tiny radii.
    auto f = [r, n](double u) { return std::pow(std::sinh(r * u), n - 1); };
    double integral = adaptive_simpson(f, 0.0, 1.0, 1e-12, 1e-12);
    return unit_sphere_area(n - 1) * r * integral;
}

int covering_constant(double r, int n, std::vector<std::string>* warnings) {
    if (r <= 0.0) throw std::invalid_argument("covering_constant: r <= 0");
    if (n < 2) throw std::invalid_argument("covering_constant: n < 2");
    // Geometric grid spanning six decades below r, plus the endpoint.  The
    // ratio is monotone nondecreasing in t, so the grid maximum sits at t = r;
    // monotonicity is certified along the grid as it is evaluated.
    double best = 0.0;
    double prev = 0.0;
    bool monotone = true;
    for (int i = 0; i <= kGridPoints; ++i) {
        double t = r * std::pow(1e-6, 1.0 - double(i) / kGridPoints);
        double q = volume_ratio(t, n);
        if (q < prev * (1.0 - 1e-9)) monotone = false;
        prev = q;
        best = std::max(best, q);
    }
    if (!monotone && warnings)
        warnings->push_back("covering_constant: volume ratio not monotone on grid");
    double frac = best - std::floor(best);
    if (warnings && (frac < 1e-6 || frac > 1.0 - 1e-6))
        warnings->push_back("covering_constant: ratio within 1e-6 of an integer at r=" +
                            std::to_string(r));
    return 1 + static_cast<int>(std::floor(best));
}

double c0_constant(int n) {
    if (n < 2) throw std::invalid_argument("c0_constant: n < 2");
    // sup over (0, 10) of v(r,n)/r^n; the ratio increases in r, so the grid
    // maximum is the endpoint value.
    double best = 0.0;
    for (int i = 0; i <= kGridPoints; ++i) {
        double t = 10.0 * std::pow(1e-6, 1.0 - double(i) / kGridPoints);
        best = std::max(best, hyperbolic_ball_volume(t, n) / std::pow(t, n));
    }
    return best;
}

double lambda_tilde(double lambda, int n) {
    if (!(lambda > 0.0 && lambda <= 0.5))
        throw std::invalid_argument("lambda_tilde: lambda outside (0, 1/2]");
    if (n < 2) throw std::invalid_argument("lambda_tilde: n < 2");
    double p = double(n - 1) / n;
    return 1.0 / (std::pow(lambda, p) + std::pow(1.0 - lambda, p) - 1.0);
}

int ConstantBundle::C_of(double r) const {
    if (r <= 0.0) throw std::invalid_argument("C_of: r <= 0");
    std::lock_guard<std::mutex> lock(*memo_mutex_);
    auto it = covering_memo_.find(r);
    if (it != covering_memo_.end()) return it->second;
    int value = covering_backend(r);
    // Enforce monotonicity against already-memoized radii.  Paper mode is
    // monotone by definition; empirical measurements are clamped.
    for (const auto& [rr, vv] : covering_memo_) {
        if (rr <= r) value = std::max(value, vv);
    }
    covering_memo_[r] = value;
    return value;
}

double ConstantBundle::C1_of(double r) const {
    return double(C_of(0.5 * r)) * C_of(r) + (4.0 * C0 + 1.0) * K * C_of(r);
}

namespace {

void finish_bundle(ConstantBundle& b) {
    b.lambda_tilde_50 = lambda_tilde(std::pow(50.0, -b.n), b.n);
    b.K1 = 2.0 * b.c * (1.0 + b.lambda_tilde_50);
    b.C2 = std::pow(50.0, b.n) * b.K + b.K1;
    b.C4 = 5.0 * b.C0 * (b.K + b.C_of(0.5)) * b.C_of(1.0);
    b.C3 = 4.0 * b.C2 + 13.0 * b.C0 * b.C_of(1.0) * b.C4;
}

}  // namespace

ConstantBundle assemble_constants(int n, double K, double c, ConstantsMode mode) {
    if (n < 2) throw std::invalid_argument("assemble_constants: n < 2");
    if (K <= 0.0 || c <= 0.0) throw std::invalid_argument("assemble_constants: K, c > 0 required");
    if (mode == ConstantsMode::empirical)
        throw std::invalid_argument("assemble_constants: empirical mode requires a surface");
    ConstantBundle b;
    b.n = n;
    b.K = K;
    b.c = c;
    b.mode = ConstantsMode::paper;
    b.C0 = c0_constant(n);
    auto warnings = std::make_shared<std::vector<std::string>>();
    b.covering_backend = [n, warnings](double r) { return covering_constant(r, n, warnings.get()); };
    finish_bundle(b);
    b.warnings = *warnings;
    return b;
}

double width_one_bound(double area_g, double area_g0, double K, int n) {
    if (area_g < 0.0 || area_g0 < 0.0) throw std::invalid_argument("width_one_bound: negative area");
    return K * std::pow(area_g, double(n - 1) / n) * (1.0 + std::pow(area_g0, 1.0 / n));
}

Schedule schedule_parameters(double area_g, long long k, const ConstantBundle& b) {
    if (k < 1) throw std::invalid_argument("schedule_parameters: k < 1");
    if (area_g <= 0.0) throw std::invalid_argument("schedule_parameters: area <= 0");
    Schedule s;
    double c1 = b.C_of(1.0);
    s.alpha_k = area_g / double(k);
    s.r_k = 0.25 * std::pow(area_g / (2.0 * double(k) * b.C0 * c1), 1.0 / b.n);
    s.k_bar = static_cast<long long>(std::floor(area_g / (2.0 * c1))) + 1;
    return s;
}

std::vector<Certificate> constants_certificates(const ConstantBundle& b) {
    std::vector<Certificate> out;
    double lt = lambda_tilde(std::pow(50.0, -b.n), b.n);
    out.push_back(make_eq_certificate("constants.K1", b.K1, 2.0 * b.c * (1.0 + lt)));
    out.push_back(make_eq_certificate("constants.C2", b.C2, std::pow(50.0, b.n) * b.K + b.K1));
    out.push_back(make_eq_certificate("constants.C4", b.C4,
                                      5.0 * b.C0 * (b.K + b.C_of(0.5)) * b.C_of(1.0)));
    out.push_back(make_eq_certificate("constants.C3", b.C3,
                                      4.0 * b.C2 + 13.0 * b.C0 * b.C_of(1.0) * b.C4));
    out.push_back(make_eq_certificate(
        "constants.C1_at_1", b.C1_of(1.0),
        double(b.C_of(0.5)) * b.C_of(1.0) + (4.0 * b.C0 + 1.0) * b.K * b.C_of(1.0)));
    out.push_back(make_le_certificate("constants.C_monotone", b.C_of(0.5), b.C_of(1.0),
                                      0.0, "C(1/2) <= C(1)"));
    if (b.mode == ConstantsMode::paper) {
        out.push_back(make_le_certificate("constants.C0_lower", hyperbolic_ball_volume(1.0, b.n),
                                          b.C0, 0.0, "v(1,n) <= C0"));
    }
    return out;
}

}  // namespace sweepout
