#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace sweepout {

enum class ConstantsMode { paper, empirical };

/// Area of the unit m-sphere S^m in R^{m+1}.
double unit_sphere_area(int m);

/// Volume v(r, n) of the geodesic ball of radius r in n-dimensional
/// hyperbolic space: omega_{n-1} * integral_0^r sinh^{n-1}(t) dt.
/// Adaptive Simpson quadrature, absolute tolerance 1e-12 (tightened by a
/// relative stopping rule so tiny radii stay accurate).
double hyperbolic_ball_volume(double r, int n);

/// Covering constant C(r) = max_{0 < t <= r} (1 + floor(v(9t/2,n)/v(t/2,n))).
/// The max is taken on a geometric grid of 10^4 points plus the endpoint; the
/// volume ratio is monotone in t, which the evaluation spot-checks.  A warning
/// string is appended when the ratio lands within 1e-6 of an integer.
int covering_constant(double r, int n, std::vector<std::string>* warnings = nullptr);

/// C0(n) = sup_{0 < r < 10} v(r,n)/r^n, by grid maximization.
double c0_constant(int n);

/// [lambda^{(n-1)/n} + (1-lambda)^{(n-1)/n} - 1]^{-1}, lambda in (0, 1/2].
double lambda_tilde(double lambda, int n);

// All explicit constants for one configuration.  Pure function of
// (n, K, c, mode, measurement inputs); the covering map is memoized and
// guarded for concurrent use.
struct ConstantBundle {
    int n = 2;
    double K = 1.0;
    double c = 1.0;
    ConstantsMode mode = ConstantsMode::paper;

    double C0 = 0.0;
    double lambda_tilde_50 = 0.0;  // lambda~ at lambda = 1/50^n
    double K1 = 0.0;               // 2 c (1 + lambda~)
    double C2 = 0.0;               // 50^n K + K1
    double C3 = 0.0;               // 4 C2 + 13 C0 C(1) C4
    double C4 = 0.0;               // 5 C0 (K + C(1/2)) C(1)

    std::vector<std::string> warnings;

    /// Covering constant at radius r (memoized; nondecreasing in r by
    /// construction in both modes).
    int C_of(double r) const;

    /// C1(r) = C(r/2) C(r) + (4 C0 + 1) K C(r).
    double C1_of(double r) const;

    std::function<int(double)> covering_backend;

  private:
    mutable std::map<double, int> covering_memo_;
    mutable std::shared_ptr<std::mutex> memo_mutex_ = std::make_shared<std::mutex>();
};

/// Paper-mode bundle: every constant from the closed-form definitions.
/// Empirical mode requires a surface; see assemble_constants_empirical in
/// surface_metrics.
ConstantBundle assemble_constants(int n, double K, double c,
                                  ConstantsMode mode = ConstantsMode::paper);

/// K * area_g^{(n-1)/n} * (1 + area_g0^{1/n}): the first-width bound shape.
double width_one_bound(double area_g, double area_g0, double K, int n = 2);

struct Schedule {
    double r_k = 0.0;      // comparison-metric radius
    double alpha_k = 0.0;  // base-metric area threshold, |M|_g / k
    long long k_bar = 1;
};

/// r_k = (1/4) (area / (2 k C0 C(1)))^{1/n}; alpha_k = area/k;
/// k_bar = floor(area / (2 C(1))) + 1.
Schedule schedule_parameters(double area_g, long long k, const ConstantBundle& bundle);

/// The internal-consistency certificates for a bundle (definitions of K1, C2,
/// C3, C4, C1(1), and monotonicity spot checks).  Used by reports and by the
/// constants CLI.
std::vector<struct Certificate> constants_certificates(const ConstantBundle& bundle);

}  // namespace sweepout
