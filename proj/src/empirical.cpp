#include "sweepout/surface_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sweepout {

namespace {

// Mirror of the paper-mode bundle assembly with measured backends.
void finish_empirical(ConstantBundle& b) {
    b.lambda_tilde_50 = lambda_tilde(std::pow(50.0, -b.n), b.n);
    b.K1 = 2.0 * b.c * (1.0 + b.lambda_tilde_50);
    b.C2 = std::pow(50.0, b.n) * b.K + b.K1;
    b.C4 = 5.0 * b.C0 * (b.K + b.C_of(0.5)) * b.C_of(1.0);
    b.C3 = 4.0 * b.C2 + 13.0 * b.C0 * b.C_of(1.0) * b.C4;
}

}  // namespace

ConstantBundle assemble_constants_empirical(const Surface& surface, int n, double K, double c) {
    if (n < 2) throw std::invalid_argument("assemble_constants_empirical: n < 2");
    if (K <= 0.0 || c <= 0.0)
        throw std::invalid_argument("assemble_constants_empirical: K, c > 0 required");

    ConstantBundle b;
    b.n = n;
    b.K = K;
    b.c = c;
    b.mode = ConstantsMode::empirical;

    const double mean_edge = surface.mean_edge_length(Metric::g0);
    const double diam = surface.approx_diameter(Metric::g0);
    const double r_lo = std::max(8.0 * mean_edge, 1e-9 * diam);
    const double r_hi = std::max(0.45 * diam, r_lo * 1.001);

    auto centers = surface.farthest_point_sample(Domain::full(surface), 16, Metric::g0);

    // C0: maximal observed ball volume over r^n across radii and centers.
    double c0 = 0.0;
    const int radii = 12;
    for (int i = 0; i < radii; ++i) {
        double t = r_lo * std::pow(r_hi / r_lo, double(i) / (radii - 1));
        for (int p : centers) {
            double vol = surface.ball_area(p, t, Metric::g0, Metric::g0);
            c0 = std::max(c0, vol / std::pow(t, n));
        }
    }
    if (c0 <= 0.0) throw std::invalid_argument("assemble_constants_empirical: degenerate surface");
    b.C0 = c0;

    // Covering counts: measured greedy covers at s = r/2 and s = r, clamped
    // away from mesh scale; counts are made nondecreasing by the memo layer.
    const Surface* surf = &surface;
    double clamp_lo = 4.0 * mean_edge;
    b.covering_backend = [surf, clamp_lo](double r) {
        auto sample = surf->farthest_point_sample(Domain::full(*surf), 6, Metric::g0);
        int worst = 1;
        for (double s : {0.5 * r, r}) {
            double ss = std::max(s, clamp_lo);
            for (int p : sample) worst = std::max(worst, surf->greedy_cover_count(p, ss, Metric::g0));
        }
        return worst;
    };
    if (clamp_lo > 0.5)
        b.warnings.push_back("covering measurement clamped at mesh scale " +
                             std::to_string(clamp_lo));
    finish_empirical(b);
    return b;
}

ConstantBundle assemble_constants_for(const Surface* surface, int n, double K, double c,
                                      ConstantsMode mode) {
    if (mode == ConstantsMode::paper) return assemble_constants(n, K, c, ConstantsMode::paper);
    if (!surface)
        throw std::invalid_argument("empirical constants require a surface");
    return assemble_constants_empirical(*surface, n, K, c);
}

}  // namespace sweepout
