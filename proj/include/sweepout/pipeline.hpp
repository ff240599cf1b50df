#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "sweepout/certificate.hpp"
#include "sweepout/constants.hpp"
#include "sweepout/length_area.hpp"
#include "sweepout/surface.hpp"
#include "sweepout/thick.hpp"
#include "sweepout/thin.hpp"

namespace sweepout {

/// Raised when the schedule radius falls below what the mesh resolves
/// (r_k < 2 * max edge length in the comparison metric).
struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SplitPiece {
    Domain domain;
    int center = -1;
    double area_g = 0.0;
    double area_g0 = 0.0;
    double cut_length_g = 0.0;
    double ball_area_g = 0.0;   // |B_r(p) \ earlier pieces|_g at selection
    double ball4_area_g = 0.0;  // |B_4r(p) \ earlier pieces|_g
};

struct SplitResult {
    std::vector<SplitPiece> thick_domains;
    Domain thin_remainder;
    int m = 0;
    double boundary_total_g = 0.0;
    std::vector<SliceCertificate> slice_certificates;
    std::vector<Certificate> certificates;
    bool pass = false;
};

/// Greedy extraction of conformally thick spots: while some vertex has an
/// r_k-ball of base area >= alpha_k in the residual, carve the slice around
/// the argmax vertex.  The remainder satisfies the thin hypothesis at
/// (r_k, alpha_k) by construction.
SplitResult thin_thick_split(const Surface& surface, long long k, const ConstantBundle& bundle,
                             const Schedule& schedule);

struct BoundReport {
    long long k = 0;
    ConstantsMode mode = ConstantsMode::paper;
    Schedule schedule;
    SplitResult split;
    std::vector<ThickDecomposition> thick;
    std::optional<ThinDecomposition> thin;
    std::vector<std::pair<Domain, double>> pieces;  // every leaf with its width bound
    std::array<double, 4> addends{{0, 0, 0, 0}};    // thick, split, thin, k * max width
    double total = 0.0;
    double theorem_value = 0.0;  // C3 |M|_g^{(n-1)/n} max{k^{1/n}, |M|_{g0}^{1/n}}
    double area_g = 0.0, area_g0 = 0.0;
    double curvature_min = 0.0;  // advisory comparison-metric curvature summary
    std::vector<Certificate> certificates;
    bool pass = false;
};

/// Full certified run: split, thick subdivision of each extracted domain with
/// budget floor(k_j) + 1, thin subdivision of the remainder, and assembly of
/// the upper bound against the closed-form comparison value.
BoundReport assemble_upper_bound(const Surface& surface, long long k,
                                 const ConstantBundle& bundle);

struct SpectrumRow {
    long long k = 0;
    double total = 0.0;
    double theorem_value = 0.0;
    bool reused_k_bar = false;  // k < k_bar rows reuse the k_bar run
};

struct SpectrumCurve {
    std::vector<SpectrumRow> rows;
    double slope = 0.0;  // least-squares slope of log(total) vs log(k), k >= k_bar
    long long k_bar = 1;
};

SpectrumCurve spectrum_curve(const Surface& surface, const std::vector<long long>& k_list,
                             const ConstantBundle& bundle);

}  // namespace sweepout
