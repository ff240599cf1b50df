#pragma once

#include <vector>

#include "sweepout/certificate.hpp"
#include "sweepout/constants.hpp"
#include "sweepout/length_area.hpp"
#include "sweepout/surface.hpp"

namespace sweepout {

struct ThinPiece {
    Domain V;
    int center = -1;
    double cut_length_g = 0.0;       // against the residual at creation
    double ball4_area_g = 0.0;       // |B_4r(p) ∩ residual|_g at creation
    double ball4_area_g0 = 0.0;      // |B_4r(p)|_{g0}, full ball
    double ball4_resid_area_g0 = 0.0;
    double ball_area_g = 0.0;        // greedy value |B_r(p) ∩ residual|_g
    bool forced = false;
};

struct ThinDecomposition {
    std::vector<ThinPiece> pieces;
    std::vector<SliceCertificate> per_piece;
    double boundary_total_g = 0.0;
    double boundary_bound = 0.0;            // (C1(r)/r) |N|_{g0}^{1/2} |N|_g^{1/2}
    std::vector<double> width_bounds;       // per-piece first-width upper bounds
    double alpha = 0.0;
    double r = 0.0;
    int multiplicity_max = 0;
    long long multiplicity_bound = 0;       // C(r/2) C(2r)
    std::vector<Certificate> certificates;
    bool pass = false;
};

/// Checks max over vertices p of |B_r(p) ∩ N|_g <= alpha; returns the
/// maximizing vertex as witness.
struct ThinHypothesisResult {
    bool holds = false;
    int worst_vertex = -1;
    double worst_area = 0.0;
};
ThinHypothesisResult verify_thin_hypothesis(const Surface& surface, const Domain& N, double r,
                                            double alpha);

/// Greedy ball decomposition of a conformally thin domain: repeatedly carve
/// the slice around the vertex whose residual r-ball has the largest base
/// area, until nothing remains.  Emits boundary, width, separation,
/// multiplicity and aggregation certificates.  `tol` is the slice tolerance
/// recorded into the boundary certificates.
ThinDecomposition decompose_thin(const Surface& surface, const Domain& N, double r, double alpha,
                                 const ConstantBundle& bundle, double tol = 0.10);

/// Max over vertices of N of the number of pieces whose 4r-ball contains the
/// vertex, with the theoretical bound C(r/2) C(2r).
std::pair<int, long long> multiplicity_profile(const ThinDecomposition& decomposition,
                                               const Surface& surface, const Domain& N,
                                               const ConstantBundle& bundle);

}  // namespace sweepout
