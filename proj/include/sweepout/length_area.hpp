#pragma once

#include "sweepout/certificate.hpp"
#include "sweepout/surface.hpp"

namespace sweepout {

// Record of one slicing run: the annulus it swept, the level it chose, the cut
// it produced, and the mixed-measure bound it is compared against.
struct SliceCertificate {
    double annulus_area_g = 0.0;
    double annulus_area_g0 = 0.0;
    double chosen_t = 0.0;
    double cut_length_g = 0.0;
    double bound = 0.0;   // (1/r) * annulus_g0^{1/2} * annulus_g^{1/2}
    double ratio = 0.0;   // cut / bound when bound > 0
    double distortion = 0.0;  // the mesh's measured graph distortion
    bool degenerate_empty_annulus = false;

    Certificate as_certificate(double rel_tol) const;
};

struct SliceResult {
    Domain V;
    SliceCertificate certificate;
};

/// Mixed-measure slicer.  Computes the comparison-metric distance from D
/// restricted to N; for every distinct vertex-distance level t in (0, r)
/// forms V_t = D plus the faces of N with max vertex distance <= t, and
/// returns the V_t with the smallest base-metric cut length relative to N
/// (ties: smallest t).  If the annulus N intersect nbhd_r(D) minus D has zero
/// area, returns that set with cut length reported as zero over the region.
SliceResult slice(const Surface& surface, const Domain& N, const Domain& D, double r);

}  // namespace sweepout
