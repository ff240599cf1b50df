#pragma once

#include <queue>
#include <vector>

#include "sweepout/length_area.hpp"
#include "sweepout/surface.hpp"

namespace sweepout {

// Maintains, over a shrinking residual face set, the exact argmax over all
// vertices p of the base-metric area of the comparison-metric r-ball around p
// intersected with the residual.  Ball areas only decrease as faces are
// removed, so a lazy max-heap of last-known values stays an upper-bound
// cover of the true values and the cleaned top is an exhaustive argmax.
// Ties break to the lowest vertex id.
class GreedyBallTracker {
  public:
    GreedyBallTracker(const Surface& surface, double radius, const Domain& initial);

    const std::vector<std::uint8_t>& residual_mask() const { return residual_; }
    Domain residual_domain() const { return Domain(surface_, residual_); }
    int residual_face_count() const { return residual_count_; }
    bool residual_empty() const { return residual_count_ == 0; }
    double radius() const { return radius_; }

    /// Exact argmax (vertex, ball area) over the current residual.
    std::pair<int, double> argmax();

    /// Removes the faces of `piece` from the residual and invalidates the
    /// cached ball areas of every vertex whose r-ball can see the removal.
    void remove(const Domain& piece);

  private:
    double exact_area(int v) const;

    const Surface& surface_;
    double radius_;
    std::vector<std::uint8_t> residual_;
    int residual_count_ = 0;
    std::vector<double> cached_;
    std::vector<std::uint8_t> dirty_;
    // max-heap over (area, -vertex) so equal areas pop lowest id first
    std::priority_queue<std::pair<double, int>> heap_;
};

/// One greedy carving step shared by the conformally-thin decomposer and the
/// thin/thick splitter: seeds a slice with the 3r-ball around `center`
/// intersected with the residual, slicing inside the residual at radius r.
/// Falls back to removing the ball faces (or the lowest residual face) when
/// the slice cannot make progress; `forced` reports that.
struct CarveResult {
    Domain piece;
    SliceCertificate certificate;
    double cut_length_g = 0.0;  // cut of the piece relative to the residual
    bool forced = false;
};

CarveResult carve_ball_piece(const Surface& surface, const Domain& residual, int center,
                             double r);

}  // namespace sweepout
