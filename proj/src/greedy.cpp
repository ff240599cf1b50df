#include "sweepout/greedy.hpp"

#include <algorithm>

#include "sweepout/parallel.hpp"

namespace sweepout {

GreedyBallTracker::GreedyBallTracker(const Surface& surface, double radius,
                                     const Domain& initial)
    : surface_(surface),
      radius_(radius),
      residual_(initial.mask()),
      residual_count_(initial.face_count()),
      cached_(surface.vertex_count(), 0.0),
      dirty_(surface.vertex_count(), 0) {
    const int nv = surface.vertex_count();
    parallel_for_ranges(nv, [&](int begin, int end) {
        for (int v = begin; v < end; ++v)
            cached_[v] = surface_.ball_area(v, radius_, Metric::g0, Metric::g, &residual_);
    });
    for (int v = 0; v < nv; ++v) heap_.emplace(cached_[v], -v);
}

double GreedyBallTracker::exact_area(int v) const {
    return surface_.ball_area(v, radius_, Metric::g0, Metric::g, &residual_);
}

std::pair<int, double> GreedyBallTracker::argmax() {
    while (!heap_.empty()) {
        auto [area, neg_v] = heap_.top();
        int v = -neg_v;
        if (area != cached_[v]) {  // superseded entry
            heap_.pop();
            continue;
        }
        if (dirty_[v]) {
            heap_.pop();
            double fresh = exact_area(v);
            dirty_[v] = 0;
            cached_[v] = fresh;
            heap_.emplace(fresh, -v);
            continue;
        }
        return {v, area};
    }
    return {-1, 0.0};
}

void GreedyBallTracker::remove(const Domain& piece) {
    std::vector<int> removed_vertices;
    for (int f : piece.face_list()) {
        if (!residual_[f]) continue;
        residual_[f] = 0;
        --residual_count_;
        for (int v : surface_.face_vertices(f)) removed_vertices.push_back(v);
    }
    if (removed_vertices.empty()) return;
    std::sort(removed_vertices.begin(), removed_vertices.end());
    removed_vertices.erase(std::unique(removed_vertices.begin(), removed_vertices.end()),
                           removed_vertices.end());
    // Every vertex whose r-ball can contain a removed face is within r of one
    // of its vertices.
    for (int v : surface_.vertices_within(removed_vertices, radius_, Metric::g0)) dirty_[v] = 1;
}

CarveResult carve_ball_piece(const Surface& surface, const Domain& residual, int center,
                             double r) {
    CarveResult out;
    Domain ball3 = surface.geodesic_ball(center, 3.0 * r, Metric::g0);
    Domain seed = ball3.intersect(residual);
    if (seed.empty()) {
        // Degenerate mesh-scale radius: force progress by taking the ball
        // faces, or the lowest residual face when even those are missing.
        Domain forced = surface.geodesic_ball(center, 4.0 * r, Metric::g0).intersect(residual);
        if (forced.empty()) {
            for (int f = 0; f < surface.face_count(); ++f)
                if (residual.contains(f)) {
                    forced.add(f);
                    break;
                }
        }
        out.piece = std::move(forced);
        out.forced = true;
        out.cut_length_g = surface.boundary_measure(out.piece, Metric::g, residual);
        return out;
    }
    SliceResult sliced = slice(surface, residual, seed, r);
    out.piece = std::move(sliced.V);
    out.certificate = sliced.certificate;
    out.cut_length_g = surface.boundary_measure(out.piece, Metric::g, residual);
    return out;
}

}  // namespace sweepout
