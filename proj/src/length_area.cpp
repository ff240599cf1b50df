#include "sweepout/length_area.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sweepout {

Certificate SliceCertificate::as_certificate(double rel_tol) const {
    Certificate c = make_le_certificate("slice.mixed_measure_bound", cut_length_g, bound, rel_tol);
    if (degenerate_empty_annulus) {
        c.pass = true;
        c.note = "empty annulus";
    } else {
        c.note = "distortion=" + std::to_string(distortion);
    }
    return c;
}

SliceResult slice(const Surface& surface, const Domain& N, const Domain& D, double r) {
    if (r <= 0.0) throw std::invalid_argument("slice: r <= 0");
    if (D.empty()) throw std::invalid_argument("slice: empty seed domain");
    if (!D.subset_of(N)) throw std::invalid_argument("slice: D not contained in N");

    const int nf = surface.face_count();
    DistanceField field =
        surface.distance_field(surface.domain_vertices(D), Metric::g0, r, &N);

    // Face level = max vertex distance; faces of N beyond radius r never join.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> level(nf, inf);
    std::vector<int> annulus_faces;
    for (int f = 0; f < nf; ++f) {
        if (!N.contains(f) || D.contains(f)) continue;
        const auto& fv = surface.face_vertices(f);
        double t = std::max({field.dist[fv[0]], field.dist[fv[1]], field.dist[fv[2]]});
        if (t <= r) {
            level[f] = t;
            annulus_faces.push_back(f);
        }
    }

    SliceCertificate cert;
    cert.distortion = surface.graph_distortion(Metric::g0);
    for (int f : annulus_faces) {
        cert.annulus_area_g += surface.face_area(f, Metric::g);
        cert.annulus_area_g0 += surface.face_area(f, Metric::g0);
    }
    cert.bound = cert.annulus_area_g > 0.0
                     ? (1.0 / r) * std::sqrt(cert.annulus_area_g0) * std::sqrt(cert.annulus_area_g)
                     : 0.0;

    if (annulus_faces.empty()) {
        cert.degenerate_empty_annulus = true;
        cert.cut_length_g = 0.0;
        // N intersect nbhd_r(D) is D itself here.
        return {D, cert};
    }

    // Sweep faces in level order, maintaining the cut length incrementally.
    // An edge contributes while its two N-side faces disagree about membership
    // (sealed edges of N never count).
    std::sort(annulus_faces.begin(), annulus_faces.end(), [&](int a, int b) {
        return level[a] != level[b] ? level[a] < level[b] : a < b;
    });

    std::vector<std::uint8_t> inside = D.mask();
    double cut = 0.0;
    auto toggle_face = [&](int f) {
        inside[f] = 1;
        for (int e : surface.face_edges(f)) {
            const auto& ef = surface.edge_faces(e);
            int other = ef[0] == f ? ef[1] : ef[0];
            if (other < 0 || !N.contains(other)) continue;  // sealed
            double len = surface.edge_length(e, Metric::g);
            cut += inside[other] ? -len : len;
        }
    };
    // Initialize with the cut of D relative to N.
    for (int e = 0; e < surface.edge_count(); ++e) {
        const auto& ef = surface.edge_faces(e);
        if (ef[0] < 0 || ef[1] < 0) continue;
        if (!N.contains(ef[0]) || !N.contains(ef[1])) continue;
        if (D.contains(ef[0]) != D.contains(ef[1])) cut += surface.edge_length(e, Metric::g);
    }

    // The t -> 0 candidate (V = D): any level below the first face level
    // produces it, so it is represented by half that level.
    double best_cut = cut;
    double best_t = 0.5 * level[annulus_faces.front()];
    std::size_t best_end = 0;
    for (std::size_t i = 0; i < annulus_faces.size();) {
        double t = level[annulus_faces[i]];
        std::size_t j = i;
        while (j < annulus_faces.size() && level[annulus_faces[j]] == t)
            toggle_face(annulus_faces[j++]);
        if (t < r && cut < best_cut) {
            best_cut = cut;
            best_t = t;
            best_end = j;
        }
        i = j;
    }

    std::vector<std::uint8_t> mask = D.mask();
    for (std::size_t i = 0; i < best_end; ++i) mask[annulus_faces[i]] = 1;
    Domain V(surface, std::move(mask));

    cert.chosen_t = best_t;
    cert.cut_length_g = best_cut;
    cert.ratio = cert.bound > 0.0 ? best_cut / cert.bound : 0.0;
    return {std::move(V), cert};
}

}  // namespace sweepout
