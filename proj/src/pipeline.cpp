#include "sweepout/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "sweepout/greedy.hpp"

namespace sweepout {

SplitResult thin_thick_split(const Surface& surface, long long k, const ConstantBundle& bundle,
                             const Schedule& schedule) {
    if (k < 1) throw std::invalid_argument("thin_thick_split: k < 1");
    const double r = schedule.r_k;
    const double alpha = schedule.alpha_k;
    const double resolution = 2.0 * surface.max_edge_length(Metric::g0);
    if (r < resolution)
        throw ResolutionError("schedule radius " + std::to_string(r) +
                              " below mesh resolution " + std::to_string(resolution) +
                              "; use empirical mode or smaller k");

    SplitResult out;
    GreedyBallTracker tracker(surface, r, Domain::full(surface));
    double worst_cover_ratio = 0.0;
    int cr = bundle.C_of(r);

    while (true) {
        auto [p, area] = tracker.argmax();
        if (p < 0 || area < alpha) break;
        Domain residual = tracker.residual_domain();
        CarveResult carved = carve_ball_piece(surface, residual, p, r);

        SplitPiece piece;
        piece.center = p;
        piece.ball_area_g = area;
        piece.ball4_area_g =
            surface.ball_area(p, 4.0 * r, Metric::g0, Metric::g, &residual.mask());
        piece.cut_length_g = carved.cut_length_g;
        piece.area_g = surface.measure(carved.piece, Metric::g);
        piece.area_g0 = surface.measure(carved.piece, Metric::g0);
        piece.domain = std::move(carved.piece);

        if (area > 0.0)
            worst_cover_ratio =
                std::max(worst_cover_ratio, piece.ball4_area_g / (double(cr) * area));
        out.boundary_total_g += piece.cut_length_g;
        out.slice_certificates.push_back(carved.certificate);
        tracker.remove(piece.domain);
        out.thick_domains.push_back(std::move(piece));
    }
    out.m = static_cast<int>(out.thick_domains.size());
    out.thin_remainder = tracker.residual_domain();

    const double area_M = surface.total_area(Metric::g);
    out.certificates.push_back(
        make_le_certificate("split.m_bound", double(out.m), double(k - 1)));
    out.certificates.push_back(make_le_certificate(
        "split.boundary", out.boundary_total_g,
        4.0 * bundle.C0 * bundle.C_of(1.0) * std::pow(area_M, double(bundle.n - 1) / bundle.n) *
            std::pow(double(k), 1.0 / bundle.n),
        0.0, "4 C0 C(1) |M|^{(n-1)/n} k^{1/n}"));
    out.certificates.push_back(make_le_certificate("split.covering", worst_cover_ratio, 1.0, 0.0,
                                                   "max |B_4r| / (C(r_k) |B_r|) over steps"));
    double min_piece_area = std::numeric_limits<double>::infinity();
    double max_piece_g0 = 0.0;
    for (const auto& piece : out.thick_domains) {
        min_piece_area = std::min(min_piece_area, piece.area_g);
        max_piece_g0 = std::max(max_piece_g0, piece.area_g0);
    }
    if (out.m > 0) {
        out.certificates.push_back(
            make_le_certificate("split.piece_area", alpha, min_piece_area));
        out.certificates.push_back(make_lt_certificate("split.g0_small", max_piece_g0, 1.0));
    }
    auto residual_hyp = verify_thin_hypothesis(surface, out.thin_remainder, r, alpha);
    if (out.thin_remainder.empty()) residual_hyp.holds = true;
    out.certificates.push_back(make_lt_certificate("split.residual_thin",
                                                   residual_hyp.worst_area, alpha));
    out.pass = all_pass(out.certificates);
    return out;
}

BoundReport assemble_upper_bound(const Surface& surface, long long k,
                                 const ConstantBundle& bundle) {
    BoundReport report;
    report.k = k;
    report.mode = bundle.mode;
    report.area_g = surface.total_area(Metric::g);
    report.area_g0 = surface.total_area(Metric::g0);
    report.curvature_min = surface.curvature_report().min;
    report.schedule = schedule_parameters(report.area_g, k, bundle);

    report.split = thin_thick_split(surface, k, bundle, report.schedule);
    for (const auto& c : report.split.certificates) report.certificates.push_back(c);

    const int n = bundle.n;
    const double p = double(n - 1) / n;
    double max_width = 0.0;

    double kj_slack_worst = 0.0;
    for (const auto& piece : report.split.thick_domains) {
        double k_j = double(k) * piece.area_g / report.area_g;
        if (k_j >= 1.0) {
            long long budget = static_cast<long long>(std::floor(k_j)) + 1;
            ThickDecomposition td = decompose_thick(surface, piece.domain, budget, bundle);
            report.addends[0] += td.boundary_total_g;
            for (const auto& leaf : td.leaves) {
                max_width = std::max(max_width, leaf.width_bound);
                report.pieces.emplace_back(leaf.domain, leaf.width_bound);
            }
            for (const auto& c : td.certificates) report.certificates.push_back(c);
            kj_slack_worst = std::max(
                kj_slack_worst, std::pow(double(budget), 1.0 / n) /
                                    (2.0 * std::pow(k_j, 1.0 / n)));
            report.thick.push_back(std::move(td));
        } else {
            // Budget below one: the piece stays a single leaf with the direct
            // first-width bound.
            double w = width_one_bound(piece.area_g, piece.area_g0, bundle.K, n);
            max_width = std::max(max_width, w);
            report.pieces.emplace_back(piece.domain, w);
        }
    }
    if (!report.split.thick_domains.empty())
        report.certificates.push_back(make_le_certificate(
            "pipeline.kj_slack", kj_slack_worst, 1.0, 0.0,
            "(1 + floor(k_j))^{1/n} <= 2 k_j^{1/n} whenever k_j >= 1"));
    report.addends[1] = report.split.boundary_total_g;

    if (!report.split.thin_remainder.empty()) {
        ThinDecomposition thin =
            decompose_thin(surface, report.split.thin_remainder, report.schedule.r_k,
                           report.schedule.alpha_k, bundle);
        report.addends[2] = thin.boundary_total_g;
        for (std::size_t j = 0; j < thin.pieces.size(); ++j) {
            max_width = std::max(max_width, thin.width_bounds[j]);
            report.pieces.emplace_back(thin.pieces[j].V, thin.width_bounds[j]);
        }
        for (const auto& c : thin.certificates) report.certificates.push_back(c);
        report.thin = std::move(thin);
    }

    report.addends[3] = double(k) * max_width;
    report.total = report.addends[0] + report.addends[1] + report.addends[2] + report.addends[3];
    report.theorem_value =
        bundle.C3 * std::pow(report.area_g, p) *
        std::max(std::pow(double(k), 1.0 / n), std::pow(report.area_g0, 1.0 / n));

    double addend_sum = 0.0;
    for (double a : report.addends) addend_sum += a;
    report.certificates.push_back(
        make_eq_certificate("pipeline.addends_total", addend_sum, report.total, 1e-12));
    {
        Certificate c = make_le_certificate("pipeline.upper_bound_vs_theorem", report.total,
                                            report.theorem_value);
        if (bundle.mode == ConstantsMode::empirical && !c.pass)
            c.note = "informational outside paper mode";
        report.certificates.push_back(c);
    }

    // Every face of the surface must be claimed by exactly one piece.
    {
        std::vector<int> owners(surface.face_count(), 0);
        for (const auto& [domain, width] : report.pieces)
            for (int f : domain.face_list()) ++owners[f];
        int worst = 0, covered = 0;
        for (int f = 0; f < surface.face_count(); ++f) {
            worst = std::max(worst, owners[f]);
            covered += owners[f] >= 1;
        }
        report.certificates.push_back(make_eq_certificate(
            "pipeline.partition", double(covered), double(surface.face_count()), 0.0));
        report.certificates.push_back(
            make_le_certificate("pipeline.no_overlap", double(worst), 1.0));
    }

    report.pass = all_pass(report.certificates);
    return report;
}

SpectrumCurve spectrum_curve(const Surface& surface, const std::vector<long long>& k_list,
                             const ConstantBundle& bundle) {
    if (k_list.empty()) throw std::invalid_argument("spectrum_curve: empty k list");
    if (!std::is_sorted(k_list.begin(), k_list.end()))
        throw std::invalid_argument("spectrum_curve: k list must be ascending");

    SpectrumCurve curve;
    double area = surface.total_area(Metric::g);
    curve.k_bar = schedule_parameters(area, k_list.front(), bundle).k_bar;

    std::optional<BoundReport> k_bar_report;
    auto bound_at_k_bar = [&]() -> const BoundReport& {
        if (!k_bar_report) k_bar_report = assemble_upper_bound(surface, curve.k_bar, bundle);
        return *k_bar_report;
    };

    for (long long k : k_list) {
        SpectrumRow row;
        row.k = k;
        if (k < curve.k_bar) {
            // Widths are nondecreasing in k, so the k_bar value bounds these.
            const BoundReport& rep = bound_at_k_bar();
            row.total = rep.total;
            row.theorem_value = rep.theorem_value;
            row.reused_k_bar = true;
        } else {
            BoundReport rep = assemble_upper_bound(surface, k, bundle);
            row.total = rep.total;
            row.theorem_value = rep.theorem_value;
        }
        curve.rows.push_back(row);
    }

    // Least-squares slope over the rows that actually ran.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (const auto& row : curve.rows) {
        if (row.reused_k_bar || row.total <= 0.0) continue;
        double x = std::log(double(row.k)), y = std::log(row.total);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count >= 2) {
        double denom = count * sxx - sx * sx;
        curve.slope = denom != 0.0 ? (count * sxy - sx * sy) / denom : 0.0;
    }
    return curve;
}

}  // namespace sweepout
