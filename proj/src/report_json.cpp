#include "sweepout/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace sweepout {

using nlohmann::ordered_json;

double sig12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

ordered_json certificate_to_json(const Certificate& c) {
    ordered_json j;
    j["name"] = c.name;
    j["lhs"] = sig12(c.lhs);
    j["rhs"] = sig12(c.rhs);
    j["pass"] = c.pass;
    j["slack"] = std::isfinite(c.slack) ? sig12(c.slack) : -1.0;
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

ordered_json bundle_to_json(const ConstantBundle& b) {
    ordered_json j;
    j["n"] = b.n;
    j["K"] = sig12(b.K);
    j["c"] = sig12(b.c);
    j["mode"] = b.mode == ConstantsMode::paper ? "paper" : "empirical";
    j["C0"] = sig12(b.C0);
    j["lambda_tilde_50"] = sig12(b.lambda_tilde_50);
    j["K1"] = sig12(b.K1);
    j["C2"] = sig12(b.C2);
    j["C3"] = sig12(b.C3);
    j["C4"] = sig12(b.C4);
    j["C_half"] = b.C_of(0.5);
    j["C_one"] = b.C_of(1.0);
    j["C1_one"] = sig12(b.C1_of(1.0));
    if (!b.warnings.empty()) j["warnings"] = b.warnings;
    return j;
}

namespace {

ordered_json tree_node_json(const std::map<std::string, double>& values, const std::string& label,
                            double value) {
    ordered_json node;
    node["value"] = sig12(value);
    if (values.count(label + "0")) {
        ordered_json children = ordered_json::array();
        children.push_back(tree_node_json(values, label + "0", values.at(label + "0")));
        children.push_back(tree_node_json(values, label + "1", values.at(label + "1")));
        node["children"] = std::move(children);
    }
    return node;
}

}  // namespace

ordered_json report_to_json(const BoundReport& report, const ConstantBundle& bundle,
                            const Surface& surface) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["k"] = report.k;
    j["mode"] = report.mode == ConstantsMode::paper ? "paper" : "empirical";
    j["constants"] = bundle_to_json(bundle);
    j["schedule"] = {{"r_k", sig12(report.schedule.r_k)},
                     {"alpha_k", sig12(report.schedule.alpha_k)},
                     {"k_bar", report.schedule.k_bar}};

    double dist_g0 = surface.graph_distortion(Metric::g0);
    j["surface"] = {{"vertices", surface.vertex_count()},
                    {"faces", surface.face_count()},
                    {"area_g", sig12(report.area_g)},
                    {"area_g0", sig12(report.area_g0)},
                    {"curvature_min", sig12(report.curvature_min)},
                    {"distortion_g0", std::isfinite(dist_g0) ? sig12(dist_g0) : -1.0}};

    {
        ordered_json split;
        split["m"] = report.split.m;
        split["boundary"] = sig12(report.split.boundary_total_g);
        ordered_json pieces = ordered_json::array();
        for (const auto& piece : report.split.thick_domains) {
            pieces.push_back({{"center", piece.center},
                              {"area_g", sig12(piece.area_g)},
                              {"area_g0", sig12(piece.area_g0)},
                              {"cut_length_g", sig12(piece.cut_length_g)}});
        }
        split["pieces"] = std::move(pieces);
        j["split"] = std::move(split);
    }
    {
        ordered_json thick = ordered_json::array();
        for (const auto& td : report.thick) {
            ordered_json t;
            t["k"] = td.k;
            t["c_emp"] = sig12(td.c_emp);
            t["boundary"] = sig12(td.boundary_total_g);
            t["normalization_area"] = sig12(td.normalization_area);
            t["claim_mid"] = sig12(td.claim_mid);
            t["claim_bound"] = sig12(td.claim_bound);
            t["leaves"] = static_cast<int>(td.leaves.size());
            t["tree"] = tree_node_json(td.tree.values, "", td.tree.root_value);
            thick.push_back(std::move(t));
        }
        j["thick"] = std::move(thick);
    }
    {
        ordered_json thin;
        if (report.thin) {
            thin["pieces"] = static_cast<int>(report.thin->pieces.size());
            thin["multiplicity"] = report.thin->multiplicity_max;
            thin["multiplicity_bound"] = report.thin->multiplicity_bound;
            thin["boundary"] = sig12(report.thin->boundary_total_g);
            thin["boundary_bound"] = sig12(report.thin->boundary_bound);
            thin["r"] = sig12(report.thin->r);
            thin["alpha"] = sig12(report.thin->alpha);
        } else {
            thin["pieces"] = 0;
        }
        j["thin"] = std::move(thin);
    }
    {
        ordered_json addends = ordered_json::array();
        for (double a : report.addends) addends.push_back(sig12(a));
        j["addends"] = std::move(addends);
    }
    j["total"] = sig12(report.total);
    j["theorem_value"] = sig12(report.theorem_value);
    j["pass"] = report.pass;
    {
        ordered_json certs = ordered_json::array();
        for (const auto& c : report.certificates) certs.push_back(certificate_to_json(c));
        j["certificates"] = std::move(certs);
    }
    return j;
}

void export_report(const BoundReport& report, const ConstantBundle& bundle,
                   const Surface& surface, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report: " + path);
    out << report_to_json(report, bundle, surface).dump(2) << "\n";
}

}  // namespace sweepout
