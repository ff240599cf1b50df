#include "sweepout/mesh_io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sweepout {

namespace {

[[noreturn]] void input_error(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

std::vector<double> load_phi_file(const std::string& path, int expected_count) {
    std::ifstream in(path);
    if (!in) input_error("cannot open conformal factor file: " + path);
    std::vector<double> phi;
    phi.reserve(expected_count);
    double x;
    while (in >> x) phi.push_back(x);
    if (static_cast<int>(phi.size()) != expected_count)
        input_error("conformal factor count " + std::to_string(phi.size()) +
                    " does not match vertex count " + std::to_string(expected_count));
    return phi;
}

Surface load_surface_off(const std::string& mesh_path, const std::string& phi_path,
                         double phi_const) {
    std::ifstream in(mesh_path);
    if (!in) input_error("cannot open mesh file: " + mesh_path);

    auto next_token_line = [&in]() {
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            if (line.find_first_not_of(" \t\r\n") != std::string::npos) return line;
        }
        return std::string{};
    };

    std::string header = next_token_line();
    if (header.substr(0, 3) != "OFF") input_error("not an OFF file: " + mesh_path);

    std::istringstream counts(header.size() > 3 ? header.substr(3) : next_token_line());
    long nv = 0, nf = 0, ne = 0;
    counts >> nv >> nf >> ne;
    if (nv <= 0 || nf <= 0) input_error("bad OFF counts");

    std::vector<std::array<double, 3>> positions(nv);
    for (long i = 0; i < nv; ++i) {
        std::istringstream ls(next_token_line());
        if (!(ls >> positions[i][0] >> positions[i][1] >> positions[i][2]))
            input_error("bad OFF vertex line");
    }
    std::vector<std::array<int, 3>> faces(nf);
    for (long i = 0; i < nf; ++i) {
        std::istringstream ls(next_token_line());
        int k;
        if (!(ls >> k)) input_error("bad OFF face line");
        if (k != 3) input_error("only triangle faces are supported");
        if (!(ls >> faces[i][0] >> faces[i][1] >> faces[i][2])) input_error("bad OFF face line");
    }

    std::vector<double> phi(nv, phi_const);
    if (!phi_path.empty()) phi = load_phi_file(phi_path, static_cast<int>(nv));
    return Surface::from_positions(std::move(positions), std::move(faces), std::move(phi));
}

Surface generate_torus(int n, double phi_const) {
    if (n < 2) input_error("torus generator: n >= 2 required");
    const double h = 1.0 / n;
    const int corners = n * n;
    auto corner = [n](int i, int j) { return ((i % n + n) % n) * n + ((j % n + n) % n); };
    auto center = [n, corners](int i, int j) { return corners + i * n + j; };

    std::vector<std::array<int, 3>> faces;
    faces.reserve(static_cast<std::size_t>(4) * n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            int c00 = corner(i, j), c10 = corner(i + 1, j);
            int c01 = corner(i, j + 1), c11 = corner(i + 1, j + 1);
            int ctr = center(i, j);
            faces.push_back({c00, c10, ctr});
            faces.push_back({c10, c11, ctr});
            faces.push_back({c11, c01, ctr});
            faces.push_back({c01, c00, ctr});
        }
    }

    FlatChart chart;
    chart.valid = true;
    chart.uv.resize(2 * corners);
    chart.part.assign(2 * corners, 0);
    chart.periods = {{{1.0, 0.0}, {0.0, 1.0}}};
    std::vector<std::array<double, 3>> positions(2 * corners);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            chart.uv[corner(i, j)] = {i * h, j * h};
            chart.uv[center(i, j)] = {(i + 0.5) * h, (j + 0.5) * h};
            positions[corner(i, j)] = {i * h, j * h, 0.0};
            positions[center(i, j)] = {(i + 0.5) * h, (j + 0.5) * h, 0.0};
        }

    auto length = [&chart, h](int u, int v) {
        double du = chart.uv[u][0] - chart.uv[v][0];
        double dv = chart.uv[u][1] - chart.uv[v][1];
        auto wrap = [](double x) {
            x = std::fabs(x);
            return std::min(x, std::fabs(x - 1.0));
        };
        double dx = wrap(du), dy = wrap(dv);
        (void)h;
        return std::hypot(dx, dy);
    };
    return Surface::from_edge_lengths(2 * corners, std::move(faces), length,
                                      std::vector<double>(2 * corners, phi_const),
                                      std::move(chart), std::move(positions));
}

Surface generate_tri_torus(int n, double phi_const) {
    if (n < 2) input_error("tri torus generator: n >= 2 required");
    // Rhombic fundamental domain spanned by L1 = (a, 0), L2 = (a/2, a sqrt3/2)
    // with a chosen so the total area n^2 a^2 sqrt3/2 = 1.
    const double a = std::sqrt(2.0 / (std::sqrt(3.0) * n * n));
    auto vid = [n](int i, int j) { return ((i % n + n) % n) * n + ((j % n + n) % n); };
    std::vector<std::array<int, 3>> faces;
    faces.reserve(static_cast<std::size_t>(2) * n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
            faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
        }
    FlatChart chart;
    chart.valid = true;
    chart.uv.resize(n * n);
    chart.part.assign(n * n, 0);
    chart.periods = {{{n * a, 0.0}, {n * a * 0.5, n * a * std::sqrt(3.0) / 2.0}}};
    std::vector<std::array<double, 3>> positions(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double x = (i + 0.5 * j) * a, y = j * a * std::sqrt(3.0) / 2.0;
            chart.uv[vid(i, j)] = {x, y};
            positions[vid(i, j)] = {x, y, 0.0};
        }
    auto length = [a](int, int) { return a; };
    return Surface::from_edge_lengths(n * n, std::move(faces), length,
                                      std::vector<double>(static_cast<std::size_t>(n) * n,
                                                          phi_const),
                                      std::move(chart), std::move(positions));
}

Surface generate_sphere(int subdivisions, double phi_const) {
    if (subdivisions < 0 || subdivisions > 8) input_error("sphere generator: 0 <= n <= 8");
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<std::array<double, 3>> pos = {
        {-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
        {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
    std::vector<std::array<int, 3>> faces = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
        {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
        {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
    auto normalize = [](std::array<double, 3>& p) {
        double norm = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        p = {p[0] / norm, p[1] / norm, p[2] / norm};
    };
    for (auto& p : pos) normalize(p);

    for (int s = 0; s < subdivisions; ++s) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int u, int v) {
            auto key = std::minmax(u, v);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            std::array<double, 3> p = {(pos[u][0] + pos[v][0]) / 2, (pos[u][1] + pos[v][1]) / 2,
                                       (pos[u][2] + pos[v][2]) / 2};
            normalize(p);
            pos.push_back(p);
            int id = static_cast<int>(pos.size()) - 1;
            midpoint[key] = id;
            return id;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(faces.size() * 4);
        for (const auto& f : faces) {
            int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }
    return Surface::from_positions(std::move(pos), std::move(faces),
                                   std::vector<double>(pos.size(), phi_const));
}

Surface generate_genus2(int n, double phi_const) {
    if (n < 8) input_error("genus2 generator: n >= 8 required");
    Surface torus = generate_torus(n);  // connectivity template
    const int part_verts = torus.vertex_count();
    const int part_faces = torus.face_count();

    // Two copies of the torus with the face at cell (0,0) removed, joined by a
    // six-triangle band between the hole boundaries.
    std::vector<std::array<int, 3>> faces;
    faces.reserve(static_cast<std::size_t>(2) * part_faces + 6);
    const int removed_face = 0;  // triangle (corner(0,0), corner(1,0), center(0,0))
    std::array<int, 3> hole = torus.face_vertices(removed_face);
    for (int copy = 0; copy < 2; ++copy) {
        int offset = copy * part_verts;
        for (int f = 0; f < part_faces; ++f) {
            if (f == removed_face) continue;
            auto fv = torus.face_vertices(f);
            faces.push_back({fv[0] + offset, fv[1] + offset, fv[2] + offset});
        }
    }
    std::array<int, 3> ha = {hole[0], hole[1], hole[2]};
    std::array<int, 3> hb = {hole[0] + part_verts, hole[1] + part_verts, hole[2] + part_verts};
    for (int k = 0; k < 3; ++k) {
        faces.push_back({ha[k], ha[(k + 1) % 3], hb[k]});
        faces.push_back({ha[(k + 1) % 3], hb[(k + 1) % 3], hb[k]});
    }

    const double h = 1.0 / n;
    const int total_verts = 2 * part_verts;

    FlatChart chart;
    chart.valid = true;
    chart.uv.resize(total_verts);
    chart.part.assign(total_verts, -1);
    chart.periods = {{{1.0, 0.0}, {0.0, 1.0}}};
    std::vector<std::array<double, 3>> positions(total_verts);
    const auto& tchart = torus.chart();
    for (int copy = 0; copy < 2; ++copy) {
        int offset = copy * part_verts;
        for (int v = 0; v < part_verts; ++v) {
            chart.uv[v + offset] = tchart.uv[v];
            positions[v + offset] = {tchart.uv[v][0] + copy * 1.5, tchart.uv[v][1], 0.0};
        }
    }
    // The chart is only an oracle away from the tube; blank out a collar of
    // cells around the removed face (distances there may shortcut through the
    // tube).
    const int collar = std::min(n / 2 - 1, 40);
    for (int copy = 0; copy < 2; ++copy) {
        int offset = copy * part_verts;
        for (int v = 0; v < part_verts; ++v) {
            double du = std::fabs(tchart.uv[v][0]);
            double dv = std::fabs(tchart.uv[v][1]);
            du = std::min(du, 1.0 - du);
            dv = std::min(dv, 1.0 - dv);
            if (std::max(du, dv) > collar * h) chart.part[v + offset] = copy;
        }
    }

    auto torus_len = [&tchart](int u, int v) {
        double du = tchart.uv[u][0] - tchart.uv[v][0];
        double dv = tchart.uv[u][1] - tchart.uv[v][1];
        auto wrap = [](double x) {
            x = std::fabs(x);
            return std::min(x, std::fabs(x - 1.0));
        };
        return std::hypot(wrap(du), wrap(dv));
    };
    auto length = [&, h](int u, int v) {
        int pu = u / part_verts, pv = v / part_verts;
        if (pu == pv) return torus_len(u % part_verts, v % part_verts);
        return h;  // tube cross edges
    };
    return Surface::from_edge_lengths(total_verts, std::move(faces), length,
                                      std::vector<double>(total_verts, phi_const),
                                      std::move(chart), std::move(positions));
}

Surface generate_named(const std::string& spec, double phi_const) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) input_error("bad generator spec: " + spec);
    std::string kind = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    std::string variant;
    auto colon2 = rest.find(':');
    if (colon2 != std::string::npos) {
        variant = rest.substr(colon2 + 1);
        rest = rest.substr(0, colon2);
    }
    int n = 0;
    try {
        n = std::stoi(rest);
    } catch (const std::exception&) {
        input_error("bad generator size: " + spec);
    }
    if (kind == "torus") {
        if (variant == "tri") return generate_tri_torus(n, phi_const);
        if (!variant.empty()) input_error("unknown torus variant: " + variant);
        return generate_torus(n, phi_const);
    }
    if (kind == "sphere") return generate_sphere(n, phi_const);
    if (kind == "genus2") return generate_genus2(n, phi_const);
    input_error("unknown generator: " + kind);
}

void export_colored_mesh(const Surface& surface, const std::vector<int>& face_region,
                         const std::string& path) {
    if (static_cast<int>(face_region.size()) != surface.face_count())
        throw std::invalid_argument("export_colored_mesh: region count mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write mesh file: " + path);

    const auto& pos = surface.positions();
    out << "ply\nformat ascii 1.0\n";
    out << "element vertex " << surface.vertex_count() << "\n";
    out << "property double x\nproperty double y\nproperty double z\n";
    out << "element face " << surface.face_count() << "\n";
    out << "property list uchar int vertex_indices\n";
    out << "property int region\n";
    out << "end_header\n";
    char buf[96];
    for (int v = 0; v < surface.vertex_count(); ++v) {
        std::array<double, 3> p = pos.empty() ? std::array<double, 3>{0, 0, 0} : pos[v];
        std::snprintf(buf, sizeof buf, "%.12g %.12g %.12g\n", p[0], p[1], p[2]);
        out << buf;
    }
    for (int f = 0; f < surface.face_count(); ++f) {
        const auto& fv = surface.face_vertices(f);
        out << "3 " << fv[0] << ' ' << fv[1] << ' ' << fv[2] << ' ' << face_region[f] << '\n';
    }
}

}  // namespace sweepout
