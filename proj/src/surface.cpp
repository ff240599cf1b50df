#include "sweepout/surface.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace sweepout {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double heron_area(double a, double b, double c) {
    // Kahan's numerically stable form; sides sorted a >= b >= c.
    if (a < b) std::swap(a, b);
    if (b < c) std::swap(b, c);
    if (a < b) std::swap(a, b);
    double s = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    return 0.25 * std::sqrt(std::max(0.0, s));
}

std::uint64_t edge_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

struct DijkstraScratch {
    std::vector<double> dist;
    std::vector<int> stamp;
    std::vector<int> face_stamp;
    std::vector<int> touched;
    std::vector<std::pair<double, int>> heap;
    int round = 0;
    int face_round = 0;

    void ensure(int vertex_count, int face_count) {
        if (static_cast<int>(dist.size()) < vertex_count) {
            dist.assign(vertex_count, kInf);
            stamp.assign(vertex_count, 0);
            round = 0;
        }
        if (static_cast<int>(face_stamp.size()) < face_count) {
            face_stamp.assign(face_count, 0);
            face_round = 0;
        }
    }

    bool settled(int v) const { return stamp[v] == round; }
};

thread_local DijkstraScratch tl_scratch;

}  // namespace

// ── Domain ──────────────────────────────────────────────────────────

Domain::Domain(const Surface& s, std::vector<std::uint8_t> mask)
    : surface_(&s), mask_(std::move(mask)) {
    if (static_cast<int>(mask_.size()) != s.face_count())
        throw std::invalid_argument("Domain: mask size mismatch");
    count_ = 0;
    for (auto b : mask_) count_ += b ? 1 : 0;
}

Domain Domain::full(const Surface& s) {
    return Domain(s, std::vector<std::uint8_t>(s.face_count(), 1));
}

Domain Domain::empty_on(const Surface& s) {
    return Domain(s, std::vector<std::uint8_t>(s.face_count(), 0));
}

Domain Domain::from_faces(const Surface& s, const std::vector<int>& faces) {
    std::vector<std::uint8_t> mask(s.face_count(), 0);
    for (int f : faces) {
        if (f < 0 || f >= s.face_count()) throw std::invalid_argument("Domain: bad face id");
        mask[f] = 1;
    }
    return Domain(s, std::move(mask));
}

void Domain::add(int face) {
    if (!mask_[face]) {
        mask_[face] = 1;
        ++count_;
    }
}

void Domain::remove(int face) {
    if (mask_[face]) {
        mask_[face] = 0;
        --count_;
    }
}

std::vector<int> Domain::face_list() const {
    std::vector<int> out;
    out.reserve(count_);
    for (int f = 0; f < static_cast<int>(mask_.size()); ++f)
        if (mask_[f]) out.push_back(f);
    return out;
}

bool Domain::subset_of(const Domain& other) const {
    for (std::size_t f = 0; f < mask_.size(); ++f)
        if (mask_[f] && !other.mask_[f]) return false;
    return true;
}

Domain Domain::intersect(const Domain& other) const {
    std::vector<std::uint8_t> mask(mask_.size());
    for (std::size_t f = 0; f < mask_.size(); ++f) mask[f] = mask_[f] & other.mask_[f];
    return Domain(*surface_, std::move(mask));
}

Domain Domain::unite(const Domain& other) const {
    std::vector<std::uint8_t> mask(mask_.size());
    for (std::size_t f = 0; f < mask_.size(); ++f) mask[f] = mask_[f] | other.mask_[f];
    return Domain(*surface_, std::move(mask));
}

Domain Domain::subtract(const Domain& other) const {
    std::vector<std::uint8_t> mask(mask_.size());
    for (std::size_t f = 0; f < mask_.size(); ++f)
        mask[f] = static_cast<std::uint8_t>(mask_[f] && !other.mask_[f]);
    return Domain(*surface_, std::move(mask));
}

// ── Surface construction ────────────────────────────────────────────

Surface Surface::from_positions(std::vector<std::array<double, 3>> positions,
                                std::vector<std::array<int, 3>> faces,
                                std::vector<double> phi) {
    Surface s;
    s.vertex_count_ = static_cast<int>(positions.size());
    s.positions_ = std::move(positions);
    s.faces_ = std::move(faces);
    s.phi_ = std::move(phi);
    auto length = [&s](int u, int v) {
        const auto& p = s.positions_[u];
        const auto& q = s.positions_[v];
        double dx = p[0] - q[0], dy = p[1] - q[1], dz = p[2] - q[2];
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    };
    s.build(length);
    return s;
}

Surface Surface::from_edge_lengths(int vertex_count, std::vector<std::array<int, 3>> faces,
                                   const std::function<double(int, int)>& edge_length,
                                   std::vector<double> phi, FlatChart chart,
                                   std::vector<std::array<double, 3>> positions) {
    Surface s;
    s.vertex_count_ = vertex_count;
    s.faces_ = std::move(faces);
    s.phi_ = std::move(phi);
    s.chart_ = std::move(chart);
    s.positions_ = std::move(positions);
    s.build(edge_length);
    return s;
}

void Surface::build(const std::function<double(int, int)>& edge_length) {
    const int nf = static_cast<int>(faces_.size());
    if (vertex_count_ <= 0) throw std::invalid_argument("surface: no vertices");
    if (phi_.empty()) phi_.assign(vertex_count_, 0.0);
    if (static_cast<int>(phi_.size()) != vertex_count_)
        throw std::invalid_argument("surface: phi count does not match vertex count");

    std::unordered_map<std::uint64_t, int> edge_ids;
    edge_ids.reserve(static_cast<std::size_t>(nf) * 2);
    face_edges_.assign(nf, {-1, -1, -1});

    for (int f = 0; f < nf; ++f) {
        const auto& fv = faces_[f];
        for (int k = 0; k < 3; ++k) {
            int u = fv[k], v = fv[(k + 1) % 3];
            if (u < 0 || u >= vertex_count_ || v < 0 || v >= vertex_count_)
                throw std::invalid_argument("surface: face references missing vertex");
            if (u == v) throw std::invalid_argument("surface: degenerate face (repeated vertex)");
            auto [it, inserted] = edge_ids.try_emplace(edge_key(u, v),
                                                       static_cast<int>(edge_verts_.size()));
            if (inserted) {
                edge_verts_.push_back({std::min(u, v), std::max(u, v)});
                edge_faces_.push_back({f, -1});
            } else {
                auto& ef = edge_faces_[it->second];
                if (ef[1] != -1)
                    throw std::invalid_argument("surface: non-manifold edge (in three faces)");
                ef[1] = f;
            }
            face_edges_[f][k] = it->second;
        }
    }

    const int ne = static_cast<int>(edge_verts_.size());
    edge_len_g_.resize(ne);
    edge_len_g0_.resize(ne);
    boundary_edge_count_ = 0;
    for (int e = 0; e < ne; ++e) {
        int u = edge_verts_[e][0], v = edge_verts_[e][1];
        double len = edge_length(u, v);
        if (!(len > 0.0)) throw std::invalid_argument("surface: nonpositive edge length");
        edge_len_g_[e] = len;
        edge_len_g0_[e] = len * std::exp(0.5 * (phi_[u] + phi_[v]));
        if (edge_faces_[e][1] == -1) ++boundary_edge_count_;
    }

    face_area_g_.resize(nf);
    face_area_g0_.resize(nf);
    for (int f = 0; f < nf; ++f) {
        double a = edge_len_g_[face_edges_[f][0]];
        double b = edge_len_g_[face_edges_[f][1]];
        double c = edge_len_g_[face_edges_[f][2]];
        double m = std::max({a, b, c});
        if (m > (a + b + c) - m + 1e-12 * m)
            throw std::invalid_argument("surface: triangle inequality violated");
        double area = heron_area(a, b, c);
        if (area < 1e-12) throw std::invalid_argument("surface: degenerate triangle (area < 1e-12)");
        face_area_g_[f] = area;
        const auto& fv = faces_[f];
        face_area_g0_[f] =
            area * std::exp(2.0 / 3.0 * (phi_[fv[0]] + phi_[fv[1]] + phi_[fv[2]]));
    }

    // Vertex adjacency and vertex->face incidence (CSR).
    vadj_offset_.assign(vertex_count_ + 1, 0);
    for (const auto& ev : edge_verts_) {
        ++vadj_offset_[ev[0] + 1];
        ++vadj_offset_[ev[1] + 1];
    }
    for (int v = 0; v < vertex_count_; ++v) vadj_offset_[v + 1] += vadj_offset_[v];
    vadj_vertex_.resize(2 * ne);
    vadj_edge_.resize(2 * ne);
    {
        std::vector<int> cursor(vadj_offset_.begin(), vadj_offset_.end() - 1);
        for (int e = 0; e < ne; ++e) {
            int u = edge_verts_[e][0], v = edge_verts_[e][1];
            vadj_vertex_[cursor[u]] = v;
            vadj_edge_[cursor[u]++] = e;
            vadj_vertex_[cursor[v]] = u;
            vadj_edge_[cursor[v]++] = e;
        }
    }
    vface_offset_.assign(vertex_count_ + 1, 0);
    for (const auto& fv : faces_)
        for (int v : fv) ++vface_offset_[v + 1];
    for (int v = 0; v < vertex_count_; ++v) vface_offset_[v + 1] += vface_offset_[v];
    vface_.resize(static_cast<std::size_t>(nf) * 3);
    {
        std::vector<int> cursor(vface_offset_.begin(), vface_offset_.end() - 1);
        for (int f = 0; f < nf; ++f)
            for (int v : faces_[f]) vface_[cursor[v]++] = f;
    }

    build_chords();
}

void Surface::build_chords() {
    // One-ring unfolding: for each interior edge, lay the two incident
    // triangles flat and connect the opposite vertices when the straight
    // segment crosses the shared edge.  Such a chord is the length of a
    // genuine surface path, so graph distances stay upper bounds of geodesic
    // distances.  The comparison-metric length uses the same midpoint rule as
    // edges.
    struct Chord {
        int a, b, edge;
        double len_g, len_g0;
    };
    std::vector<Chord> chords;
    chords.reserve(edge_verts_.size());

    auto opposite_vertex = [&](int face, int u, int v) {
        for (int w : faces_[face])
            if (w != u && w != v) return w;
        return -1;
    };
    auto glen = [&](int u, int v) {
        for (int i = vadj_offset_[u]; i < vadj_offset_[u + 1]; ++i)
            if (vadj_vertex_[i] == v) return edge_len_g_[vadj_edge_[i]];
        return -1.0;
    };

    for (int e = 0; e < static_cast<int>(edge_verts_.size()); ++e) {
        if (edge_faces_[e][1] == -1) continue;
        int u = edge_verts_[e][0], v = edge_verts_[e][1];
        int a = opposite_vertex(edge_faces_[e][0], u, v);
        int b = opposite_vertex(edge_faces_[e][1], u, v);
        double L = edge_len_g_[e];
        double ua = glen(u, a), va = glen(v, a);
        double ub = glen(u, b), vb = glen(v, b);
        if (ua < 0 || va < 0 || ub < 0 || vb < 0) continue;
        double xa = (ua * ua + L * L - va * va) / (2.0 * L);
        double ya = std::sqrt(std::max(0.0, ua * ua - xa * xa));
        double xb = (ub * ub + L * L - vb * vb) / (2.0 * L);
        double yb = std::sqrt(std::max(0.0, ub * ub - xb * xb));
        if (ya < 1e-12 * L || yb < 1e-12 * L) continue;
        double cross_x = (xa * yb + xb * ya) / (ya + yb);
        if (!(cross_x > 1e-9 * L && cross_x < L * (1.0 - 1e-9))) continue;
        double dx = xa - xb, dy = ya + yb;
        double len = std::sqrt(dx * dx + dy * dy);
        chords.push_back({a, b, e, len, len * std::exp(0.5 * (phi_[a] + phi_[b]))});
    }

    chord_offset_.assign(vertex_count_ + 1, 0);
    for (const auto& c : chords) {
        ++chord_offset_[c.a + 1];
        ++chord_offset_[c.b + 1];
    }
    for (int v = 0; v < vertex_count_; ++v) chord_offset_[v + 1] += chord_offset_[v];
    chord_vertex_.resize(chords.size() * 2);
    chord_edge_.resize(chords.size() * 2);
    chord_len_g_.resize(chords.size() * 2);
    chord_len_g0_.resize(chords.size() * 2);
    std::vector<int> cursor(chord_offset_.begin(), chord_offset_.end() - 1);
    for (const auto& c : chords) {
        chord_vertex_[cursor[c.a]] = c.b;
        chord_edge_[cursor[c.a]] = c.edge;
        chord_len_g_[cursor[c.a]] = c.len_g;
        chord_len_g0_[cursor[c.a]++] = c.len_g0;
        chord_vertex_[cursor[c.b]] = c.a;
        chord_edge_[cursor[c.b]] = c.edge;
        chord_len_g_[cursor[c.b]] = c.len_g;
        chord_len_g0_[cursor[c.b]++] = c.len_g0;
    }
}

int Surface::euler_characteristic() const {
    return vertex_count_ - edge_count() + face_count();
}

double Surface::total_area(Metric m) const {
    const auto& areas = m == Metric::g ? face_area_g_ : face_area_g0_;
    double total = 0.0;
    for (double a : areas) total += a;
    return total;
}

double Surface::max_edge_length(Metric m) const {
    const auto& len = m == Metric::g ? edge_len_g_ : edge_len_g0_;
    return len.empty() ? 0.0 : *std::max_element(len.begin(), len.end());
}

double Surface::mean_edge_length(Metric m) const {
    const auto& len = m == Metric::g ? edge_len_g_ : edge_len_g0_;
    if (len.empty()) return 0.0;
    double total = 0.0;
    for (double l : len) total += l;
    return total / static_cast<double>(len.size());
}

double Surface::measure(const Domain& domain, Metric m) const {
    const auto& areas = m == Metric::g ? face_area_g_ : face_area_g0_;
    const auto& mask = domain.mask();
    double total = 0.0;
    for (std::size_t f = 0; f < mask.size(); ++f)
        if (mask[f]) total += areas[f];
    return total;
}

double Surface::boundary_measure(const Domain& domain, Metric m,
                                 const Domain& relative_to) const {
    if (!domain.subset_of(relative_to))
        throw std::invalid_argument("boundary_measure: domain not contained in relative_to");
    const auto& len = m == Metric::g ? edge_len_g_ : edge_len_g0_;
    const auto& dm = domain.mask();
    const auto& rm = relative_to.mask();
    double total = 0.0;
    for (int e = 0; e < edge_count(); ++e) {
        int f0 = edge_faces_[e][0], f1 = edge_faces_[e][1];
        int in_d = (f0 >= 0 && dm[f0]) + (f1 >= 0 && dm[f1]);
        if (in_d != 1) continue;
        int in_r = (f0 >= 0 && rm[f0]) + (f1 >= 0 && rm[f1]);
        if (in_r == 2) total += len[e];
    }
    return total;
}

// ── Shortest-path machinery ─────────────────────────────────────────

namespace {

// Truncated multi-source Dijkstra.  Settles every vertex with distance <= cap
// and calls settle(v, d) once per vertex, in nondecreasing (d, v) order.
// Afterwards stamp[v] == round exactly for the settled vertices, with dist[v]
// their final distance.
template <class SettleFn>
void run_dijkstra(const Surface& s, const std::vector<int>& seeds, Metric m, double cap,
                  const Domain* restrict_to, DijkstraScratch& sc, SettleFn&& settle) {
    sc.ensure(s.vertex_count(), s.face_count());
    ++sc.round;
    const int round = sc.round;
    const auto* rmask = restrict_to ? restrict_to->mask().data() : nullptr;

    auto& heap = sc.heap;
    heap.clear();
    auto heap_push = [&](double d, int v) {
        heap.emplace_back(d, v);
        std::push_heap(heap.begin(), heap.end(), std::greater<>{});
    };
    for (int v : seeds) {
        if (v < 0 || v >= s.vertex_count())
            throw std::invalid_argument("distance field: bad seed vertex");
        if (sc.stamp[v] != round) {
            sc.stamp[v] = round;
            sc.dist[v] = 0.0;
            heap_push(0.0, v);
        }
    }
    auto edge_usable = [&](int e) {
        if (!rmask) return true;
        const auto& ef = s.edge_faces(e);
        return (ef[0] >= 0 && rmask[ef[0]]) || (ef[1] >= 0 && rmask[ef[1]]);
    };
    auto chord_usable = [&](int e) {
        if (!rmask) return true;
        const auto& ef = s.edge_faces(e);
        return ef[0] >= 0 && ef[1] >= 0 && rmask[ef[0]] && rmask[ef[1]];
    };
    auto relax = [&](int w, double nd) {
        if (nd > cap) return;
        if (sc.stamp[w] != round || nd < sc.dist[w]) {
            sc.stamp[w] = round;
            sc.dist[w] = nd;
            heap_push(nd, w);
        }
    };
    while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), std::greater<>{});
        auto [d, v] = heap.back();
        heap.pop_back();
        if (d > sc.dist[v]) continue;  // stale entry
        settle(v, d);
        for (int i = s.adjacency_begin(v); i < s.adjacency_end(v); ++i) {
            int e = s.adjacency_edge(i);
            if (!edge_usable(e)) continue;
            relax(s.adjacency_vertex(i), d + s.edge_length(e, m));
        }
        for (int i = s.chord_begin(v); i < s.chord_end(v); ++i) {
            if (!chord_usable(s.chord_edge(i))) continue;
            relax(s.chord_vertex(i), d + s.chord_length(i, m));
        }
    }
}

}  // namespace

DistanceField Surface::distance_field(const std::vector<int>& seed, Metric m, double cap,
                                      const Domain* restrict_to) const {
    if (seed.empty()) throw std::invalid_argument("distance_field: empty seed");
    DistanceField field;
    field.seed = seed;
    field.metric_tag = m;
    field.dist.assign(vertex_count_, kInf);
    run_dijkstra(*this, seed, m, cap, restrict_to, tl_scratch,
                 [&](int v, double d) { field.dist[v] = d; });
    return field;
}

Domain Surface::geodesic_ball(int p, double r, Metric m) const {
    if (p < 0 || p >= vertex_count_) throw std::invalid_argument("geodesic_ball: bad vertex");
    if (r < 0.0) throw std::invalid_argument("geodesic_ball: r < 0");
    auto& sc = tl_scratch;
    std::vector<int> settled;
    run_dijkstra(*this, {p}, m, r, nullptr, sc, [&](int v, double) { settled.push_back(v); });
    std::vector<std::uint8_t> mask(face_count(), 0);
    ++sc.face_round;
    for (int v : settled) {
        for (int i = vertex_faces_begin(v); i < vertex_faces_end(v); ++i) {
            int f = vertex_face(i);
            if (sc.face_stamp[f] == sc.face_round) continue;
            sc.face_stamp[f] = sc.face_round;
            bool inside = true;
            for (int w : faces_[f])
                if (!sc.settled(w)) {
                    inside = false;
                    break;
                }
            if (inside) mask[f] = 1;
        }
    }
    return Domain(*this, std::move(mask));
}

Domain Surface::neighborhood(const Domain& domain, double r, Metric m) const {
    if (domain.empty()) throw std::invalid_argument("neighborhood: empty domain");
    auto& sc = tl_scratch;
    std::vector<int> settled;
    run_dijkstra(*this, domain_vertices(domain), m, r, nullptr, sc,
                 [&](int v, double) { settled.push_back(v); });
    std::vector<std::uint8_t> mask = domain.mask();
    ++sc.face_round;
    for (int v : settled) {
        for (int i = vertex_faces_begin(v); i < vertex_faces_end(v); ++i) {
            int f = vertex_face(i);
            if (sc.face_stamp[f] == sc.face_round) continue;
            sc.face_stamp[f] = sc.face_round;
            bool inside = true;
            for (int w : faces_[f])
                if (!sc.settled(w)) {
                    inside = false;
                    break;
                }
            if (inside) mask[f] = 1;
        }
    }
    return Domain(*this, std::move(mask));
}

double Surface::ball_area(int p, double r, Metric ball_metric, Metric area_metric,
                          const std::vector<std::uint8_t>* face_mask) const {
    auto& sc = tl_scratch;
    std::vector<int>& settled = sc.touched;
    settled.clear();
    run_dijkstra(*this, {p}, ball_metric, r, nullptr, sc,
                 [&](int v, double) { settled.push_back(v); });
    const auto& areas = area_metric == Metric::g ? face_area_g_ : face_area_g0_;
    double total = 0.0;
    ++sc.face_round;
    for (int v : settled) {
        for (int i = vertex_faces_begin(v); i < vertex_faces_end(v); ++i) {
            int f = vertex_face(i);
            if (sc.face_stamp[f] == sc.face_round) continue;
            sc.face_stamp[f] = sc.face_round;
            if (face_mask && !(*face_mask)[f]) continue;
            bool inside = true;
            for (int w : faces_[f])
                if (!sc.settled(w)) {
                    inside = false;
                    break;
                }
            if (inside) total += areas[f];
        }
    }
    return total;
}

std::vector<int> Surface::ball_vertices(int p, double r, Metric m) const {
    std::vector<int> out;
    run_dijkstra(*this, {p}, m, r, nullptr, tl_scratch, [&](int v, double) { out.push_back(v); });
    return out;
}

std::vector<int> Surface::vertices_within(const std::vector<int>& seeds, double r,
                                          Metric m) const {
    std::vector<int> out;
    run_dijkstra(*this, seeds, m, r, nullptr, tl_scratch,
                 [&](int v, double) { out.push_back(v); });
    return out;
}

std::vector<int> Surface::domain_vertices(const Domain& domain) const {
    std::vector<std::uint8_t> seen(vertex_count_, 0);
    std::vector<int> out;
    const auto& mask = domain.mask();
    for (int f = 0; f < face_count(); ++f) {
        if (!mask[f]) continue;
        for (int v : faces_[f])
            if (!seen[v]) {
                seen[v] = 1;
                out.push_back(v);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> Surface::connected_components(const Domain& domain) const {
    const auto& mask = domain.mask();
    std::vector<std::uint8_t> seen(face_count(), 0);
    std::vector<std::vector<int>> comps;
    std::vector<int> stack;
    for (int f0 = 0; f0 < face_count(); ++f0) {
        if (!mask[f0] || seen[f0]) continue;
        comps.emplace_back();
        stack.push_back(f0);
        seen[f0] = 1;
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            comps.back().push_back(f);
            for (int e : face_edges_[f]) {
                for (int other : edge_faces_[e]) {
                    if (other >= 0 && mask[other] && !seen[other]) {
                        seen[other] = 1;
                        stack.push_back(other);
                    }
                }
            }
        }
        std::sort(comps.back().begin(), comps.back().end());
    }
    return comps;
}

CurvatureReport Surface::curvature_report() const {
    CurvatureReport rep;
    std::vector<double> angle_sum(vertex_count_, 0.0);
    std::vector<double> dual_area(vertex_count_, 0.0);
    for (int f = 0; f < face_count(); ++f) {
        std::array<double, 3> len;
        for (int k = 0; k < 3; ++k) len[k] = edge_len_g0_[face_edges_[f][k]];
        // face_edges_[f][k] joins vertex k and k+1, so the angle at vertex k
        // is opposite edge k+1.
        for (int k = 0; k < 3; ++k) {
            double a = len[(k + 1) % 3];           // opposite
            double b = len[k], c = len[(k + 2) % 3];  // adjacent
            double cosv = (b * b + c * c - a * a) / (2.0 * b * c);
            angle_sum[faces_[f][k]] += std::acos(std::clamp(cosv, -1.0, 1.0));
            dual_area[faces_[f][k]] += face_area_g0_[f] / 3.0;
        }
    }
    std::vector<std::uint8_t> on_boundary(vertex_count_, 0);
    for (int e = 0; e < edge_count(); ++e) {
        if (edge_faces_[e][1] == -1) {
            on_boundary[edge_verts_[e][0]] = 1;
            on_boundary[edge_verts_[e][1]] = 1;
        }
    }
    rep.curvature.resize(vertex_count_);
    rep.min = kInf;
    rep.max = -kInf;
    for (int v = 0; v < vertex_count_; ++v) {
        double defect = (on_boundary[v] ? M_PI : 2.0 * M_PI) - angle_sum[v];
        rep.total_defect += defect;
        rep.curvature[v] = dual_area[v] > 0.0 ? defect / dual_area[v] : 0.0;
        rep.min = std::min(rep.min, rep.curvature[v]);
        rep.max = std::max(rep.max, rep.curvature[v]);
    }
    rep.margin_vs_minus_one = rep.min - (-1.0);
    return rep;
}

double Surface::approx_diameter(Metric m) const {
    int idx = m == Metric::g ? 0 : 1;
    {
        std::lock_guard<std::mutex> lock(*cache_mutex_);
        if (diameter_[idx] >= 0.0) return diameter_[idx];
    }
    auto farthest = [&](int src) {
        std::pair<double, int> best{0.0, src};
        run_dijkstra(*this, {src}, m, kInf, nullptr, tl_scratch, [&](int v, double d) {
            if (d > best.first) best = {d, v};
        });
        return best;
    };
    auto [d1, a] = farthest(0);
    auto [d2, b] = farthest(a);
    (void)b;
    double result = std::max(d1, d2);
    std::lock_guard<std::mutex> lock(*cache_mutex_);
    diameter_[idx] = result;
    return result;
}

double Surface::graph_distortion(Metric m) const {
    int idx = m == Metric::g ? 0 : 1;
    {
        std::lock_guard<std::mutex> lock(*cache_mutex_);
        if (distortion_[idx] >= 0.0) return distortion_[idx];
    }
    // Constant phi only rescales the comparison metric, so its distortion is
    // the base metric's.
    if (m == Metric::g0) {
        auto [mn, mx] = std::minmax_element(phi_.begin(), phi_.end());
        if (*mx - *mn < 1e-12) {
            double d = graph_distortion(Metric::g);
            std::lock_guard<std::mutex> lock(*cache_mutex_);
            distortion_[1] = d;
            return d;
        }
    }
    double h = mean_edge_length(m);
    double lo = 5.0 * h, hi = 30.0 * h;
    bool has_chart = chart_.valid && m == Metric::g;
    bool has_positions = !positions_.empty() && !chart_.valid;

    auto lower_bound_dist = [&](int u, int v) -> double {
        if (has_chart) {
            if (chart_.part[u] != chart_.part[v] || chart_.part[u] < 0) return -1.0;
            double du = chart_.uv[u][0] - chart_.uv[v][0];
            double dv = chart_.uv[u][1] - chart_.uv[v][1];
            double best = kInf;
            for (int i = -1; i <= 1; ++i)
                for (int j = -1; j <= 1; ++j) {
                    double x = du + i * chart_.periods[0][0] + j * chart_.periods[1][0];
                    double y = dv + i * chart_.periods[0][1] + j * chart_.periods[1][1];
                    best = std::min(best, std::hypot(x, y));
                }
            return best;
        }
        if (has_positions) {
            const auto& p = positions_[u];
            const auto& q = positions_[v];
            return std::sqrt((p[0] - q[0]) * (p[0] - q[0]) + (p[1] - q[1]) * (p[1] - q[1]) +
                             (p[2] - q[2]) * (p[2] - q[2]));
        }
        return -1.0;
    };

    double worst = 0.0;
    bool measured = false;
    if (has_chart || has_positions) {
        auto sources = farthest_point_sample(Domain::full(*this), 16, m);
        for (int src : sources) {
            run_dijkstra(*this, {src}, m, hi, nullptr, tl_scratch, [&](int v, double d) {
                if (d < lo || v == src) return;
                double lb = lower_bound_dist(src, v);
                if (lb <= 0.0) return;
                measured = true;
                worst = std::max(worst, d / lb - 1.0);
            });
        }
    }
    double result = measured ? std::max(0.0, worst) : std::numeric_limits<double>::quiet_NaN();
    std::lock_guard<std::mutex> lock(*cache_mutex_);
    distortion_[idx] = result;
    return result;
}

std::vector<int> Surface::farthest_point_sample(const Domain& domain, int count, Metric m) const {
    auto verts = domain_vertices(domain);
    if (verts.empty() || count <= 0) return {};
    std::vector<int> sample{verts.front()};
    while (static_cast<int>(sample.size()) < count) {
        std::pair<double, int> best{-1.0, -1};
        run_dijkstra(*this, sample, m, kInf, &domain, tl_scratch, [&](int v, double d) {
            if (d > best.first) best = {d, v};
        });
        if (best.second < 0 || best.first <= 0.0) break;
        sample.push_back(best.second);
    }
    return sample;
}

int Surface::greedy_cover_count(int p, double s, Metric m) const {
    auto ball = ball_vertices(p, 4.0 * s, m);
    std::sort(ball.begin(), ball.end());
    std::vector<std::uint8_t> covered(vertex_count_, 0);
    int count = 0;
    for (int v : ball) {
        if (covered[v]) continue;
        ++count;
        for (int w : ball_vertices(v, s, m)) covered[w] = 1;
    }
    return count;
}

}  // namespace sweepout
