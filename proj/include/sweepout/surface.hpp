#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace sweepout {

enum class Metric { g, g0 };

class Surface;

// A subset of faces of a fixed surface.  Value semantics; the mask always has
// one entry per face.
class Domain {
  public:
    Domain() = default;
    Domain(const Surface& s, std::vector<std::uint8_t> mask);

    static Domain full(const Surface& s);
    static Domain empty_on(const Surface& s);
    static Domain from_faces(const Surface& s, const std::vector<int>& faces);

    bool contains(int face) const { return mask_[static_cast<std::size_t>(face)] != 0; }
    void add(int face);
    void remove(int face);
    int face_count() const { return count_; }
    bool empty() const { return count_ == 0; }
    const Surface& surface() const { return *surface_; }
    const std::vector<std::uint8_t>& mask() const { return mask_; }
    std::vector<int> face_list() const;

    bool subset_of(const Domain& other) const;
    Domain intersect(const Domain& other) const;
    Domain unite(const Domain& other) const;
    Domain subtract(const Domain& other) const;
    bool operator==(const Domain& other) const = default;

  private:
    const Surface* surface_ = nullptr;
    std::vector<std::uint8_t> mask_;
    int count_ = 0;
};

struct DistanceField {
    std::vector<int> seed;
    Metric metric_tag = Metric::g0;
    std::vector<double> dist;  // one entry per vertex; +inf if unreachable
};

struct CurvatureReport {
    std::vector<double> curvature;  // angle defect / dual area, comparison metric
    double min = 0.0, max = 0.0;
    double total_defect = 0.0;  // sum of angle defects, = 2 pi Euler characteristic
    double margin_vs_minus_one = 0.0;
};

// Optional flat chart carried by generated meshes; used only as an exact
// distance oracle when measuring graph distortion.
struct FlatChart {
    bool valid = false;
    std::vector<std::array<double, 2>> uv;
    std::array<std::array<double, 2>, 2> periods{{{0, 0}, {0, 0}}};  // lattice vectors
    std::vector<int> part;  // chart component per vertex; -1 = outside any chart
};

// Immutable triangulated 2-manifold (closed or with boundary) carrying the
// base metric g as edge lengths and a per-vertex log conformal factor phi
// defining the comparison metric g0.  Derived g0 quantities use the midpoint
// rule: an edge scales by exp((phi_u + phi_v)/2), a face area by
// exp(2 * mean vertex phi).
class Surface {
  public:
    static Surface from_positions(std::vector<std::array<double, 3>> positions,
                                  std::vector<std::array<int, 3>> faces,
                                  std::vector<double> phi);
    static Surface from_edge_lengths(int vertex_count, std::vector<std::array<int, 3>> faces,
                                     const std::function<double(int, int)>& edge_length,
                                     std::vector<double> phi, FlatChart chart = {},
                                     std::vector<std::array<double, 3>> positions = {});

    int vertex_count() const { return vertex_count_; }
    int face_count() const { return static_cast<int>(faces_.size()); }
    int edge_count() const { return static_cast<int>(edge_verts_.size()); }
    bool closed() const { return boundary_edge_count_ == 0; }
    int euler_characteristic() const;

    const std::array<int, 3>& face_vertices(int f) const { return faces_[f]; }
    const std::array<int, 3>& face_edges(int f) const { return face_edges_[f]; }
    const std::array<int, 2>& edge_vertices(int e) const { return edge_verts_[e]; }
    const std::array<int, 2>& edge_faces(int e) const { return edge_faces_[e]; }  // -1 = none
    double edge_length(int e, Metric m) const {
        return m == Metric::g ? edge_len_g_[e] : edge_len_g0_[e];
    }
    double face_area(int f, Metric m) const {
        return m == Metric::g ? face_area_g_[f] : face_area_g0_[f];
    }
    double phi(int v) const { return phi_[v]; }
    const std::vector<std::array<double, 3>>& positions() const { return positions_; }
    const FlatChart& chart() const { return chart_; }

    double total_area(Metric m) const;
    double max_edge_length(Metric m) const;
    double mean_edge_length(Metric m) const;

    /// Sum of face areas of the domain in the tagged metric.
    double measure(const Domain& domain, Metric m) const;

    /// Total tagged-metric length of the cut edges of `domain`: edges with
    /// exactly one incident face in `domain` that are interior to
    /// `relative_to` (both incident faces inside it).
    double boundary_measure(const Domain& domain, Metric m, const Domain& relative_to) const;

    /// Multi-source shortest-path distance on the edge graph augmented with
    /// one-ring unfolding chords.  With `restrict_to` set, paths only use
    /// edges supported by that domain.  Deterministic.
    DistanceField distance_field(const std::vector<int>& seed, Metric m,
                                 double cap = std::numeric_limits<double>::infinity(),
                                 const Domain* restrict_to = nullptr) const;

    /// Faces whose three vertices all lie within distance r of p.
    Domain geodesic_ball(int p, double r, Metric m) const;

    /// domain plus the faces all of whose vertices lie within distance r of
    /// the domain's vertex set.
    Domain neighborhood(const Domain& domain, double r, Metric m) const;

    /// g-area (or tagged area) of the r-ball around p intersected with a face
    /// mask; the hot path of the greedy decomposers.
    double ball_area(int p, double r, Metric ball_metric, Metric area_metric,
                     const std::vector<std::uint8_t>* face_mask = nullptr) const;

    /// Vertices whose distance from p is <= r (tagged metric).
    std::vector<int> ball_vertices(int p, double r, Metric m) const;

    /// Vertices within distance r of the seed set (tagged metric).
    std::vector<int> vertices_within(const std::vector<int>& seeds, double r, Metric m) const;

    /// Vertices incident to at least one face of the domain.
    std::vector<int> domain_vertices(const Domain& domain) const;

    /// Face-adjacency connected components of a domain.
    std::vector<std::vector<int>> connected_components(const Domain& domain) const;

    /// Angle-defect curvature of the comparison metric (surfaces only).
    CurvatureReport curvature_report() const;

    /// Measured graph-distance distortion epsilon_h for the tagged metric:
    /// max over sampled vertex pairs of graph distance over an exact (chart)
    /// or chordal (embedding) lower bound, minus one.  Memoized.
    double graph_distortion(Metric m) const;

    double approx_diameter(Metric m) const;

    /// Deterministic farthest-point sample of `count` vertices of the domain,
    /// starting from its lowest vertex id.
    std::vector<int> farthest_point_sample(const Domain& domain, int count, Metric m) const;

    /// Greedy covering count: covers the 4s-ball around p by s-balls centered
    /// at vertices, always picking the lowest-id uncovered vertex.
    int greedy_cover_count(int p, double s, Metric m) const;

    // Adjacency access for the traversal helpers.
    int adjacency_begin(int v) const { return vadj_offset_[v]; }
    int adjacency_end(int v) const { return vadj_offset_[v + 1]; }
    int adjacency_vertex(int i) const { return vadj_vertex_[i]; }
    int adjacency_edge(int i) const { return vadj_edge_[i]; }
    int vertex_faces_begin(int v) const { return vface_offset_[v]; }
    int vertex_faces_end(int v) const { return vface_offset_[v + 1]; }
    int vertex_face(int i) const { return vface_[i]; }

    int chord_begin(int v) const { return chord_offset_[v]; }
    int chord_end(int v) const { return chord_offset_[v + 1]; }
    int chord_vertex(int i) const { return chord_vertex_[i]; }
    int chord_edge(int i) const { return chord_edge_[i]; }  // generating edge
    double chord_length(int i, Metric m) const {
        return m == Metric::g ? chord_len_g_[i] : chord_len_g0_[i];
    }

  private:
    void build(const std::function<double(int, int)>& edge_length);
    void build_chords();

    int vertex_count_ = 0;
    std::vector<std::array<int, 3>> faces_;
    std::vector<double> phi_;
    std::vector<std::array<double, 3>> positions_;
    FlatChart chart_;

    std::vector<std::array<int, 2>> edge_verts_;
    std::vector<std::array<int, 2>> edge_faces_;
    std::vector<double> edge_len_g_, edge_len_g0_;
    std::vector<std::array<int, 3>> face_edges_;
    std::vector<double> face_area_g_, face_area_g0_;
    int boundary_edge_count_ = 0;

    std::vector<int> vadj_offset_, vadj_vertex_, vadj_edge_;
    std::vector<int> vface_offset_, vface_;
    std::vector<int> chord_offset_, chord_vertex_, chord_edge_;
    std::vector<double> chord_len_g_, chord_len_g0_;

    mutable std::array<double, 2> distortion_{{-1.0, -1.0}};
    mutable std::array<double, 2> diameter_{{-1.0, -1.0}};
    mutable std::shared_ptr<std::mutex> cache_mutex_ = std::make_shared<std::mutex>();
};

}  // namespace sweepout
