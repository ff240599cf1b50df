#pragma once

#include <string>
#include <vector>

#include "sweepout/surface.hpp"

namespace sweepout {

/// OFF mesh (counts header, vertex coordinates, triangle indices) plus an
/// optional conformal-factor file (one real per line, line i = phi at vertex
/// i).  Empty phi path means the constant fallback (default 0).
Surface load_surface_off(const std::string& mesh_path, const std::string& phi_path = {},
                         double phi_const = 0.0);

std::vector<double> load_phi_file(const std::string& path, int expected_count);

/// Unit-area flat torus on an n x n grid with every cell split four ways
/// through its center ("union jack"); V = 2n^2, F = 4n^2.
Surface generate_torus(int n, double phi_const = 0.0);

/// Unit-area flat torus on a triangular (equilateral) lattice; V = n^2,
/// F = 2n^2.
Surface generate_tri_torus(int n, double phi_const = 0.0);

/// Unit icosphere with `subdivisions` refinement levels; F = 20 * 4^s.
Surface generate_sphere(int subdivisions, double phi_const = 0.0);

/// Genus-2 surface: two unit-area flat tori joined by a triangular tube
/// (one face removed from each, six-triangle band between the holes).
Surface generate_genus2(int n, double phi_const = 0.0);

/// Parses "torus:<n>", "torus:<n>:tri", "sphere:<n>", "genus2:<n>".
Surface generate_named(const std::string& spec, double phi_const = 0.0);

/// ASCII PLY with one region-id property per face; region ids must be dense
/// from 0 and cover every face.
void export_colored_mesh(const Surface& surface, const std::vector<int>& face_region,
                         const std::string& path);

}  // namespace sweepout
