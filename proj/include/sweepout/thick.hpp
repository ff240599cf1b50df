#pragma once

#include <optional>
#include <vector>

#include "sweepout/certificate.hpp"
#include "sweepout/constants.hpp"
#include "sweepout/surface.hpp"
#include "sweepout/tree.hpp"

namespace sweepout {

struct CutResult {
    double sigma_length_g = 0.0;
    Domain side0, side1;  // side0 is the smaller base-area side
    double balance = 0.0;  // min side area / |U|_g
    double c_ratio = 0.0;  // sigma / (|U|_g^{(n-1)/n} max{1, |U|_{g0}^{1/n}})
    bool component_split = false;
};

/// Balanced sweep cut of a domain: level sets of comparison-metric distance
/// fields from eight farthest-point-sampled trial vertices plus the two ends
/// of an approximate diameter.  Among sweep cuts whose smaller side holds at
/// least 25^-n of the base area, returns the one of minimal base-metric cut
/// length (ties: first seed, then smallest level).  Disconnected domains
/// split along components with zero cut length when that balances.
/// Returns nullopt when no balanced cut exists; callers treat the domain as
/// a leaf.
std::optional<CutResult> isoperimetric_cut(const Surface& surface, const Domain& U, int n = 2);

struct ThickLeaf {
    Domain domain;
    std::string label;  // tree node, empty = root
    double k_alpha = 0.0;
    double width_bound = 0.0;  // first-width bound with measured areas
};

struct ThickDecomposition {
    DecompositionWitness tree;
    std::vector<ThickLeaf> leaves;
    std::vector<CutResult> cuts;
    double boundary_total_g = 0.0;
    double c_emp = 0.0;            // max c_ratio over cuts
    double claim_mid = 0.0;        // c_emp * (interior-node cost sum), normalized
    double claim_bound = 0.0;      // 2 c_emp (1 + lambda~(1/50^n)) k^{1/n}, normalized
    double normalization_area = 0.0;  // |N|_g used to normalize
    long long k = 0;
    std::vector<Certificate> certificates;
    bool pass = false;
};

/// Recursive balanced subdivision of N until every piece has base area below
/// 50^n |N|_g / k, with the boundary-sum certificate driven by the tree
/// decomposition of k_a = k |N_a|_g / |N|_g.  Areas are normalized to
/// |N|_g = 1 internally; reported lengths and areas stay in original units.
ThickDecomposition decompose_thick(const Surface& surface, const Domain& N, long long k,
                                   const ConstantBundle& bundle);

}  // namespace sweepout
