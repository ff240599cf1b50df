#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sweepout/certificate.hpp"

namespace sweepout {

// Nodes of an admissible binary tree are binary strings; the root's children
// are "0" and "1" and the root itself is kept outside the node set.

struct TreeViolation {
    std::string node;
    std::string rule;  // "prefix" or "sibling"
};

/// Prefix-closure and the sibling rule ("a0 present iff a1 present").
bool validate_tree(const std::set<std::string>& nodes,
                   std::vector<TreeViolation>* violations = nullptr);

/// Nodes with no children.
std::set<std::string> tree_boundary(const std::set<std::string>& nodes);

struct DecompositionWitness {
    double root_value = 0.0;
    double lambda = 0.5;
    std::map<std::string, double> values;
    std::vector<Certificate> checks;
    bool valid = false;
};

/// Checks the split rules node by node: the root split is strict
/// (children > lambda X), interior splits are non-strict (children >= lambda
/// X_a), sums match parents, and every value is >= 1.  One certificate per
/// rule per node; the witness is valid iff all pass.
DecompositionWitness validate_decomposition(double X,
                                            const std::map<std::string, double>& values,
                                            double lambda);

/// X^{(n-1)/n} + sum over all tree nodes of X_a^{(n-1)/n} (leaves included).
double decomposition_cost(const DecompositionWitness& witness, int n);

/// Sum over interior nodes only, plus the root term; the form used by the
/// recursive-subdivision boundary certificate.
double interior_cost(const DecompositionWitness& witness, int n);

// Dynamic program for the supremal cost.  Values live on a grid of multiples
// of `resolution`; children must sum exactly to their parent on the grid, so
// every table entry is the cost of a concrete admissible decomposition and the
// result is a certified lower approximation of the supremum.
class SupremalCostTable {
  public:
    SupremalCostTable(double lambda, int n, double resolution, double x_max);
    double query(double X) const;

    double lambda() const { return lambda_; }
    double resolution() const { return resolution_; }

  private:
    double lambda_;
    int n_;
    double resolution_;
    std::vector<double> table_;
};

double supremal_cost(double X, double lambda, int n, double resolution);

/// Certificate that supremal_cost(X) + lambda~ X^{(n-1)/n} <= (1 + lambda~) X.
Certificate check_linear_growth(double X, double lambda, int n, double resolution = 0.01);

}  // namespace sweepout
