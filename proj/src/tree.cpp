#include "sweepout/tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sweepout/constants.hpp"

namespace sweepout {

namespace {

bool is_binary_string(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char ch) { return ch == '0' || ch == '1'; });
}

}  // namespace

bool validate_tree(const std::set<std::string>& nodes, std::vector<TreeViolation>* violations) {
    bool ok = true;
    auto report = [&](const std::string& node, const char* rule) {
        ok = false;
        if (violations) violations->push_back({node, rule});
    };
    for (const auto& a : nodes) {
        if (!is_binary_string(a)) {
            report(a, "alphabet");
            continue;
        }
        for (std::size_t len = 1; len < a.size(); ++len) {
            std::string prefix = a.substr(0, len);
            if (!nodes.count(prefix)) report(a, "prefix");
        }
        std::string sibling = a;
        sibling.back() = sibling.back() == '0' ? '1' : '0';
        if (!nodes.count(sibling)) report(a, "sibling");
    }
    return ok;
}

std::set<std::string> tree_boundary(const std::set<std::string>& nodes) {
    std::set<std::string> leaves;
    for (const auto& a : nodes) {
        if (!nodes.count(a + "0")) leaves.insert(a);
    }
    return leaves;
}

DecompositionWitness validate_decomposition(double X,
                                            const std::map<std::string, double>& values,
                                            double lambda) {
    std::set<std::string> nodes;
    for (const auto& [a, v] : values) nodes.insert(a);
    if (!validate_tree(nodes))
        throw std::invalid_argument("validate_decomposition: node set is not an admissible tree");
    if (!(lambda > 0.0 && lambda <= 0.5))
        throw std::invalid_argument("validate_decomposition: lambda outside (0, 1/2]");

    DecompositionWitness w;
    w.root_value = X;
    w.lambda = lambda;
    w.values = values;

    auto value_of = [&](const std::string& a) { return values.at(a); };

    w.checks.push_back(make_le_certificate("tree.root_value_ge_1", 1.0, X));
    if (nodes.count("0")) {
        // Root split: exact sum, strictly balanced.  The strict comparison
        // carries a relative fp tolerance, without which the boundary case
        // lambda = 1/2 with an exactly even split could never validate.
        w.checks.push_back(make_eq_certificate("tree.sum[root]", value_of("0") + value_of("1"), X));
        w.checks.push_back(make_le_certificate("tree.balance[root.0]", lambda * X, value_of("0"),
                                               1e-12, "strict up to fp tolerance"));
        w.checks.push_back(make_le_certificate("tree.balance[root.1]", lambda * X, value_of("1"),
                                               1e-12, "strict up to fp tolerance"));
    }
    for (const auto& a : nodes) {
        w.checks.push_back(make_le_certificate("tree.value_ge_1[" + a + "]", 1.0, value_of(a)));
        if (nodes.count(a + "0")) {
            double va = value_of(a);
            double v0 = value_of(a + "0"), v1 = value_of(a + "1");
            w.checks.push_back(make_eq_certificate("tree.sum[" + a + "]", v0 + v1, va));
            w.checks.push_back(
                make_le_certificate("tree.balance[" + a + "0]", lambda * va, v0, 1e-12));
            w.checks.push_back(
                make_le_certificate("tree.balance[" + a + "1]", lambda * va, v1, 1e-12));
        }
    }
    w.valid = all_pass(w.checks);
    return w;
}

double decomposition_cost(const DecompositionWitness& w, int n) {
    double p = double(n - 1) / n;
    double total = std::pow(w.root_value, p);
    for (const auto& [a, v] : w.values) total += std::pow(v, p);
    return total;
}

double interior_cost(const DecompositionWitness& w, int n) {
    double p = double(n - 1) / n;
    double total = std::pow(w.root_value, p);
    for (const auto& [a, v] : w.values) {
        if (w.values.count(a + "0")) total += std::pow(v, p);
    }
    return total;
}

SupremalCostTable::SupremalCostTable(double lambda, int n, double resolution, double x_max)
    : lambda_(lambda), n_(n), resolution_(resolution) {
    if (!(lambda > 0.0 && lambda <= 0.5))
        throw std::invalid_argument("supremal_cost: lambda outside (0, 1/2]");
    if (resolution <= 0.0) throw std::invalid_argument("supremal_cost: resolution <= 0");
    if (x_max < 1.0) throw std::invalid_argument("supremal_cost: X < 1");

    const double p = double(n - 1) / n;
    const int M = static_cast<int>(std::floor(x_max / resolution + 1e-9));
    const int m1 = static_cast<int>(std::ceil(1.0 / resolution - 1e-9));  // smallest value >= 1

    std::vector<double> pw(M + 1, 0.0);
    for (int m = 0; m <= M; ++m) pw[m] = std::pow(m * resolution, p);

    table_.assign(M + 1, 0.0);
    for (int m = m1; m <= M; ++m) {
        double best = pw[m];
        // Children (i, m-i) on the grid, each >= 1 and >= lambda * parent.
        // The larger child is automatically <= (1-lambda) * parent.
        int lo = std::max(m1, static_cast<int>(std::ceil(lambda * m - 1e-9)));
        double split_best = -1.0;
        for (int i = lo; 2 * i <= m; ++i) {
            int j = m - i;
            if (j < m1) continue;
            split_best = std::max(split_best, table_[i] + table_[j]);
        }
        if (split_best > 0.0) best = pw[m] + split_best;
        table_[m] = best;
    }
}

double SupremalCostTable::query(double X) const {
    if (X < 1.0) throw std::invalid_argument("supremal_cost: X < 1");
    int m = static_cast<int>(std::floor(X / resolution_ + 1e-9));
    m = std::min<int>(m, static_cast<int>(table_.size()) - 1);
    // The rounded-down table value and the bare root term are both certified
    // lower bounds; take the larger.
    return std::max(table_[m], std::pow(X, double(n_ - 1) / n_));
}

double supremal_cost(double X, double lambda, int n, double resolution) {
    SupremalCostTable table(lambda, n, resolution, X);
    return table.query(X);
}

Certificate check_linear_growth(double X, double lambda, int n, double resolution) {
    double cost = supremal_cost(X, lambda, n, resolution);
    double lt = lambda_tilde(lambda, n);
    double lhs = cost + lt * std::pow(X, double(n - 1) / n);
    double rhs = (1.0 + lt) * X;
    return make_le_certificate("tree.linear_growth", lhs, rhs, 1e-12,
                               "X=" + std::to_string(X) + " lambda=" + std::to_string(lambda));
}

}  // namespace sweepout
