#pragma once

// Symbolic special toric towers V_d -> ... -> V_1 = A^p.
//
// Level i >= 2 is either a product with A^1 (new coordinate alpha_i) or a
// node alpha_i alpha_i' = lambda_i with lambda_i a character in
// alpha_2, ..., alpha_{i-1}, t_1, ..., t_p. Only the character bookkeeping is
// represented; the varieties themselves are never materialized.

#include "toricfib/exactmath.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace toricfib {

enum class StepKind { Product, Node };

struct TowerStep {
    StepKind kind = StepKind::Product;
    std::map<std::size_t, Integer> alpha_exponents; // alpha index -> m_j
    std::vector<Integer> t_exponents;               // n_1, ..., n_p

    static TowerStep product() { return {}; }
    static TowerStep node(std::map<std::size_t, Integer> alpha, std::vector<Integer> t) {
        return {StepKind::Node, std::move(alpha), std::move(t)};
    }
    friend bool operator==(const TowerStep&, const TowerStep&) = default;
};

struct TowerSpec {
    std::size_t p = 1;
    std::vector<TowerStep> steps; // steps[k] defines level k + 2

    std::size_t top_level() const { return steps.size() + 1; }
    friend bool operator==(const TowerSpec&, const TowerSpec&) = default;
};

struct GermData {
    std::vector<Integer> c; // vanishing orders of s_j = e_j u^{c_j}
    bool at_boundary = false;
    friend bool operator==(const GermData&, const GermData&) = default;
};

/// Violations of the index and shape rules, one message per problem. Empty iff
/// the tower is well formed.
std::vector<std::string> validate(const TowerSpec& spec);

/// Remarks that do not invalidate the tower (currently: constant characters).
std::vector<std::string> degeneracy_notes(const TowerSpec& spec);

/// i - 1 + p, for 1 <= i <= top level.
std::size_t torus_dimension(const TowerSpec& spec, std::size_t level);

/// The tower over the one-dimensional base: each node keeps its alpha
/// exponents and gets t-exponent sum_j c_j n_j (zero off the boundary).
TowerSpec pullback_tower(const TowerSpec& spec, const GermData& germ);

/// Log discrepancy of the toric valuation l over P^{d-1} x A^p with respect to
/// its full toric boundary. Identically zero on the support.
Rational projective_model_discrepancy(const TowerSpec& spec, std::size_t d, const LatticeVector& l);

} // namespace toricfib
