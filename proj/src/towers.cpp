#include "toricfib/towers.hpp"

#include "toricfib/toricdiv.hpp"

#include <stdexcept>

namespace toricfib {

namespace {

std::string level_prefix(std::size_t level) { return "level " + std::to_string(level) + ": "; }

// P^{d-1} x A^p; base coordinates first. For p = 1 this is the standard
// fibration fan.
Fan projective_bundle_fan(std::size_t p, std::size_t d) {
    if (p == 1) return standard_fibration_fan(d);
    const std::size_t dim = p + d - 1;
    std::vector<LatticeVector> base;
    for (std::size_t j = 0; j < p; ++j) base.push_back(LatticeVector::unit(dim, j));
    std::vector<LatticeVector> fibre;
    LatticeVector c(dim);
    for (std::size_t j = p; j < dim; ++j) {
        fibre.push_back(LatticeVector::unit(dim, j));
        c[j] = -1;
    }
    fibre.push_back(c);
    std::vector<Cone> cones;
    for (std::size_t omit = fibre.size(); omit-- > 0;) {
        auto rays = base;
        for (std::size_t j = 0; j < fibre.size(); ++j) {
            if (j != omit) rays.push_back(fibre[j]);
        }
        cones.emplace_back(std::move(rays), dim);
    }
    return Fan(dim, std::move(cones), FanCheck::Trusted);
}

} // namespace

std::vector<std::string> validate(const TowerSpec& spec) {
    std::vector<std::string> out;
    if (spec.p < 1) out.push_back("base dimension p must be at least 1");
    for (std::size_t k = 0; k < spec.steps.size(); ++k) {
        const std::size_t level = k + 2;
        const auto& step = spec.steps[k];
        if (step.kind == StepKind::Product) {
            if (!step.alpha_exponents.empty() || !step.t_exponents.empty()) {
                out.push_back(level_prefix(level) + "product step carries character exponents");
            }
            continue;
        }
        for (const auto& [index, exponent] : step.alpha_exponents) {
            if (index >= level) {
                out.push_back("level " + std::to_string(level) + " may not reference α_" + std::to_string(index));
            } else if (index < 2) {
                out.push_back(level_prefix(level) + "α index " + std::to_string(index) + " out of range");
            }
        }
        if (step.t_exponents.size() != spec.p) {
            out.push_back(level_prefix(level) + "expected " + std::to_string(spec.p) + " t-exponents, got " +
                          std::to_string(step.t_exponents.size()));
        }
    }
    return out;
}

std::vector<std::string> degeneracy_notes(const TowerSpec& spec) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < spec.steps.size(); ++k) {
        const auto& step = spec.steps[k];
        if (step.kind != StepKind::Node) continue;
        bool constant = true;
        for (const auto& [index, e] : step.alpha_exponents) constant = constant && e == 0;
        for (const auto& e : step.t_exponents) constant = constant && e == 0;
        if (constant) out.push_back(level_prefix(k + 2) + "λ is the constant character 1 (degenerate node)");
    }
    return out;
}

std::size_t torus_dimension(const TowerSpec& spec, std::size_t level) {
    if (level < 1 || level > spec.top_level()) throw std::invalid_argument("tower level out of range");
    return level - 1 + spec.p;
}

TowerSpec pullback_tower(const TowerSpec& spec, const GermData& germ) {
    if (germ.c.size() != spec.p) throw std::invalid_argument("germ length does not match the base dimension");
    for (const auto& c : germ.c) {
        if (c < 0) throw std::invalid_argument("vanishing orders must be non-negative");
    }
    TowerSpec out;
    out.p = 1;
    for (const auto& step : spec.steps) {
        if (step.kind == StepKind::Product) {
            out.steps.push_back(TowerStep::product());
            continue;
        }
        if (step.t_exponents.size() != spec.p) throw std::invalid_argument("node has the wrong number of t-exponents");
        Integer exponent = 0;
        if (germ.at_boundary) {
            for (std::size_t j = 0; j < spec.p; ++j) exponent += germ.c[j] * step.t_exponents[j];
        }
        out.steps.push_back(TowerStep::node(step.alpha_exponents, {exponent}));
    }
    return out;
}

Rational projective_model_discrepancy(const TowerSpec& spec, std::size_t d, const LatticeVector& l) {
    if (d < 2) throw std::invalid_argument("d must be at least 2");
    if (d != spec.top_level()) throw std::invalid_argument("d must equal the top level of the tower");
    auto fan = std::make_shared<const Fan>(projective_bundle_fan(spec.p, d));
    if (l.dim() != fan->ambient_dim()) throw std::invalid_argument("valuation has the wrong dimension");
    ToricDivisor boundary(fan);
    for (const auto& r : fan->rays()) boundary.set(r, 1);
    return log_discrepancy(*fan, boundary, l);
}

} // namespace toricfib
