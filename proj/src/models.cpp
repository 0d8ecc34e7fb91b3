#include "toricfib/models.hpp"

#include <stdexcept>

namespace toricfib {

std::string_view to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::X: return "X";
    case ModelKind::V: return "V";
    case ModelKind::Y: return "Y";
    case ModelKind::W: return "W";
    case ModelKind::U: return "U";
    }
    return "?";
}

Rational sum_of(const RayCoefficients& coeffs) {
    Rational s = 0;
    for (const auto& [ray, c] : coeffs) s += c;
    return s;
}

namespace {

void require_vertical_primitive(std::size_t d, const LatticeVector& v, std::string_view name) {
    if (d < 2) throw std::invalid_argument("d must be at least 2");
    if (v.dim() != d) throw std::invalid_argument(std::string(name) + " must have length d");
    if (!is_primitive(v)) throw std::invalid_argument(std::string(name) + " must be primitive");
    if (v[0] <= 0) throw std::invalid_argument(std::string(name) + " must have positive first coordinate");
}

// Splits the decomposition of `target` on `fan` into the coefficient of the
// vertical ray and the horizontal coefficients.
std::pair<Rational, RayCoefficients> decompose(const Fan& fan, const LatticeVector& vertical,
                                               const LatticeVector& target) {
    const auto tau = smallest_containing_cone(fan, target);
    Rational vertical_coeff = 0;
    bool found = false;
    RayCoefficients rest;
    for (std::size_t i = 0; i < tau.cone.rays().size(); ++i) {
        const auto& ray = tau.cone.rays()[i];
        if (ray == vertical) {
            vertical_coeff = tau.coefficients[i];
            found = true;
        } else {
            rest.emplace_back(ray, tau.coefficients[i]);
        }
    }
    if (!found) throw std::logic_error("vertical ray missing from the containing cone");
    if (rest.empty()) throw std::logic_error("containing cone is one-dimensional");
    return {vertical_coeff, std::move(rest)};
}

} // namespace

FibrationModel model_X(std::size_t d) {
    return {std::make_shared<const Fan>(standard_fibration_fan(d)), LatticeVector::unit(d, 0), ModelKind::X};
}

FibrationModel model_V(std::size_t d, const LatticeVector& n) {
    require_vertical_primitive(d, n, "n");
    return {std::make_shared<const Fan>(fibration_fan(d, n)), n, ModelKind::V};
}

YModel model_Y(const FibrationModel& v, const LatticeVector& l, const Integer& r, const Rational& eps) {
    const std::size_t d = v.fan->ambient_dim();
    require_vertical_primitive(d, l, "l");
    if (r < 1) throw std::invalid_argument("r must be a positive integer");
    if (eps <= 0 || eps > 1) throw std::invalid_argument("eps must lie in (0, 1]");
    const LatticeVector& n = v.distinguished_ray;
    if (l == n) throw std::invalid_argument("T and D must be distinct toric prime divisors");

    auto psi = subdivide(v.fan, l);
    FibrationModel y{psi.fine, l, ModelKind::Y};

    DecompositionData data;
    auto [gamma, alphas] = decompose(*v.fan, n, l);
    data.gamma = gamma;
    data.alphas = std::move(alphas);
    data.a = data.gamma + sum_of(data.alphas);
    data.u = (r - 1) * sum_of(data.alphas);
    if (data.gamma != make_rational(l[0], n[0])) throw std::logic_error("gamma differs from l_1 / n_1");

    ToricDivisor theta = Rational(r) * pullback(psi, horizontal_boundary(v.fan));
    const Rational d_coeff = theta.coefficient(l) + (1 - eps);
    theta.set(l, d_coeff);

    return YModel{v, y, std::move(psi), n, l, r, eps, std::move(theta), std::move(data)};
}

WUModel model_W_U(std::size_t d, const LatticeVector& l, const LatticeVector& n) {
    auto w = model_V(d, l);
    w.kind = ModelKind::W;
    require_vertical_primitive(d, n, "n");
    if (l == n) throw std::invalid_argument("T and D must be distinct toric prime divisors");
    auto pi = subdivide(w.fan, n);
    FibrationModel u{pi.fine, n, ModelKind::U};
    auto [lambda, betas] = decompose(*w.fan, l, n);
    if (lambda != make_rational(n[0], l[0])) throw std::logic_error("lambda differs from n_1 / l_1");
    return WUModel{std::move(w), std::move(u), std::move(pi), lambda, std::move(betas)};
}

IdentityReport verify_step2_identities(const YModel& m) {
    const FanPtr& yfan = m.y.fan;
    const ToricDivisor d_div = ToricDivisor::prime(yfan, m.l);
    const ToricDivisor t_div = ToricDivisor::prime(yfan, m.n);
    const ToricDivisor lhs = canonical_divisor(yfan) + (1 - m.data.a) * d_div;
    const ToricDivisor pulled_k = pullback(m.psi, canonical_divisor(m.v.fan));
    const ToricDivisor pulled_s = pullback(m.psi, horizontal_boundary(m.v.fan));
    const ToricDivisor zero(yfan);

    IdentityReport report;
    report.crepant.holds = lhs == pulled_k;
    if (report.crepant.holds) report.crepant.witness = rel_lin_equiv(lhs, pulled_k);

    report.log_canonical.witness = rel_lin_equiv(lhs + pulled_s, zero);
    report.log_canonical.holds = report.log_canonical.witness.has_value();

    const ToricDivisor fibre = Rational(m.n[0]) * t_div + Rational(m.l[0]) * d_div;
    report.fibre.witness = rel_lin_equiv(fibre, zero);
    report.fibre.holds = report.fibre.witness.has_value();
    return report;
}

CanonicalClass step3_class(const YModel& m) {
    const FanPtr& yfan = m.y.fan;
    const Rational c = (m.eps - m.data.a - m.data.u) * make_rational(m.n[0], m.l[0]);
    const ToricDivisor lhs = canonical_divisor(yfan) + m.theta;
    const ToricDivisor rhs = c * ToricDivisor::prime(yfan, m.n) + Rational(m.r - 1) * horizontal_boundary(yfan);
    auto witness = rel_lin_equiv(lhs, rhs);
    if (!witness) throw std::logic_error("K_Y + Theta_Y is not equivalent to the expected class");
    ToricDivisor residue = lhs - rhs + character_divisor(yfan, *witness);
    if (!residue.is_zero()) throw std::logic_error("character witness leaves a nonzero residue");
    return CanonicalClass{c, std::move(*witness), std::move(residue)};
}

} // namespace toricfib
