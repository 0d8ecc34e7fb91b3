#include "toricfib/surface.hpp"

#include <algorithm>
#include <stdexcept>

namespace toricfib {

namespace {

Integer cross(const LatticeVector& u, const LatticeVector& w) { return u[0] * w[1] - u[1] * w[0]; }

// Clockwise from (0,1) to (0,-1) through the right half-plane.
bool clockwise_before(const LatticeVector& u, const LatticeVector& w) {
    auto rank = [](const LatticeVector& v) {
        if (v[0] == 0) return v[1] > 0 ? 0 : 2;
        return 1;
    };
    const int ru = rank(u);
    const int rw = rank(w);
    if (ru != rw) return ru < rw;
    if (ru != 1) return false;
    return cross(u, w) < 0;
}

std::size_t position(const std::vector<LatticeVector>& rays, const LatticeVector& ray) {
    const auto it = std::find(rays.begin(), rays.end(), ray);
    if (it == rays.end()) throw std::invalid_argument("vector " + to_string(ray) + " is not a ray of the fan");
    return static_cast<std::size_t>(it - rays.begin());
}

bool has_cone(const Fan& fan, const LatticeVector& a, const LatticeVector& b) {
    const Cone probe({a, b}, 2);
    return std::any_of(fan.maximal_cones().begin(), fan.maximal_cones().end(),
                       [&](const Cone& c) { return c == probe; });
}

} // namespace

SurfaceModel::SurfaceModel(FanPtr fan) : fan_(std::move(fan)) {
    if (!fan_ || fan_->ambient_dim() != 2) throw std::invalid_argument("surface models need a 2-dimensional fan");
    for (const auto& r : fan_->rays()) {
        if (r[0] < 0) throw std::invalid_argument("surface fan leaves the half-plane x_1 >= 0");
    }
    ordered_ = fan_->rays();
    std::sort(ordered_.begin(), ordered_.end(), clockwise_before);
    for (const auto& cone : fan_->maximal_cones()) {
        if (cone.dim() != 2) throw std::invalid_argument("surface cones must be 2-dimensional");
        const std::size_t i = position(ordered_, cone.rays()[0]);
        const std::size_t j = position(ordered_, cone.rays()[1]);
        if (std::max(i, j) - std::min(i, j) != 1) {
            throw std::invalid_argument("surface cones must join angularly consecutive rays");
        }
    }
}

bool SurfaceModel::is_complete_curve(const LatticeVector& ray) const {
    const std::size_t k = position(ordered_, ray);
    if (k == 0 || k + 1 == ordered_.size()) return false;
    return has_cone(*fan_, ordered_[k - 1], ray) && has_cone(*fan_, ray, ordered_[k + 1]);
}

SurfaceModel SurfaceModel::contract(const LatticeVector& ray) const {
    if (!is_complete_curve(ray)) throw std::invalid_argument("curve not complete");
    const std::size_t k = position(ordered_, ray);
    const auto& prev = ordered_[k - 1];
    const auto& next = ordered_[k + 1];
    if (cross(prev, next) >= 0) throw std::invalid_argument("contraction would produce a non-convex cone");
    std::vector<Cone> cones;
    for (const auto& c : fan_->maximal_cones()) {
        if (!c.has_ray(ray)) cones.push_back(c);
    }
    cones.emplace_back(std::vector<LatticeVector>{prev, next}, 2);
    return SurfaceModel(std::make_shared<const Fan>(2, std::move(cones), FanCheck::Trusted));
}

Rational intersect(const SurfaceModel& model, const ToricDivisor& d, const LatticeVector& ray, NormalizingCone side) {
    if (!(d.fan() == *model.fan())) throw std::invalid_argument("divisor lives on a different fan");
    if (!model.is_complete_curve(ray)) throw std::invalid_argument("curve not complete");
    const auto& rays = model.ordered_rays();
    const std::size_t k = position(rays, ray);
    const LatticeVector& prev = rays[k - 1];
    const LatticeVector& next = rays[k + 1];
    const LatticeVector& near = side == NormalizingCone::Before ? prev : next;
    const LatticeVector& far = side == NormalizingCone::Before ? next : prev;

    // Subtract the character that is linear on cone(near, ray); what is left
    // meets the curve only through the far ray.
    const std::vector<LatticeVector> normalizing{near, ray};
    const std::vector<Rational> rhs{-d.coefficient(near), -d.coefficient(ray)};
    const auto m = solve_linear_system(normalizing, rhs, 2);
    if (!m) throw std::logic_error("2-dimensional cone without a Cartier witness");
    const Rational far_coeff = d.coefficient(far) + dot(*m, far);
    return far_coeff / Rational(multiplicity(Cone({ray, far}, 2)));
}

ExampleTrace example_models(const Integer& n) {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    const LatticeVector d_ray{1, 0};
    const LatticeVector t_ray({n, Integer(1)});
    auto current = std::make_shared<const Fan>(standard_fibration_fan(2));
    std::vector<FanPtr> blowups{current};
    for (Integer k = 1; k <= n; ++k) {
        current = std::make_shared<const Fan>(star_subdivide(*current, LatticeVector({k, Integer(1)})));
        blowups.push_back(current);
    }
    SurfaceModel x(blowups.front());
    SurfaceModel y(blowups.back());
    const LatticeVector& last = y.ordered_rays()[y.ordered_rays().size() - 3];
    if (last != t_ray) throw std::logic_error("the last exceptional divisor is not (n,1)");
    for (Integer k = 1; k < n; ++k) y = y.contract(LatticeVector({k, Integer(1)}));
    SurfaceModel v = y.contract(d_ray);
    return ExampleTrace{std::move(blowups), std::move(x), std::move(y), std::move(v), t_ray, d_ray};
}

ExampleReport example_verify(const Integer& n, const Integer& r, const Rational& eps) {
    return example_verify(example_models(n), r, eps);
}

ExampleReport example_verify(const ExampleTrace& trace, const Integer& r, const Rational& eps) {
    const Integer n = trace.t[0];
    ExampleReport rep;
    rep.n = n;
    rep.r = r;
    rep.eps = eps;

    const auto v = model_V(2, trace.t);
    if (!(*v.fan == *trace.v.fan())) throw std::logic_error("contracted surface differs from the model V");
    const auto ym = model_Y(v, trace.d, r, eps);
    if (!(*ym.y.fan == *trace.y.fan())) throw std::logic_error("contracted surface differs from the model Y");

    rep.a = log_discrepancy(*v.fan, ToricDivisor(v.fan), trace.d);
    const SurfaceModel y(ym.y.fan);
    rep.d_dot_t = intersect(y, ToricDivisor::prime(ym.y.fan, trace.d), trace.t);
    rep.k_theta_dot_t = intersect(y, canonical_divisor(ym.y.fan) + ym.theta, trace.t);

    rep.a_matches = rep.a == make_rational(2, n);
    rep.d_dot_t_matches = rep.d_dot_t == 1;
    rep.k_theta_matches = rep.k_theta_dot_t == -eps + make_rational(2 * r, n);
    rep.fires = certify(2, r, eps, trace.t, trace.d).fires;
    rep.coincidence = rep.fires == (rep.k_theta_dot_t < 0);
    return rep;
}

} // namespace toricfib
