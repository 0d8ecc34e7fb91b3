#include "toricfib/toricdiv.hpp"

#include <stdexcept>

namespace toricfib {

ToricDivisor::ToricDivisor(FanPtr fan) : fan_(std::move(fan)) {
    if (!fan_) throw std::invalid_argument("null fan");
    coeffs_.assign(fan_->rays().size(), Rational(0));
}

ToricDivisor::ToricDivisor(FanPtr fan, const std::vector<std::pair<LatticeVector, Rational>>& coefficients)
    : ToricDivisor(std::move(fan)) {
    for (const auto& [ray, value] : coefficients) {
        const Rational sum = coefficient(ray) + value;
        set(ray, sum);
    }
}

ToricDivisor ToricDivisor::prime(FanPtr fan, const LatticeVector& ray) {
    ToricDivisor d(std::move(fan));
    d.set(ray, 1);
    return d;
}

const Rational& ToricDivisor::coefficient(const LatticeVector& ray) const {
    const auto idx = fan_->ray_index(ray);
    if (!idx) throw std::invalid_argument("vector " + to_string(ray) + " is not a ray of the fan");
    return coeffs_[*idx];
}

void ToricDivisor::set(const LatticeVector& ray, const Rational& value) {
    const auto idx = fan_->ray_index(ray);
    if (!idx) throw std::invalid_argument("vector " + to_string(ray) + " is not a ray of the fan");
    coeffs_[*idx] = value;
}

bool ToricDivisor::is_zero() const {
    for (const auto& c : coeffs_) {
        if (c != 0) return false;
    }
    return true;
}

void ToricDivisor::require_same_fan(const ToricDivisor& other) const {
    if (fan_ != other.fan_ && !(*fan_ == *other.fan_)) {
        throw std::invalid_argument("divisors live on different fans");
    }
}

ToricDivisor& ToricDivisor::operator+=(const ToricDivisor& other) {
    require_same_fan(other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coefficient(fan_->rays()[i]);
    return *this;
}

ToricDivisor& ToricDivisor::operator-=(const ToricDivisor& other) {
    require_same_fan(other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coefficient(fan_->rays()[i]);
    return *this;
}

ToricDivisor& ToricDivisor::operator*=(const Rational& k) {
    for (auto& c : coeffs_) c *= k;
    return *this;
}

bool operator==(const ToricDivisor& a, const ToricDivisor& b) {
    if (a.fan_ != b.fan_ && !(*a.fan_ == *b.fan_)) return false;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] != b.coefficient(a.fan_->rays()[i])) return false;
    }
    return true;
}

ToricDivisor canonical_divisor(FanPtr fan) {
    ToricDivisor k(std::move(fan));
    for (const auto& r : k.fan().rays()) k.set(r, -1);
    return k;
}

ToricDivisor horizontal_boundary(FanPtr fan) {
    ToricDivisor s(std::move(fan));
    for (const auto& r : s.fan().rays()) {
        if (r[0] == 0) s.set(r, 1);
    }
    return s;
}

ToricDivisor character_divisor(FanPtr fan, const RationalVector& m) {
    ToricDivisor d(std::move(fan));
    if (m.dim() != d.fan().ambient_dim()) throw std::invalid_argument("character has wrong dimension");
    for (const auto& r : d.fan().rays()) d.set(r, dot(m, r));
    return d;
}

// ---------------------------------------------------------------------------

SupportFunction::SupportFunction(FanPtr fan, std::vector<RationalVector> pieces)
    : fan_(std::move(fan)), pieces_(std::move(pieces)) {
    if (pieces_.size() != fan_->maximal_cones().size()) {
        throw std::invalid_argument("one linear piece per maximal cone required");
    }
}

Rational SupportFunction::operator()(const RationalVector& x) const {
    const auto& cones = fan_->maximal_cones();
    for (std::size_t i = 0; i < cones.size(); ++i) {
        if (cones[i].coordinates(x)) return dot(pieces_[i], x);
    }
    throw std::invalid_argument("vector not in fan support");
}

SupportFunction support_function(const ToricDivisor& d) {
    const Fan& fan = d.fan();
    std::vector<RationalVector> pieces;
    for (const auto& cone : fan.maximal_cones()) {
        std::vector<Rational> rhs;
        for (const auto& r : cone.rays()) rhs.push_back(-d.coefficient(r));
        auto m = solve_linear_system(cone.rays(), rhs, fan.ambient_dim());
        if (!m) throw std::logic_error("simplicial cone without a Cartier witness");
        pieces.push_back(std::move(*m));
    }
    return SupportFunction(d.fan_ptr(), std::move(pieces));
}

// ---------------------------------------------------------------------------

namespace {

void require_boundary_le_one(const ToricDivisor& boundary) {
    for (const auto& c : boundary.coefficients()) {
        if (c > 1) throw std::invalid_argument("boundary coefficients must be <= 1");
    }
}

} // namespace

Rational log_discrepancy(const Fan& fan, const ToricDivisor& boundary, const LatticeVector& l) {
    if (!(boundary.fan() == fan)) throw std::invalid_argument("boundary lives on a different fan");
    require_boundary_le_one(boundary);
    if (!is_primitive(l)) throw std::invalid_argument("log discrepancy needs a primitive vector");
    const auto tau = smallest_containing_cone(fan, l);
    Rational a = 0;
    for (std::size_t i = 0; i < tau.cone.rays().size(); ++i) {
        a += tau.coefficients[i] * (1 - boundary.coefficient(tau.cone.rays()[i]));
    }
    return a;
}

MldResult toric_mld(const Fan& fan, const ToricDivisor& boundary) {
    if (!(boundary.fan() == fan)) throw std::invalid_argument("boundary lives on a different fan");
    require_boundary_le_one(boundary);
    std::optional<MldResult> best;
    auto offer = [&](const Rational& value, const LatticeVector& point) {
        if (!best || value < best->value || (value == best->value && point < best->minimizer)) {
            best = MldResult{value, point};
        }
    };
    for (const auto& cone : fan.maximal_cones()) {
        std::vector<Rational> weight;
        for (const auto& r : cone.rays()) {
            weight.push_back(1 - boundary.coefficient(r));
            offer(weight.back(), r);
        }
        const auto box = parallelepiped_points(cone.rays());
        for (std::size_t k = 1; k < box.size(); ++k) {
            if (!is_primitive(box[k].point)) continue;
            Rational a = 0;
            for (std::size_t i = 0; i < weight.size(); ++i) a += box[k].coefficients[i] * weight[i];
            offer(a, box[k].point);
        }
    }
    return *best;
}

bool is_epsilon_lc(const Fan& fan, const ToricDivisor& boundary, const Rational& eps) {
    if (eps <= 0 || eps > 1) throw std::invalid_argument("eps must lie in (0, 1]");
    return toric_mld(fan, boundary).value >= eps;
}

Integer fiber_multiplicity(const Fan& fan, const LatticeVector& t) {
    if (!fan.has_ray(t)) throw std::invalid_argument("vector " + to_string(t) + " is not a ray of the fan");
    if (t[0] <= 0) throw std::invalid_argument("not a fiber component");
    return t[0];
}

ToricDivisor fiber_divisor(FanPtr fan) {
    ToricDivisor f(std::move(fan));
    for (const auto& r : f.fan().rays()) f.set(r, Rational(r[0]));
    return f;
}

ToricDivisor pullback(const Subdivision& sub, const ToricDivisor& d) {
    if (!sub.coarse || !sub.fine) throw std::invalid_argument("incomplete subdivision record");
    if (!(d.fan() == *sub.coarse)) throw std::invalid_argument("divisor does not live on the coarse fan");
    if (!(star_subdivide(*sub.coarse, sub.ray) == *sub.fine)) {
        throw std::invalid_argument("fans are not related by the recorded subdivision");
    }
    const auto phi = support_function(d);
    ToricDivisor out(sub.fine);
    for (const auto& r : sub.fine->rays()) {
        if (r == sub.ray) out.set(r, -phi(r));
        else out.set(r, d.coefficient(r));
    }
    return out;
}

std::optional<RationalVector> rel_lin_equiv(const ToricDivisor& d1, const ToricDivisor& d2) {
    const ToricDivisor diff = d1 - d2;
    const Fan& fan = diff.fan();
    std::vector<Rational> rhs;
    for (const auto& c : diff.coefficients()) rhs.push_back(-c);
    return solve_linear_system(fan.rays(), rhs, fan.ambient_dim());
}

} // namespace toricfib
