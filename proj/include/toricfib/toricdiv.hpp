#pragma once

// Torus-invariant Q-divisors on simplicial fans and the piecewise-linear
// machinery around them.
//
// Sign convention: the support function phi_D of a divisor D satisfies
// phi_D(u) = -coeff_D(u) at every ray u, so the effective fibre over the
// origin of A^1 has support function -x_1. Characters m are attached to
// divisors by the same rule: m witnesses D when <m, u> = -coeff_D(u) for all
// rays u.

#include "toricfib/fan.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace toricfib {

class ToricDivisor {
public:
    explicit ToricDivisor(FanPtr fan);
    ToricDivisor(FanPtr fan, const std::vector<std::pair<LatticeVector, Rational>>& coefficients);

    /// Divisor with coefficient 1 on a single ray.
    static ToricDivisor prime(FanPtr fan, const LatticeVector& ray);

    const Fan& fan() const { return *fan_; }
    const FanPtr& fan_ptr() const { return fan_; }

    /// Coefficient at a ray of the fan. Throws if the vector is not a ray.
    const Rational& coefficient(const LatticeVector& ray) const;
    void set(const LatticeVector& ray, const Rational& value);
    /// Coefficients aligned with fan().rays().
    const std::vector<Rational>& coefficients() const { return coeffs_; }

    bool is_zero() const;

    ToricDivisor& operator+=(const ToricDivisor& other);
    ToricDivisor& operator-=(const ToricDivisor& other);
    ToricDivisor& operator*=(const Rational& k);
    friend ToricDivisor operator+(ToricDivisor a, const ToricDivisor& b) { return a += b; }
    friend ToricDivisor operator-(ToricDivisor a, const ToricDivisor& b) { return a -= b; }
    friend ToricDivisor operator*(const Rational& k, ToricDivisor a) { return a *= k; }

    friend bool operator==(const ToricDivisor& a, const ToricDivisor& b);

private:
    void require_same_fan(const ToricDivisor& other) const;

    FanPtr fan_;
    std::vector<Rational> coeffs_;
};

/// -(sum of all rays).
ToricDivisor canonical_divisor(FanPtr fan);
/// Sum of the rays with first coordinate 0.
ToricDivisor horizontal_boundary(FanPtr fan);
/// Divisor of the character m: coefficient <m, u> at each ray u.
ToricDivisor character_divisor(FanPtr fan, const RationalVector& m);

/// Linear pieces of the support function, one per maximal cone.
class SupportFunction {
public:
    SupportFunction(FanPtr fan, std::vector<RationalVector> pieces);

    const std::vector<RationalVector>& pieces() const { return pieces_; }
    const RationalVector& piece(std::size_t cone_index) const { return pieces_.at(cone_index); }

    /// Value at a point of the support; throws if outside.
    Rational operator()(const RationalVector& x) const;
    Rational operator()(const LatticeVector& x) const { return (*this)(RationalVector(x)); }

private:
    FanPtr fan_;
    std::vector<RationalVector> pieces_;
};

/// The Q-Cartier witness of D. On simplicial fans this always exists.
SupportFunction support_function(const ToricDivisor& d);

/// A(l) = sum c_i (1 - b_i) over the smallest cone containing l.
/// Requires l primitive, in the support, and boundary coefficients <= 1.
Rational log_discrepancy(const Fan& fan, const ToricDivisor& boundary, const LatticeVector& l);

struct MldResult {
    Rational value;
    LatticeVector minimizer; // lexicographically smallest among minimizers
};

/// Minimal log discrepancy over primitive lattice points of the support,
/// computed from rays and parallelepiped points of each maximal cone.
MldResult toric_mld(const Fan& fan, const ToricDivisor& boundary);

bool is_epsilon_lc(const Fan& fan, const ToricDivisor& boundary, const Rational& eps);

/// First coordinate of a ray lying over the origin.
Integer fiber_multiplicity(const Fan& fan, const LatticeVector& t);

/// Coefficient u_1 at each ray u: the scheme-theoretic fibre over the origin.
ToricDivisor fiber_divisor(FanPtr fan);

/// Pullback of D from sub.coarse to sub.fine.
ToricDivisor pullback(const Subdivision& sub, const ToricDivisor& d);

/// m with <m, u> = -(coeff_{D1}(u) - coeff_{D2}(u)) at every ray, if it exists.
std::optional<RationalVector> rel_lin_equiv(const ToricDivisor& d1, const ToricDivisor& d2);

} // namespace toricfib
