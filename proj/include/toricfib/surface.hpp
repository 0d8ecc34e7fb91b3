#pragma once

// Intersection numbers on toric surfaces fibred over A^1, and the worked
// family T = (n,1), D = (1,0) over P^1 x A^1.

#include "toricfib/criterion.hpp"

#include <vector>

namespace toricfib {

/// A 2-dimensional fan in the half-plane x_1 >= 0 whose rays are ordered
/// clockwise from (0,1) and whose maximal cones are consecutive ray pairs.
class SurfaceModel {
public:
    explicit SurfaceModel(FanPtr fan);

    const FanPtr& fan() const { return fan_; }
    const std::vector<LatticeVector>& ordered_rays() const { return ordered_; }

    /// The curve of `ray` is complete iff it has a neighbour on both sides.
    bool is_complete_curve(const LatticeVector& ray) const;

    /// Fan with `ray` removed and its two neighbouring cones merged.
    SurfaceModel contract(const LatticeVector& ray) const;

private:
    FanPtr fan_;
    std::vector<LatticeVector> ordered_;
};

enum class NormalizingCone { Before, After };

/// D . C_ray, normalizing D to vanish on the cone before (or after) the ray.
Rational intersect(const SurfaceModel& model, const ToricDivisor& d, const LatticeVector& ray,
                   NormalizingCone side = NormalizingCone::Before);

struct ExampleTrace {
    std::vector<FanPtr> blowups; // standard fan, then after each subdivision
    SurfaceModel x;
    SurfaceModel y;
    SurfaceModel v;
    LatticeVector t;
    LatticeVector d;
};

/// Blow up (1,1), (2,1), ..., (n,1) on P^1 x A^1, then contract down to Y and V.
ExampleTrace example_models(const Integer& n);

struct ExampleReport {
    Integer n;
    Integer r;
    Rational eps;
    Rational a;               // a(D, V, 0)
    Rational d_dot_t;         // D . T~
    Rational k_theta_dot_t;   // (K_Y + Theta_Y) . T~
    bool a_matches = false;         // == 2/n
    bool d_dot_t_matches = false;   // == 1
    bool k_theta_matches = false;   // == -eps + 2r/n
    bool fires = false;
    bool coincidence = false; // fires <=> intersection < 0

    bool all_pass() const { return a_matches && d_dot_t_matches && k_theta_matches && coincidence; }
    friend bool operator==(const ExampleReport&, const ExampleReport&) = default;
};

ExampleReport example_verify(const Integer& n, const Integer& r, const Rational& eps);
/// Same, reusing the models of a previous example_models call.
ExampleReport example_verify(const ExampleTrace& trace, const Integer& r, const Rational& eps);

} // namespace toricfib
