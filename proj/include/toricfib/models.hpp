#pragma once

// Fibration models over A^1 attached to a pair of toric valuations n (T) and
// l (D) over the origin:
//
//   V  the Mori fibre space whose fibre over the origin is supported on T,
//   Y  V with D extracted (star subdivision at l),
//   W  the Mori fibre space for D,
//   U  W with T extracted.

#include "toricfib/toricdiv.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace toricfib {

enum class ModelKind { X, V, Y, W, U };

std::string_view to_string(ModelKind kind);

struct FibrationModel {
    FanPtr fan;
    LatticeVector distinguished_ray;
    ModelKind kind;
};

using RayCoefficients = std::vector<std::pair<LatticeVector, Rational>>;

Rational sum_of(const RayCoefficients& coeffs);

/// Decomposition data of l on V (gamma, alphas) and of n on W (lambda, betas).
struct DecompositionData {
    Rational gamma;
    RayCoefficients alphas;
    Rational a;
    Rational u;
    Rational lambda;
    RayCoefficients betas;

    friend bool operator==(const DecompositionData&, const DecompositionData&) = default;
};

/// The standard fibration P^{d-1} x A^1.
FibrationModel model_X(std::size_t d);

/// V for the primitive vector n (n_1 > 0).
FibrationModel model_V(std::size_t d, const LatticeVector& n);

struct YModel {
    FibrationModel v;
    FibrationModel y;    // distinguished ray = l
    Subdivision psi;     // V -> Y
    LatticeVector n;
    LatticeVector l;
    Integer r;
    Rational eps;
    ToricDivisor theta;  // (1 - eps) D + psi^*(r S_V)
    DecompositionData data; // lambda and betas left at zero
};

YModel model_Y(const FibrationModel& v, const LatticeVector& l, const Integer& r, const Rational& eps);

struct WUModel {
    FibrationModel w;
    FibrationModel u;   // distinguished ray = n
    Subdivision pi;     // W -> U
    Rational lambda;
    RayCoefficients betas;
};

WUModel model_W_U(std::size_t d, const LatticeVector& l, const LatticeVector& n);

struct IdentityCheck {
    bool holds = false;
    std::optional<RationalVector> witness;
};

struct IdentityReport {
    IdentityCheck crepant;        // K_Y + (1 - a) D == psi^* K_V
    IdentityCheck log_canonical;  // K_Y + (1 - a) D + psi^* S_V ~_Q 0 over A^1
    IdentityCheck fibre;          // n_1 T + l_1 D ~_Q 0 over A^1
    bool all() const { return crepant.holds && log_canonical.holds && fibre.holds; }
};

IdentityReport verify_step2_identities(const YModel& y);

struct CanonicalClass {
    Rational c;             // (eps - a - u) n_1 / l_1
    RationalVector witness; // character realizing the equivalence
    ToricDivisor residue;   // must be zero
};

/// K_Y + Theta_Y ~_Q c T + (r - 1) S_V~ over A^1. Throws std::logic_error if
/// the identity fails.
CanonicalClass step3_class(const YModel& y);

} // namespace toricfib
