#pragma once

// Certificate engine for the negative-part criterion: given T (n) and D (l)
// over the origin, decide whether
//
//     eps - a - u  >  (r - 1) * sum_k gamma * beta_k
//
// which places the birational transform of T in N_sigma(K_Y + Theta_Y / A^1).
// The certificate is the sufficient inequality itself; N_sigma is never
// computed directly.

#include "toricfib/models.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace toricfib {

/// eps / (3 d r).
Rational epsilon_prime(std::size_t d, const Integer& r, const Rational& eps);

struct ExplicitBounds {
    bool applicable = false;   // a < eps'
    bool lhs_bound = false;    // eps - a - u >= eps - r a
    bool beta_bound = false;   // gamma beta_k < 2 a for every k
    bool margin_bound = false; // eps - r a > (r - 1)(d - 1) 2 a

    bool all() const { return lhs_bound && beta_bound && margin_bound; }
    friend bool operator==(const ExplicitBounds&, const ExplicitBounds&) = default;
};

struct CertificateReport {
    std::size_t d = 0;
    Integer r;
    Rational eps;
    Rational eps_prime;
    LatticeVector n;
    LatticeVector l;
    Rational a;
    Rational gamma;
    Rational u;
    Rational lambda;
    RayCoefficients alphas;
    RayCoefficients betas;
    Rational lhs;
    Rational rhs;
    bool fires = false;
    ExplicitBounds step7;

    friend bool operator==(const CertificateReport&, const CertificateReport&) = default;
};

CertificateReport certify(std::size_t d, const Integer& r, const Rational& eps,
                          const LatticeVector& n, const LatticeVector& l);

/// Conjunction of the three explicit bounds. Throws if a >= eps'.
bool verify_step7(const CertificateReport& report);

struct ScanFailure {
    LatticeVector n;
    LatticeVector l;
    std::string reason;
    friend bool operator==(const ScanFailure&, const ScanFailure&) = default;
};

struct ScanSummary {
    std::size_t d = 0;
    Integer r;
    Rational eps;
    Rational eps_prime;
    Integer bound;
    std::size_t instances = 0;
    std::size_t epsilon_lc = 0;     // V is eps'-lc; multiplicity bound is external
    std::size_t not_epsilon_lc = 0; // certificate attempted
    std::size_t fired = 0;
    std::size_t step7_verified = 0;
    std::vector<ScanFailure> failures;

    friend bool operator==(const ScanSummary&, const ScanSummary&) = default;
};

/// Every primitive n with 0 < n_1 <= bound and |n_i| <= bound, in
/// lexicographic order.
std::vector<LatticeVector> scan_vectors(std::size_t d, const Integer& bound);

/// Runs the two-case argument on every scanned n. `jobs` = 0 picks the
/// hardware concurrency; results do not depend on it.
ScanSummary scan(std::size_t d, const Integer& r, const Rational& eps, const Integer& bound,
                 std::size_t jobs = 1);

} // namespace toricfib
