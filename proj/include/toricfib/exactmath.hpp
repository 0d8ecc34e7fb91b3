#pragma once

// Exact integer and rational arithmetic plus the small amount of lattice
// linear algebra the rest of the library needs. Nothing here touches floating
// point.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace toricfib {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws std::invalid_argument on den == 0.
Rational make_rational(const Integer& num, const Integer& den = 1);

/// Parses "p/q" or "p". Anything else (decimals, exponents, blanks) is rejected
/// with std::invalid_argument("rationals must be p/q").
Rational parse_rational(std::string_view text);

/// Lowest-terms "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// True when the value is normalized (gcd(num, den) == 1 and den >= 1).
bool is_canonical(const Rational& q);

/// A point of Z^d.
class LatticeVector {
public:
    LatticeVector() = default;
    explicit LatticeVector(std::size_t dim) : entries_(dim, Integer(0)) {}
    explicit LatticeVector(std::vector<Integer> entries) : entries_(std::move(entries)) {}
    LatticeVector(std::initializer_list<long> entries);

    static LatticeVector unit(std::size_t dim, std::size_t index);

    std::size_t dim() const { return entries_.size(); }
    const Integer& operator[](std::size_t i) const { return entries_[i]; }
    Integer& operator[](std::size_t i) { return entries_[i]; }
    const std::vector<Integer>& entries() const { return entries_; }

    bool is_zero() const;

    LatticeVector& operator+=(const LatticeVector& other);
    LatticeVector& operator-=(const LatticeVector& other);
    LatticeVector& operator*=(const Integer& k);

    friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
    friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
    friend LatticeVector operator*(const Integer& k, LatticeVector a) { return a *= k; }
    friend LatticeVector operator-(LatticeVector a) { return a *= Integer(-1); }

    friend bool operator==(const LatticeVector& a, const LatticeVector& b);
    /// Lexicographic on entries; shorter vectors order first.
    friend std::strong_ordering operator<=>(const LatticeVector& a, const LatticeVector& b);

private:
    std::vector<Integer> entries_;
};

std::ostream& operator<<(std::ostream& os, const LatticeVector& v);
std::string to_string(const LatticeVector& v);

/// A point of Q^d.
class RationalVector {
public:
    RationalVector() = default;
    explicit RationalVector(std::size_t dim) : entries_(dim, Rational(0)) {}
    explicit RationalVector(std::vector<Rational> entries) : entries_(std::move(entries)) {}
    explicit RationalVector(const LatticeVector& v);

    std::size_t dim() const { return entries_.size(); }
    const Rational& operator[](std::size_t i) const { return entries_[i]; }
    Rational& operator[](std::size_t i) { return entries_[i]; }
    const std::vector<Rational>& entries() const { return entries_; }

    bool is_zero() const;
    /// The lattice point this vector equals, if all entries are integral.
    std::optional<LatticeVector> as_lattice() const;

    RationalVector& operator+=(const RationalVector& other);
    RationalVector& operator-=(const RationalVector& other);
    RationalVector& operator*=(const Rational& k);

    friend RationalVector operator+(RationalVector a, const RationalVector& b) { return a += b; }
    friend RationalVector operator-(RationalVector a, const RationalVector& b) { return a -= b; }
    friend RationalVector operator*(const Rational& k, RationalVector a) { return a *= k; }

    friend bool operator==(const RationalVector& a, const RationalVector& b);

private:
    std::vector<Rational> entries_;
};

std::ostream& operator<<(std::ostream& os, const RationalVector& v);

Rational dot(const RationalVector& m, const LatticeVector& v);
Rational dot(const RationalVector& m, const RationalVector& v);

/// Sum of coeffs[i] * gens[i].
RationalVector combine(std::span<const LatticeVector> gens, const RationalVector& coeffs);

Integer gcd_of(const LatticeVector& v);
bool is_primitive(const LatticeVector& v);

/// v divided by the gcd of its entries. Throws on the zero vector.
LatticeVector primitive(const LatticeVector& v);

/// Rank of the vectors over Q.
std::size_t rank(std::span<const LatticeVector> vectors);
bool linearly_independent(std::span<const LatticeVector> vectors);

/// |det| of a square integer matrix given by its rows (or columns).
Integer abs_det(std::span<const LatticeVector> rows);

/// Unique coefficients c with sum c_i * gens[i] == target, or nullopt if the
/// target is outside the span. Throws std::invalid_argument when the
/// generators are dependent.
std::optional<RationalVector> solve_in_basis(std::span<const LatticeVector> gens,
                                             const RationalVector& target);
std::optional<RationalVector> solve_in_basis(std::span<const LatticeVector> gens,
                                             const LatticeVector& target);

/// Some solution x of rows * x == rhs (free variables set to zero), or nullopt
/// if the system is inconsistent.
std::optional<RationalVector> solve_linear_system(std::span<const LatticeVector> rows,
                                                  std::span<const Rational> rhs,
                                                  std::size_t unknowns);

/// Diagonal of a Smith-type diagonalization of the matrix whose columns are
/// gens, together with the unimodular column transform. Only diagonality is
/// guaranteed, not the divisibility chain.
struct Diagonalization {
    std::vector<Integer> diagonal;            // length = number of generators, all > 0
    std::vector<std::vector<Integer>> column; // k x k, gens * column is diagonal after row ops
};
Diagonalization diagonalize(std::span<const LatticeVector> gens);

/// Index of the sublattice spanned by gens inside the saturation of its span.
/// Throws on dependent generators.
Integer sublattice_index(std::span<const LatticeVector> gens);

struct BoxPoint {
    LatticeVector point;
    RationalVector coefficients;
};

/// Every lattice point of the half-open parallelepiped {sum c_i gens[i] : 0 <= c_i < 1},
/// with coefficients. The zero point comes first; the rest are sorted
/// lexicographically by point.
std::vector<BoxPoint> parallelepiped_points(std::span<const LatticeVector> gens);

} // namespace toricfib
