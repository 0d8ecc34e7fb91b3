#pragma once

#include "toricfib/exactmath.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace toricfib {

/// A simplicial rational cone spanned by primitive, linearly independent rays.
class Cone {
public:
    Cone(std::vector<LatticeVector> rays, std::size_t ambient_dim);

    const std::vector<LatticeVector>& rays() const { return rays_; }
    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t dim() const { return rays_.size(); }
    bool has_ray(const LatticeVector& ray) const;

    /// Rays as a sorted list, for order-insensitive comparison.
    std::vector<LatticeVector> sorted_rays() const;

    /// Coefficients of x on the rays if x lies in the cone.
    std::optional<RationalVector> coordinates(const RationalVector& x) const;

    /// Cones are compared as sets of rays.
    friend bool operator==(const Cone& a, const Cone& b) { return a.sorted_rays() == b.sorted_rays(); }

private:
    std::vector<LatticeVector> rays_;
    std::size_t ambient_dim_;
};

/// Lattice index of the ray sublattice in its saturation; 1 iff the cone is smooth.
Integer multiplicity(const Cone& cone);

/// Trusted skips the pairwise face check, for cone lists that are fans by
/// construction.
enum class FanCheck { Full, Trusted };

/// A fan stored by its maximal cones, all simplicial.
class Fan {
public:
    /// Validates primitivity, simpliciality and (for up to 64 cones) that every
    /// pair of maximal cones meets in a common face.
    Fan(std::size_t ambient_dim, std::vector<Cone> maximal_cones, FanCheck check = FanCheck::Full);

    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::vector<Cone>& maximal_cones() const { return cones_; }
    /// All rays, deduplicated, in order of first appearance.
    const std::vector<LatticeVector>& rays() const { return rays_; }

    std::optional<std::size_t> ray_index(const LatticeVector& ray) const;
    bool has_ray(const LatticeVector& ray) const { return ray_index(ray).has_value(); }

    bool contains(const RationalVector& x) const;
    bool contains(const LatticeVector& x) const { return contains(RationalVector(x)); }

    /// Fans are equal when their maximal cones agree as sets of ray sets.
    friend bool operator==(const Fan& a, const Fan& b);

private:
    std::size_t ambient_dim_;
    std::vector<Cone> cones_;
    std::vector<LatticeVector> rays_;
    std::map<LatticeVector, std::size_t> index_;
};

using FanPtr = std::shared_ptr<const Fan>;

/// Largest fan size for which face compatibility is checked eagerly.
inline constexpr std::size_t kFaceCheckLimit = 64;

/// True when the two simplicial cones intersect exactly in the cone over
/// their common rays. Decided by an exact feasibility LP.
bool meet_in_common_face(const Cone& a, const Cone& b);

/// The fan over A^1 whose maximal cones are spanned by `vertical` and every
/// (d-1)-subset of {e_2, ..., e_d, c}, c = -(e_2 + ... + e_d).
Fan fibration_fan(std::size_t d, const LatticeVector& vertical);

/// P^{d-1} x A^1 with projection to the first coordinate: fibration_fan(d, e_1).
Fan standard_fibration_fan(std::size_t d);

/// The horizontal rays e_2, ..., e_d, c in that order.
std::vector<LatticeVector> horizontal_rays(std::size_t d);

struct ContainingCone {
    Cone cone;
    RationalVector coefficients; // strictly positive, aligned with cone.rays()
};

/// The smallest cone of the fan containing l, with the coefficients of l on its rays.
ContainingCone smallest_containing_cone(const Fan& fan, const LatticeVector& l);

/// Star subdivision at the primitive vector l. Throws "already extracted" if l
/// is already a ray.
Fan star_subdivide(const Fan& fan, const LatticeVector& l);

/// A recorded star subdivision: fine == star_subdivide(coarse, ray).
struct Subdivision {
    FanPtr coarse;
    FanPtr fine;
    LatticeVector ray;
};

Subdivision subdivide(FanPtr coarse, const LatticeVector& l);

} // namespace toricfib
