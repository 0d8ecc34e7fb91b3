#include "toricfib/fan.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace toricfib {

namespace {

// Phase-one simplex with Bland's rule: is {z >= 0 : A z = b} non-empty?
bool feasible(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t m = a.size();
    if (m == 0) return true;
    const std::size_t n = a.front().size();
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < 0) {
            for (auto& x : a[i]) x = -x;
            b[i] = -b[i];
        }
    }
    const std::size_t cols = n + m;
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols + 1));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1;
        t[i][cols] = b[i];
        basis[i] = n + i;
    }
    std::vector<Rational> cost(cols + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) cost[j] -= t[i][j];
        cost[cols] -= t[i][cols];
    }

    for (;;) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            const Rational ratio = t[i][cols] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) break; // unbounded direction; cannot happen for a bounded phase-one objective
        const Rational piv = t[leave][enter];
        for (auto& x : t[leave]) x /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const Rational f = t[i][enter];
            for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
        }
        if (cost[enter] != 0) {
            const Rational f = cost[enter];
            for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }
    return cost[cols] == 0;
}

} // namespace

Cone::Cone(std::vector<LatticeVector> rays, std::size_t ambient_dim)
    : rays_(std::move(rays)), ambient_dim_(ambient_dim) {
    if (rays_.empty()) throw std::invalid_argument("cone needs at least one ray");
    for (const auto& r : rays_) {
        if (r.dim() != ambient_dim_) throw std::invalid_argument("ray dimension mismatch");
        if (!is_primitive(r)) throw std::invalid_argument("cone ray " + to_string(r) + " is not primitive");
    }
    if (!linearly_independent(rays_)) throw std::invalid_argument("cone rays are not linearly independent");
}

bool Cone::has_ray(const LatticeVector& ray) const {
    return std::find(rays_.begin(), rays_.end(), ray) != rays_.end();
}

std::vector<LatticeVector> Cone::sorted_rays() const {
    auto out = rays_;
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<RationalVector> Cone::coordinates(const RationalVector& x) const {
    auto c = solve_in_basis(rays_, x);
    if (!c) return std::nullopt;
    for (std::size_t i = 0; i < c->dim(); ++i) {
        if ((*c)[i] < 0) return std::nullopt;
    }
    return c;
}

Integer multiplicity(const Cone& cone) { return sublattice_index(cone.rays()); }

bool meet_in_common_face(const Cone& a, const Cone& b) {
    // Infeasibility of: sum x_i u_i - sum y_j w_j = 0, x, y >= 0, with unit mass
    // on the rays that are not shared.
    const auto& u = a.rays();
    const auto& w = b.rays();
    const std::size_t d = a.ambient_dim();
    const std::size_t n = u.size() + w.size();
    std::vector<std::vector<Rational>> rows(d + 1, std::vector<Rational>(n));
    std::vector<Rational> rhs(d + 1);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < u.size(); ++j) rows[i][j] = u[j][i];
        for (std::size_t j = 0; j < w.size(); ++j) rows[i][u.size() + j] = -w[j][i];
    }
    bool any_private = false;
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (!b.has_ray(u[j])) {
            rows[d][j] = 1;
            any_private = true;
        }
    }
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (!a.has_ray(w[j])) {
            rows[d][u.size() + j] = 1;
            any_private = true;
        }
    }
    if (!any_private) return true;
    rhs[d] = 1;
    return !feasible(std::move(rows), std::move(rhs));
}

// ---------------------------------------------------------------------------

Fan::Fan(std::size_t ambient_dim, std::vector<Cone> maximal_cones, FanCheck check)
    : ambient_dim_(ambient_dim), cones_(std::move(maximal_cones)) {
    if (ambient_dim_ == 0) throw std::invalid_argument("ambient dimension must be positive");
    if (cones_.empty()) throw std::invalid_argument("fan needs at least one cone");
    for (const auto& c : cones_) {
        if (c.ambient_dim() != ambient_dim_) throw std::invalid_argument("cone dimension mismatch");
        for (const auto& r : c.rays()) {
            if (!index_.contains(r)) {
                index_.emplace(r, rays_.size());
                rays_.push_back(r);
            }
        }
    }
    if (check == FanCheck::Full && cones_.size() <= kFaceCheckLimit) {
        for (std::size_t i = 0; i < cones_.size(); ++i) {
            for (std::size_t j = i + 1; j < cones_.size(); ++j) {
                if (cones_[i] == cones_[j]) throw std::invalid_argument("duplicate maximal cone");
                if (!meet_in_common_face(cones_[i], cones_[j])) {
                    throw std::invalid_argument("maximal cones do not meet in a common face");
                }
            }
        }
    }
}

std::optional<std::size_t> Fan::ray_index(const LatticeVector& ray) const {
    const auto it = index_.find(ray);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool Fan::contains(const RationalVector& x) const {
    return std::any_of(cones_.begin(), cones_.end(),
                       [&](const Cone& c) { return c.coordinates(x).has_value(); });
}

bool operator==(const Fan& a, const Fan& b) {
    if (a.ambient_dim_ != b.ambient_dim_ || a.cones_.size() != b.cones_.size()) return false;
    auto keys = [](const Fan& f) {
        std::vector<std::vector<LatticeVector>> out;
        for (const auto& c : f.cones_) out.push_back(c.sorted_rays());
        std::sort(out.begin(), out.end());
        return out;
    };
    return keys(a) == keys(b);
}

// ---------------------------------------------------------------------------

std::vector<LatticeVector> horizontal_rays(std::size_t d) {
    if (d < 2) throw std::invalid_argument("fibration fans need d >= 2");
    std::vector<LatticeVector> out;
    for (std::size_t i = 1; i < d; ++i) out.push_back(LatticeVector::unit(d, i));
    LatticeVector c(d);
    for (std::size_t i = 1; i < d; ++i) c[i] = -1;
    out.push_back(std::move(c));
    return out;
}

Fan fibration_fan(std::size_t d, const LatticeVector& vertical) {
    if (d < 2) throw std::invalid_argument("fibration fans need d >= 2");
    if (vertical.dim() != d) throw std::invalid_argument("vertical ray has wrong dimension");
    if (vertical[0] == 0) throw std::invalid_argument("vertical ray must leave the hyperplane x_1 = 0");
    const auto horizontal = horizontal_rays(d);
    std::vector<Cone> cones;
    // One cone per omitted horizontal ray, omitting c first.
    for (std::size_t k = horizontal.size(); k-- > 0;) {
        std::vector<LatticeVector> rays{vertical};
        for (std::size_t j = 0; j < horizontal.size(); ++j) {
            if (j != k) rays.push_back(horizontal[j]);
        }
        cones.emplace_back(std::move(rays), d);
    }
    return Fan(d, std::move(cones), FanCheck::Trusted);
}

Fan standard_fibration_fan(std::size_t d) {
    if (d < 2) throw std::invalid_argument("fibration fans need d >= 2");
    return fibration_fan(d, LatticeVector::unit(d, 0));
}

ContainingCone smallest_containing_cone(const Fan& fan, const LatticeVector& l) {
    if (l.dim() != fan.ambient_dim()) throw std::invalid_argument("vector has wrong dimension");
    if (l.is_zero()) throw std::invalid_argument("zero vector has no containing ray cone");
    for (const auto& cone : fan.maximal_cones()) {
        auto coords = cone.coordinates(RationalVector(l));
        if (!coords) continue;
        std::vector<LatticeVector> rays;
        std::vector<Rational> positive;
        for (std::size_t i = 0; i < coords->dim(); ++i) {
            if ((*coords)[i] > 0) {
                rays.push_back(cone.rays()[i]);
                positive.push_back((*coords)[i]);
            }
        }
        return {Cone(std::move(rays), fan.ambient_dim()), RationalVector(std::move(positive))};
    }
    throw std::invalid_argument("vector not in fan support");
}

Fan star_subdivide(const Fan& fan, const LatticeVector& l) {
    if (!is_primitive(l)) throw std::invalid_argument("subdivision vector must be primitive");
    if (fan.has_ray(l)) throw std::invalid_argument("already extracted");
    const auto tau = smallest_containing_cone(fan, l);
    std::vector<Cone> cones;
    for (const auto& sigma : fan.maximal_cones()) {
        const bool contains_tau = std::all_of(tau.cone.rays().begin(), tau.cone.rays().end(),
                                              [&](const LatticeVector& r) { return sigma.has_ray(r); });
        if (!contains_tau) {
            cones.push_back(sigma);
            continue;
        }
        // Replace sigma by l joined with each facet that misses a ray of tau.
        for (std::size_t drop = 0; drop < sigma.rays().size(); ++drop) {
            if (!tau.cone.has_ray(sigma.rays()[drop])) continue;
            std::vector<LatticeVector> rays;
            for (std::size_t j = 0; j < sigma.rays().size(); ++j) {
                if (j == drop) rays.push_back(l);
                else rays.push_back(sigma.rays()[j]);
            }
            cones.emplace_back(std::move(rays), fan.ambient_dim());
        }
    }
    return Fan(fan.ambient_dim(), std::move(cones), FanCheck::Trusted);
}

Subdivision subdivide(FanPtr coarse, const LatticeVector& l) {
    if (!coarse) throw std::invalid_argument("null fan");
    auto fine = std::make_shared<const Fan>(star_subdivide(*coarse, l));
    return {std::move(coarse), std::move(fine), l};
}

} // namespace toricfib
