#include "oracles.hpp"

#include "toricfib/criterion.hpp"

#include <doctest.h>

#include <random>

using namespace toricfib;

namespace {

Rational q(long num, long den = 1) { return make_rational(num, den); }

} // namespace

TEST_CASE("epsilon prime") {
    CHECK(epsilon_prime(3, 2, q(1, 2)) == q(1, 36));
    CHECK(epsilon_prime(2, 1, q(1)) == q(1, 6));
    CHECK(epsilon_prime(2, 1, q(1, 2)) == q(1, 12));
    CHECK_THROWS(epsilon_prime(1, 1, q(1)));
    CHECK_THROWS(epsilon_prime(2, 0, q(1)));
    CHECK_THROWS(epsilon_prime(2, 1, q(0)));
    CHECK_THROWS(epsilon_prime(2, 1, q(2)));
}

TEST_CASE("certificate on the surface family fires exactly when n > 2r/eps") {
    for (long n = 2; n <= 60; ++n) {
        for (long r = 1; r <= 4; ++r) {
            for (const Rational& eps : {q(1, 3), q(1, 2), q(1)}) {
                const auto rep = certify(2, r, eps, LatticeVector{n, 1}, LatticeVector{1, 0});
                CHECK(rep.a == q(2, n));
                CHECK(rep.gamma == q(1, n));
                CHECK(rep.lambda == n);
                CHECK(rep.lhs == eps - q(2, n) - q(r - 1, n));
                CHECK(rep.rhs == q(r - 1, n));
                CHECK(rep.fires == (Rational(n) > Rational(2 * r) / eps));
            }
        }
    }
}

TEST_CASE("certificate on a three-dimensional instance") {
    const auto rep = certify(3, 2, q(1, 2), LatticeVector{4, 1, 1}, LatticeVector{1, 0, 1});
    CHECK(rep.gamma == q(1, 4));
    CHECK(rep.a == q(3, 2));
    CHECK(rep.u == q(5, 4));
    CHECK(rep.lambda == 4);
    CHECK(sum_of(rep.betas) == 7);
    CHECK(rep.lhs == q(-9, 4));
    CHECK(rep.rhs == q(7, 4));
    CHECK_FALSE(rep.fires);
    CHECK_FALSE(rep.step7.applicable);
    CHECK_THROWS_WITH(verify_step7(rep), "explicit bounds only claimed below eps'");
}

TEST_CASE("explicit bounds hold below eps'") {
    const auto rep = certify(2, 1, q(1, 2), LatticeVector{30, 1}, LatticeVector{1, 0});
    CHECK(rep.step7.applicable);
    CHECK(verify_step7(rep));
    CHECK(rep.fires);

    const auto rep3 = certify(2, 3, q(1, 2), LatticeVector{200, 1}, LatticeVector{1, 0});
    CHECK(rep3.step7.applicable);
    CHECK(rep3.step7.lhs_bound);
    CHECK(rep3.step7.beta_bound);
    CHECK(rep3.step7.margin_bound);
    CHECK(rep3.fires);
}

TEST_CASE("random instances below eps' satisfy the bounds and fire") {
    std::mt19937_64 rng(2024);
    int applicable = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const std::size_t d = 2 + trial % 2;
        const auto n = oracle::random_vertical(rng, d, 90, 3);
        const auto v = model_V(d, n);
        const auto mld = toric_mld(*v.fan, ToricDivisor(v.fan));
        const Integer r = 1 + trial % 3;
        const Rational eps = q(1, 2);
        if (mld.value >= epsilon_prime(d, r, eps)) continue;
        ++applicable;
        const auto rep = certify(d, r, eps, n, mld.minimizer);
        CHECK(rep.step7.applicable);
        CHECK(verify_step7(rep));
        CHECK(rep.fires);
    }
    CHECK(applicable > 50);
}

TEST_CASE("scan vectors") {
    const auto v = scan_vectors(2, 1);
    REQUIRE(v.size() == 3);
    CHECK(v[0] == LatticeVector{1, -1});
    CHECK(v[1] == LatticeVector{1, 0});
    CHECK(v[2] == LatticeVector{1, 1});
    const auto w = scan_vectors(3, 3);
    for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i - 1] < w[i]);
    for (const auto& x : w) CHECK(is_primitive(x));
    CHECK_THROWS(scan_vectors(2, 0));
}

TEST_CASE("scan") {
    const auto s = scan(2, 1, q(1, 2), 20, 1);
    CHECK(s.instances == scan_vectors(2, 20).size());
    CHECK(s.epsilon_lc + s.not_epsilon_lc == s.instances);
    CHECK(s.failures.empty());
    CHECK(s.fired == s.not_epsilon_lc);
    CHECK(s.step7_verified == s.not_epsilon_lc);

    const auto tiny = scan(2, 1, q(1, 2), 1, 1);
    CHECK(tiny.instances == 3);
    CHECK(tiny.epsilon_lc == 3);

    const auto parallel = scan(2, 1, q(1, 2), 20, 4);
    CHECK(parallel == s);
    CHECK(scan(3, 2, q(1, 3), 5, 0) == scan(3, 2, q(1, 3), 5, 1));
}
