#include "toricfib/criterion.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace toricfib {

Rational epsilon_prime(std::size_t d, const Integer& r, const Rational& eps) {
    if (d < 2) throw std::invalid_argument("d must be at least 2");
    if (r < 1) throw std::invalid_argument("r must be a positive integer");
    if (eps <= 0 || eps > 1) throw std::invalid_argument("eps must lie in (0, 1]");
    const Rational denom = Rational(3 * static_cast<long>(d)) * r;
    return Rational(eps / denom);
}

CertificateReport certify(std::size_t d, const Integer& r, const Rational& eps,
                          const LatticeVector& n, const LatticeVector& l) {
    CertificateReport rep;
    rep.d = d;
    rep.r = r;
    rep.eps = eps;
    rep.eps_prime = epsilon_prime(d, r, eps);
    rep.n = n;
    rep.l = l;

    const auto v = model_V(d, n);
    const auto y = model_Y(v, l, r, eps);
    const auto wu = model_W_U(d, l, n);

    rep.a = y.data.a;
    rep.gamma = y.data.gamma;
    rep.u = y.data.u;
    rep.alphas = y.data.alphas;
    rep.lambda = wu.lambda;
    rep.betas = wu.betas;
    if (rep.lambda * rep.gamma != 1) throw std::logic_error("lambda * gamma != 1");

    rep.lhs = rep.eps - rep.a - rep.u;
    rep.rhs = Rational(r - 1) * rep.gamma * sum_of(rep.betas);
    rep.fires = rep.lhs > rep.rhs;

    rep.step7.applicable = rep.a < rep.eps_prime;
    rep.step7.lhs_bound = rep.lhs >= rep.eps - Rational(r) * rep.a;
    rep.step7.beta_bound = std::all_of(rep.betas.begin(), rep.betas.end(), [&](const auto& kb) {
        return rep.gamma * kb.second < 2 * rep.a;
    });
    const Rational margin = Rational(r - 1) * Rational(static_cast<long>(d) - 1) * 2 * rep.a;
    rep.step7.margin_bound = rep.eps - Rational(r) * rep.a > margin;
    return rep;
}

bool verify_step7(const CertificateReport& report) {
    if (!(report.a < report.eps_prime)) throw std::invalid_argument("explicit bounds only claimed below eps'");
    return report.step7.all();
}

std::vector<LatticeVector> scan_vectors(std::size_t d, const Integer& bound) {
    if (d < 2) throw std::invalid_argument("d must be at least 2");
    if (bound < 1) throw std::invalid_argument("bound must be at least 1");
    std::vector<LatticeVector> out;
    LatticeVector v(d);
    v[0] = 1;
    for (std::size_t i = 1; i < d; ++i) v[i] = -bound;
    for (;;) {
        if (is_primitive(v)) out.push_back(v);
        std::size_t pos = d;
        while (pos-- > 0) {
            const Integer lo = pos == 0 ? Integer(1) : Integer(-bound);
            if (v[pos] < bound) {
                v[pos] += 1;
                break;
            }
            v[pos] = lo;
            if (pos == 0) return out;
        }
    }
}

namespace {

struct InstanceOutcome {
    bool epsilon_lc = false;
    bool fired = false;
    bool step7 = false;
    std::optional<ScanFailure> failure;
};

InstanceOutcome run_instance(std::size_t d, const Integer& r, const Rational& eps, const Rational& eps_prime,
                             const LatticeVector& n) {
    InstanceOutcome out;
    const auto v = model_V(d, n);
    const auto mld = toric_mld(*v.fan, ToricDivisor(v.fan));
    if (mld.value >= eps_prime) {
        out.epsilon_lc = true;
        return out;
    }
    const LatticeVector& l = mld.minimizer;
    if (l[0] <= 0) {
        out.failure = ScanFailure{n, l, "minimizer does not lie over the origin"};
        return out;
    }
    const auto rep = certify(d, r, eps, n, l);
    out.fired = rep.fires;
    out.step7 = verify_step7(rep);
    if (!rep.fires) out.failure = ScanFailure{n, l, "certificate did not fire"};
    else if (!out.step7) out.failure = ScanFailure{n, l, "explicit bounds failed"};
    return out;
}

} // namespace

ScanSummary scan(std::size_t d, const Integer& r, const Rational& eps, const Integer& bound, std::size_t jobs) {
    ScanSummary summary;
    summary.d = d;
    summary.r = r;
    summary.eps = eps;
    summary.eps_prime = epsilon_prime(d, r, eps);
    summary.bound = bound;

    const auto vectors = scan_vectors(d, bound);
    std::vector<InstanceOutcome> outcomes(vectors.size());
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min(jobs, std::max<std::size_t>(1, vectors.size()));

    auto work = [&](std::size_t worker) {
        for (std::size_t i = worker; i < vectors.size(); i += jobs) {
            try {
                outcomes[i] = run_instance(d, r, eps, summary.eps_prime, vectors[i]);
            } catch (const std::exception& e) {
                outcomes[i].failure = ScanFailure{vectors[i], LatticeVector{}, e.what()};
            }
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    }

    summary.instances = vectors.size();
    for (auto& o : outcomes) {
        if (o.epsilon_lc) ++summary.epsilon_lc;
        else ++summary.not_epsilon_lc;
        if (o.fired) ++summary.fired;
        if (o.step7) ++summary.step7_verified;
        if (o.failure) summary.failures.push_back(std::move(*o.failure));
    }
    return summary;
}

} // namespace toricfib
