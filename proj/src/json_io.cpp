#include "toricfib/json_io.hpp"

#include <stdexcept>

namespace toricfib {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

void check_schema(const Json& j, std::string_view kind) {
    if (!j.is_object()) throw std::invalid_argument("report must be a JSON object");
    if (field(j, "schema_version").get<int>() != kSchemaVersion) {
        throw std::invalid_argument("unsupported schema_version");
    }
    if (field(j, "kind").get<std::string>() != kind) {
        throw std::invalid_argument("expected a \"" + std::string(kind) + "\" report");
    }
}

Json header(std::string_view kind) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = std::string(kind);
    return j;
}

std::size_t size_from_json(const Json& j) {
    const Integer z = integer_from_json(j);
    if (z < 0 || !z.fits_ulong_p()) throw std::invalid_argument("expected a non-negative count");
    return z.get_ui();
}

} // namespace

Json to_json(const Integer& z) {
    if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
    return Json(z.get_str());
}

Integer integer_from_json(const Json& j) {
    if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) {
        const Rational q = parse_rational(j.get<std::string>());
        if (q.get_den() != 1) throw std::invalid_argument("expected an integer");
        return q.get_num();
    }
    throw std::invalid_argument("expected an integer");
}

Json to_json(const Rational& q) { return Json(to_string(q)); }

Rational rational_from_json(const Json& j) {
    if (!j.is_string()) throw std::invalid_argument("rationals must be p/q");
    return parse_rational(j.get<std::string>());
}

Json to_json(const LatticeVector& v) {
    Json arr = Json::array();
    for (const auto& e : v.entries()) arr.push_back(to_json(e));
    return arr;
}

LatticeVector vector_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("vectors must be integer arrays");
    std::vector<Integer> entries;
    for (const auto& e : j) entries.push_back(integer_from_json(e));
    return LatticeVector(std::move(entries));
}

Json to_json(const RayCoefficients& coeffs) {
    Json arr = Json::array();
    for (const auto& [ray, c] : coeffs) {
        Json e;
        e["ray"] = to_json(ray);
        e["coef"] = to_json(c);
        arr.push_back(std::move(e));
    }
    return arr;
}

RayCoefficients coefficients_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("coefficient lists must be arrays");
    RayCoefficients out;
    for (const auto& e : j) out.emplace_back(vector_from_json(field(e, "ray")), rational_from_json(field(e, "coef")));
    return out;
}

// ---------------------------------------------------------------------------

Json to_json(const CertificateReport& rep) {
    Json j = header("certificate");
    j["d"] = rep.d;
    j["r"] = to_json(rep.r);
    j["eps"] = to_json(rep.eps);
    j["eps_prime"] = to_json(rep.eps_prime);
    j["n"] = to_json(rep.n);
    j["l"] = to_json(rep.l);
    j["a"] = to_json(rep.a);
    j["gamma"] = to_json(rep.gamma);
    j["u"] = to_json(rep.u);
    j["lambda"] = to_json(rep.lambda);
    j["alphas"] = to_json(rep.alphas);
    j["betas"] = to_json(rep.betas);
    j["lhs"] = to_json(rep.lhs);
    j["rhs"] = to_json(rep.rhs);
    j["fires"] = rep.fires;
    Json s7;
    s7["applicable"] = rep.step7.applicable;
    s7["lhs_bound"] = rep.step7.lhs_bound;
    s7["beta_bound"] = rep.step7.beta_bound;
    s7["margin_bound"] = rep.step7.margin_bound;
    s7["all"] = rep.step7.all();
    j["step7"] = std::move(s7);
    j["paper_anchor"] = {
        {"gamma", "decomposition of l on V: coefficient of n (l_1 / n_1)"},
        {"alphas", "decomposition of l on V: horizontal coefficients"},
        {"a", "log discrepancy a(D,V,0) = gamma + sum alphas"},
        {"u", "(r - 1) * sum alphas"},
        {"lambda", "decomposition of n on W: coefficient of l (1 / gamma)"},
        {"betas", "decomposition of n on W: horizontal coefficients"},
        {"lhs", "eps - a - u"},
        {"rhs", "(r - 1) * sum gamma * beta_k"},
        {"fires", "lhs > rhs certifies T~ in N_sigma(K_Y + Theta_Y / A^1)"},
        {"eps_prime", "eps / (3 d r)"},
        {"step7", "explicit bounds claimed when a < eps_prime"},
    };
    return j;
}

CertificateReport certificate_from_json(const Json& j) {
    check_schema(j, "certificate");
    CertificateReport rep;
    rep.d = size_from_json(field(j, "d"));
    rep.r = integer_from_json(field(j, "r"));
    rep.eps = rational_from_json(field(j, "eps"));
    rep.eps_prime = rational_from_json(field(j, "eps_prime"));
    rep.n = vector_from_json(field(j, "n"));
    rep.l = vector_from_json(field(j, "l"));
    rep.a = rational_from_json(field(j, "a"));
    rep.gamma = rational_from_json(field(j, "gamma"));
    rep.u = rational_from_json(field(j, "u"));
    rep.lambda = rational_from_json(field(j, "lambda"));
    rep.alphas = coefficients_from_json(field(j, "alphas"));
    rep.betas = coefficients_from_json(field(j, "betas"));
    rep.lhs = rational_from_json(field(j, "lhs"));
    rep.rhs = rational_from_json(field(j, "rhs"));
    rep.fires = field(j, "fires").get<bool>();
    const Json& s7 = field(j, "step7");
    rep.step7.applicable = field(s7, "applicable").get<bool>();
    rep.step7.lhs_bound = field(s7, "lhs_bound").get<bool>();
    rep.step7.beta_bound = field(s7, "beta_bound").get<bool>();
    rep.step7.margin_bound = field(s7, "margin_bound").get<bool>();
    return rep;
}

Json to_json(const ScanSummary& s) {
    Json j = header("scan");
    j["d"] = s.d;
    j["r"] = to_json(s.r);
    j["eps"] = to_json(s.eps);
    j["eps_prime"] = to_json(s.eps_prime);
    j["bound"] = to_json(s.bound);
    j["instances"] = s.instances;
    j["epsilon_lc"] = s.epsilon_lc;
    j["not_epsilon_lc"] = s.not_epsilon_lc;
    j["fired"] = s.fired;
    j["step7_verified"] = s.step7_verified;
    Json failures = Json::array();
    for (const auto& f : s.failures) {
        Json e;
        e["n"] = to_json(f.n);
        e["l"] = to_json(f.l);
        e["reason"] = f.reason;
        failures.push_back(std::move(e));
    }
    j["failures"] = std::move(failures);
    j["paper_anchor"] = {
        {"epsilon_lc", "eps'-lc: bounded by external theorem"},
        {"not_epsilon_lc", "mld minimizer taken as D; certificate must fire"},
    };
    return j;
}

ScanSummary scan_from_json(const Json& j) {
    check_schema(j, "scan");
    ScanSummary s;
    s.d = size_from_json(field(j, "d"));
    s.r = integer_from_json(field(j, "r"));
    s.eps = rational_from_json(field(j, "eps"));
    s.eps_prime = rational_from_json(field(j, "eps_prime"));
    s.bound = integer_from_json(field(j, "bound"));
    s.instances = size_from_json(field(j, "instances"));
    s.epsilon_lc = size_from_json(field(j, "epsilon_lc"));
    s.not_epsilon_lc = size_from_json(field(j, "not_epsilon_lc"));
    s.fired = size_from_json(field(j, "fired"));
    s.step7_verified = size_from_json(field(j, "step7_verified"));
    for (const auto& e : field(j, "failures")) {
        s.failures.push_back({vector_from_json(field(e, "n")), vector_from_json(field(e, "l")),
                              field(e, "reason").get<std::string>()});
    }
    return s;
}

Json to_json(const ExampleReport& rep) {
    Json j = header("example");
    j["n"] = to_json(rep.n);
    j["r"] = to_json(rep.r);
    j["eps"] = to_json(rep.eps);
    j["a"] = to_json(rep.a);
    j["d_dot_t"] = to_json(rep.d_dot_t);
    j["k_theta_dot_t"] = to_json(rep.k_theta_dot_t);
    j["a_matches"] = rep.a_matches;
    j["d_dot_t_matches"] = rep.d_dot_t_matches;
    j["k_theta_matches"] = rep.k_theta_matches;
    j["fires"] = rep.fires;
    j["coincidence"] = rep.coincidence;
    j["all_pass"] = rep.all_pass();
    j["paper_anchor"] = {
        {"a", "a(D,V,0) = 2/n"},
        {"d_dot_t", "D . T~ = 1"},
        {"k_theta_dot_t", "(K_Y + Theta_Y) . T~ = -eps + 2r/n"},
        {"coincidence", "certificate fires iff the intersection number is negative"},
    };
    return j;
}

ExampleReport example_from_json(const Json& j) {
    check_schema(j, "example");
    ExampleReport rep;
    rep.n = integer_from_json(field(j, "n"));
    rep.r = integer_from_json(field(j, "r"));
    rep.eps = rational_from_json(field(j, "eps"));
    rep.a = rational_from_json(field(j, "a"));
    rep.d_dot_t = rational_from_json(field(j, "d_dot_t"));
    rep.k_theta_dot_t = rational_from_json(field(j, "k_theta_dot_t"));
    rep.a_matches = field(j, "a_matches").get<bool>();
    rep.d_dot_t_matches = field(j, "d_dot_t_matches").get<bool>();
    rep.k_theta_matches = field(j, "k_theta_matches").get<bool>();
    rep.fires = field(j, "fires").get<bool>();
    rep.coincidence = field(j, "coincidence").get<bool>();
    return rep;
}

Json to_json(const MldReport& rep) {
    Json j = header("mld");
    j["ambient_dim"] = rep.ambient_dim;
    j["maximal_cones"] = rep.maximal_cones;
    j["mld"] = to_json(rep.mld);
    j["minimizer"] = to_json(rep.minimizer);
    j["paper_anchor"] = {{"mld", "minimum of a(D,V,0) over toric divisors D over V"}};
    return j;
}

MldReport mld_from_json(const Json& j) {
    check_schema(j, "mld");
    MldReport rep;
    rep.ambient_dim = size_from_json(field(j, "ambient_dim"));
    rep.maximal_cones = size_from_json(field(j, "maximal_cones"));
    rep.mld = rational_from_json(field(j, "mld"));
    rep.minimizer = vector_from_json(field(j, "minimizer"));
    return rep;
}

// ---------------------------------------------------------------------------

Json to_json(const TowerSpec& spec) {
    Json j;
    j["p"] = spec.p;
    Json steps = Json::array();
    for (const auto& step : spec.steps) {
        Json s;
        if (step.kind == StepKind::Product) {
            s["kind"] = "product";
        } else {
            s["kind"] = "node";
            Json alpha = Json::object();
            for (const auto& [idx, e] : step.alpha_exponents) alpha[std::to_string(idx)] = to_json(e);
            s["alpha"] = std::move(alpha);
            Json t = Json::array();
            for (const auto& e : step.t_exponents) t.push_back(to_json(e));
            s["t"] = std::move(t);
        }
        steps.push_back(std::move(s));
    }
    j["steps"] = std::move(steps);
    return j;
}

TowerSpec tower_from_json(const Json& j) {
    TowerSpec spec;
    spec.p = size_from_json(field(j, "p"));
    const Json& steps = field(j, "steps");
    if (!steps.is_array()) throw std::invalid_argument("tower steps must be an array");
    for (const auto& s : steps) {
        const auto kind = field(s, "kind").get<std::string>();
        if (kind == "product") {
            spec.steps.push_back(TowerStep::product());
            continue;
        }
        if (kind != "node") throw std::invalid_argument("tower step kind must be \"product\" or \"node\"");
        TowerStep step;
        step.kind = StepKind::Node;
        if (s.contains("alpha")) {
            const Json& alpha = s.at("alpha");
            if (!alpha.is_object()) throw std::invalid_argument("alpha exponents must be an object");
            for (const auto& [key, value] : alpha.items()) {
                std::size_t idx = 0;
                try {
                    std::size_t used = 0;
                    idx = std::stoul(key, &used);
                    if (used != key.size()) throw std::invalid_argument(key);
                } catch (const std::exception&) {
                    throw std::invalid_argument("alpha exponent keys must be level indices");
                }
                step.alpha_exponents[idx] = integer_from_json(value);
            }
        }
        if (s.contains("t")) {
            for (const auto& e : s.at("t")) step.t_exponents.push_back(integer_from_json(e));
        }
        spec.steps.push_back(std::move(step));
    }
    return spec;
}

Json to_json(const GermData& germ) {
    Json j;
    Json c = Json::array();
    for (const auto& e : germ.c) c.push_back(to_json(e));
    j["c"] = std::move(c);
    j["at_boundary"] = germ.at_boundary;
    return j;
}

GermData germ_from_json(const Json& j) {
    GermData g;
    for (const auto& e : field(j, "c")) g.c.push_back(integer_from_json(e));
    g.at_boundary = field(j, "at_boundary").get<bool>();
    return g;
}

FanFile fan_from_json(const Json& j) {
    const std::size_t dim = size_from_json(field(j, "ambient_dim"));
    std::vector<Cone> cones;
    for (const auto& c : field(j, "cones")) {
        std::vector<LatticeVector> rays;
        for (const auto& r : c) {
            auto v = vector_from_json(r);
            if (v.dim() != dim) throw std::invalid_argument("ray length does not match ambient_dim");
            rays.push_back(std::move(v));
        }
        cones.emplace_back(std::move(rays), dim);
    }
    FanFile out{std::make_shared<const Fan>(dim, std::move(cones)), std::nullopt};
    if (j.contains("boundary")) out.boundary = ToricDivisor(out.fan, coefficients_from_json(j.at("boundary")));
    return out;
}

Json to_json(const Fan& fan) {
    Json j;
    j["ambient_dim"] = fan.ambient_dim();
    Json cones = Json::array();
    for (const auto& c : fan.maximal_cones()) {
        Json rays = Json::array();
        for (const auto& r : c.rays()) rays.push_back(to_json(r));
        cones.push_back(std::move(rays));
    }
    j["cones"] = std::move(cones);
    return j;
}

InstanceFile instance_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("instance file must be a JSON object");
    InstanceFile f;
    if (j.contains("d")) f.d = size_from_json(j.at("d"));
    if (j.contains("r")) f.r = integer_from_json(j.at("r"));
    if (j.contains("eps")) f.eps = rational_from_json(j.at("eps"));
    if (j.contains("n")) f.n = vector_from_json(j.at("n"));
    if (j.contains("l")) f.l = vector_from_json(j.at("l"));
    if (j.contains("tower")) f.tower = tower_from_json(j.at("tower"));
    if (j.contains("germ")) f.germ = germ_from_json(j.at("germ"));
    if (f.d) {
        if (f.n && f.n->dim() != *f.d) throw std::invalid_argument("n must have length d");
        if (f.l && f.l->dim() != *f.d) throw std::invalid_argument("l must have length d");
    }
    return f;
}

} // namespace toricfib
