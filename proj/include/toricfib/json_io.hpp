#pragma once

// JSON encoding of inputs and reports. Rationals are always "p/q" strings
// (or "p" for integers), never floats. Every report carries
// "schema_version": 1.

#include "toricfib/criterion.hpp"
#include "toricfib/surface.hpp"
#include "toricfib/towers.hpp"

#include <json.hpp>

#include <optional>

namespace toricfib {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const Integer& z);
Integer integer_from_json(const Json& j);
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json to_json(const LatticeVector& v);
LatticeVector vector_from_json(const Json& j);
Json to_json(const RayCoefficients& coeffs);
RayCoefficients coefficients_from_json(const Json& j);

/// Certificate / scan / example report documents.
Json to_json(const CertificateReport& rep);
CertificateReport certificate_from_json(const Json& j);
Json to_json(const ScanSummary& summary);
ScanSummary scan_from_json(const Json& j);
Json to_json(const ExampleReport& rep);
ExampleReport example_from_json(const Json& j);

struct MldReport {
    std::size_t ambient_dim = 0;
    std::size_t maximal_cones = 0;
    Rational mld;
    LatticeVector minimizer;
    friend bool operator==(const MldReport&, const MldReport&) = default;
};
Json to_json(const MldReport& rep);
MldReport mld_from_json(const Json& j);

/// Tower schema: {"p": int, "steps": [{"kind": "product"} |
/// {"kind": "node", "alpha": {"2": m_2, ...}, "t": [n_1, ..., n_p]}]}.
Json to_json(const TowerSpec& spec);
TowerSpec tower_from_json(const Json& j);
Json to_json(const GermData& germ);
GermData germ_from_json(const Json& j);

/// Fan schema: {"ambient_dim": d, "cones": [[ray, ...], ...],
/// optional "boundary": [{"ray": [...], "coef": "p/q"}, ...]}.
struct FanFile {
    FanPtr fan;
    std::optional<ToricDivisor> boundary;
};
FanFile fan_from_json(const Json& j);
Json to_json(const Fan& fan);

/// Instance schema for certify: "d", "r", "eps", "n", "l"; all optional here so
/// that flags can fill gaps. Vector lengths are checked against d.
struct InstanceFile {
    std::optional<std::size_t> d;
    std::optional<Integer> r;
    std::optional<Rational> eps;
    std::optional<LatticeVector> n;
    std::optional<LatticeVector> l;
    std::optional<TowerSpec> tower;
    std::optional<GermData> germ;
};
InstanceFile instance_from_json(const Json& j);

} // namespace toricfib
