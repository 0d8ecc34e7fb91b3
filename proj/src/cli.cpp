#include "toricfib/cli.hpp"

#include "toricfib/json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace toricfib::cli {

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) out.push_back(item);
    if (!text.empty() && text.back() == ',') out.emplace_back();
    return out;
}

namespace {

LatticeVector parse_vector(const std::string& text) {
    std::vector<Integer> entries;
    for (const auto& item : split_commas(text)) {
        const Rational q = [&] {
            try {
                return parse_rational(item);
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument("vectors must be comma-separated integers");
            }
        }();
        if (q.get_den() != 1 || item.find('/') != std::string::npos) {
            throw std::invalid_argument("vectors must be comma-separated integers");
        }
        entries.push_back(q.get_num());
    }
    if (entries.empty()) throw std::invalid_argument("vectors must be comma-separated integers");
    return LatticeVector(std::move(entries));
}

Integer parse_integer(const std::string& text) {
    const Rational q = parse_rational(text);
    if (q.get_den() != 1 || text.find('/') != std::string::npos) throw std::invalid_argument("expected an integer");
    return q.get_num();
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

struct CertifyArgs {
    std::string d, r, eps, n, l, in;
};

int cmd_certify(const CertifyArgs& a, std::ostream& out) {
    InstanceFile file;
    if (!a.in.empty()) file = instance_from_json(read_json_file(a.in));
    // File values win over flags.
    if (!file.d && !a.d.empty()) file.d = parse_integer(a.d).get_ui();
    if (!file.r && !a.r.empty()) file.r = parse_integer(a.r);
    if (!file.eps && !a.eps.empty()) file.eps = parse_rational(a.eps);
    if (!file.n && !a.n.empty()) file.n = parse_vector(a.n);
    if (!file.l && !a.l.empty()) file.l = parse_vector(a.l);
    if (!file.n) throw std::invalid_argument("missing n");
    if (!file.l) throw std::invalid_argument("missing l");
    if (!file.d) file.d = file.n->dim();
    if (!file.r) file.r = Integer(1);
    if (!file.eps) throw std::invalid_argument("missing eps");
    if (file.n->dim() != *file.d) throw std::invalid_argument("n must have length d");
    if (file.l->dim() != *file.d) throw std::invalid_argument("l must have length d");
    emit(out, to_json(certify(*file.d, *file.r, *file.eps, *file.n, *file.l)));
    return kSuccess;
}

struct MldArgs {
    bool fan_of_v = false;
    std::string d, n, fan;
};

int cmd_mld(const MldArgs& a, std::ostream& out) {
    FanPtr fan;
    std::optional<ToricDivisor> boundary;
    if (!a.fan.empty()) {
        auto file = fan_from_json(read_json_file(a.fan));
        fan = file.fan;
        boundary = std::move(file.boundary);
    } else if (a.fan_of_v) {
        if (a.n.empty()) throw std::invalid_argument("missing n");
        const auto n = parse_vector(a.n);
        const std::size_t d = a.d.empty() ? n.dim() : parse_integer(a.d).get_ui();
        if (n.dim() != d) throw std::invalid_argument("n must have length d");
        fan = model_V(d, n).fan;
    } else {
        throw std::invalid_argument("mld needs --fan-of-v or --fan");
    }
    const ToricDivisor b = boundary ? *boundary : ToricDivisor(fan);
    const auto result = toric_mld(*fan, b);
    emit(out, to_json(MldReport{fan->ambient_dim(), fan->maximal_cones().size(), result.value, result.minimizer}));
    return kSuccess;
}

struct ExampleArgs {
    std::string n, r = "1", eps;
};

int cmd_example(const ExampleArgs& a, std::ostream& out) {
    const Integer n = parse_integer(a.n);
    const Integer r = parse_integer(a.r);
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    emit(out, to_json(example_verify(n, r, parse_rational(a.eps))));
    return kSuccess;
}

struct ScanArgs {
    std::string d, r = "1", eps, bound;
    std::size_t jobs = 0;
};

int cmd_scan(const ScanArgs& a, std::ostream& out) {
    std::size_t jobs = a.jobs;
    if (const char* env = std::getenv("TORICFIB_JOBS"); env != nullptr && *env != '\0') {
        jobs = parse_integer(env).get_ui();
    }
    const auto summary = scan(parse_integer(a.d).get_ui(), parse_integer(a.r), parse_rational(a.eps),
                              parse_integer(a.bound), jobs);
    emit(out, to_json(summary));
    return summary.failures.empty() ? kSuccess : kCounterexample;
}

int cmd_tower(const std::string& action, const std::string& in, std::ostream& out) {
    const auto file = instance_from_json(read_json_file(in));
    if (!file.tower) throw std::invalid_argument("missing tower");
    const TowerSpec& spec = *file.tower;
    Json j;
    j["schema_version"] = kSchemaVersion;
    if (action == "validate") {
        const auto diagnostics = validate(spec);
        j["kind"] = "tower-validate";
        j["valid"] = diagnostics.empty();
        j["diagnostics"] = diagnostics;
        j["notes"] = degeneracy_notes(spec);
        Json dims = Json::array();
        for (std::size_t level = 1; level <= spec.top_level(); ++level) dims.push_back(torus_dimension(spec, level));
        j["torus_dimensions"] = std::move(dims);
        emit(out, j);
        return kSuccess;
    }
    if (!file.germ) throw std::invalid_argument("missing germ");
    const auto diagnostics = validate(spec);
    if (!diagnostics.empty()) throw std::invalid_argument("invalid tower: " + diagnostics.front());
    const auto pulled = pullback_tower(spec, *file.germ);
    j["kind"] = "tower-pullback";
    j["germ"] = to_json(*file.germ);
    j["tower"] = to_json(pulled);
    Json exps = Json::array();
    for (std::size_t k = 0; k < pulled.steps.size(); ++k) {
        if (pulled.steps[k].kind != StepKind::Node) continue;
        exps.push_back({{"level", k + 2}, {"t_exponent", to_json(pulled.steps[k].t_exponents.front())}});
    }
    j["t_exponents"] = std::move(exps);
    j["paper_anchor"] = {{"t_exponent", "sum_j c_j n_j, or 0 off the boundary"}};
    emit(out, j);
    return kSuccess;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"toricfib: exact computations for toric fibrations over A^1"};
    app.require_subcommand(1);

    CertifyArgs certify_args;
    auto* certify_cmd = app.add_subcommand("certify", "Evaluate the negative-part certificate for (n, l)");
    certify_cmd->add_option("--d", certify_args.d, "Ambient dimension");
    certify_cmd->add_option("--r", certify_args.r, "Positive integer r (default 1)");
    certify_cmd->add_option("--eps", certify_args.eps, "Rational eps in (0,1], as p/q");
    certify_cmd->add_option("--n", certify_args.n, "Primitive vector of T, comma separated");
    certify_cmd->add_option("--l", certify_args.l, "Primitive vector of D, comma separated");
    certify_cmd->add_option("--in", certify_args.in, "Instance JSON file (wins over flags)");

    MldArgs mld_args;
    auto* mld_cmd = app.add_subcommand("mld", "Minimal log discrepancy of a toric fan");
    mld_cmd->add_flag("--fan-of-v", mld_args.fan_of_v, "Use the model V of --n");
    mld_cmd->add_option("--d", mld_args.d, "Ambient dimension");
    mld_cmd->add_option("--n", mld_args.n, "Primitive vector of T, comma separated");
    mld_cmd->add_option("--fan", mld_args.fan, "Fan JSON file");

    ExampleArgs example_args;
    auto* example_cmd = app.add_subcommand("example", "Verify the surface family T=(n,1), D=(1,0)");
    example_cmd->add_option("--n", example_args.n, "n >= 2")->required();
    example_cmd->add_option("--r", example_args.r, "Positive integer r (default 1)");
    example_cmd->add_option("--eps", example_args.eps, "Rational eps in (0,1]")->required();

    ScanArgs scan_args;
    auto* scan_cmd = app.add_subcommand("scan", "Run the certificate over all n up to a bound");
    scan_cmd->add_option("--d", scan_args.d, "Ambient dimension")->required();
    scan_cmd->add_option("--r", scan_args.r, "Positive integer r (default 1)");
    scan_cmd->add_option("--eps", scan_args.eps, "Rational eps in (0,1]")->required();
    scan_cmd->add_option("--bound", scan_args.bound, "Coordinate bound")->required();
    scan_cmd->add_option("--jobs", scan_args.jobs, "Worker threads (0 = all cores; TORICFIB_JOBS overrides)");

    std::string tower_action;
    std::string tower_in;
    auto* tower_cmd = app.add_subcommand("tower", "Validate or pull back a special toric tower");
    tower_cmd->add_option("action", tower_action, "validate | pullback")
        ->required()
        ->check(CLI::IsMember({"validate", "pullback"}));
    tower_cmd->add_option("--in", tower_in, "Tower JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }

    try {
        if (*certify_cmd) return cmd_certify(certify_args, out);
        if (*mld_cmd) return cmd_mld(mld_args, out);
        if (*example_cmd) return cmd_example(example_args, out);
        if (*scan_cmd) return cmd_scan(scan_args, out);
        if (*tower_cmd) return cmd_tower(tower_action, tower_in, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return kInputError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"toricfib"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace toricfib::cli
