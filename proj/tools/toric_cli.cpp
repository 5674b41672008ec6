// toric: command-line front end over the header library.
//
//   toric <command> --fan FAN.json [--divisor D.json] [options]
//
// Exit status: 0 ok, 1 usage, 2 invalid fan or malformed document,
// 3 precondition failed or resource cap exceeded.

#include "toric/io.hpp"
#include "toric/toric.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace toric;
using io::Json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string fan_path;
    std::string divisor_path;
    std::string out_path;
    std::size_t cap = kDefaultSubsetCap;
    int m_max = 10;
    std::vector<std::size_t> subset;
    bool check_oracle = false;
    bool best_effort = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream hex;
    for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

Json parse_json(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw io::FormatError("malformed " + what + " document: " + e.what());
    }
}

struct Job {
    Options opt;
    Json inputs = Json::object();
    Json warnings = Json::array();
    std::optional<Fan> fan;
    std::optional<Divisor> divisor;

    const Fan& load_fan() {
        if (fan) return *fan;
        if (opt.fan_path.empty()) throw UsageError("--fan is required");
        auto text = read_file(opt.fan_path);
        inputs["fan_sha256"] = sha256_hex(text);
        auto res = validate_fan(io::parse_fan(parse_json(text, "fan")));
        for (const auto& d : res.diagnostics)
            if (d.severity == Diagnostic::Severity::Warning) warnings.push_back(d.message);
        if (!res.ok()) throw ValidationFailure(res.summary());
        fan = *res.fan;
        return *fan;
    }

    const Divisor& load_divisor() {
        if (divisor) return *divisor;
        const Fan& f = load_fan();
        if (opt.divisor_path.empty()) throw UsageError("--divisor is required");
        auto text = read_file(opt.divisor_path);
        inputs["divisor_sha256"] = sha256_hex(text);
        Divisor d = io::parse_divisor(parse_json(text, "divisor"));
        if (d.size() != f.ray_count())
            throw io::FormatError("divisor has " + std::to_string(d.size()) + " coefficients, fan has " +
                                  std::to_string(f.ray_count()) + " rays");
        divisor = std::move(d);
        return *divisor;
    }
};

Json strings(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& q : v) out.push_back(to_string(q));
    return out;
}

Json decimals(const std::vector<Rational>& v) {
    Json out = Json::array();
    for (const auto& q : v) out.push_back(to_decimal(q));
    return out;
}

std::vector<Rational> as_rationals(const CohomologyVector& h) {
    std::vector<Rational> out;
    for (const auto& x : h) out.emplace_back(x);
    return out;
}

Json cones_json(const std::vector<RayMask>& cones) {
    Json out = Json::array();
    for (auto c : cones) out.push_back(io::mask_json(c));
    return out;
}

Json lineality_json(const std::vector<Vector>& basis) {
    Json out = Json::array();
    for (const auto& v : basis) out.push_back(strings(v));
    return out;
}

Json chamber_json(const ChamberLocation& loc) {
    return Json{{"sigma_rays", io::mask_json(loc.sigma.ray_set())},
                {"sigma_cones", cones_json(loc.sigma.max_cones)},
                {"degenerate", loc.sigma.degenerate()},
                {"lineality", lineality_json(loc.sigma.lineality)},
                {"I", io::mask_json(loc.strict_rays)},
                {"interior", loc.interior}};
}

// ---------------------------------------------------------------------------
// commands

Json cmd_validate(Job& job, int& status) {
    if (job.opt.fan_path.empty()) throw UsageError("--fan is required");
    auto text = read_file(job.opt.fan_path);
    job.inputs["fan_sha256"] = sha256_hex(text);
    auto res = validate_fan(io::parse_fan(parse_json(text, "fan")), {.primitivize = false});
    Json out{{"valid", res.ok()}, {"diagnostics", io::diagnostics_json(res.diagnostics)}};
    if (res.ok()) {
        out["fan"] = io::fan_json(*res.fan);
        out["complete"] = is_complete(*res.fan);
        out["simplicial"] = is_simplicial(*res.fan);
    }
    status = res.ok() ? 0 : 2;
    return out;
}

Json cmd_cohom(Job& job) {
    const auto& f = job.load_fan();
    const auto& d = job.load_divisor();
    auto h = h_all(f, d, job.opt.cap);
    Json out{{"h", strings(as_rationals(h))}};
    if (job.opt.check_oracle) {
        auto c = cech_oracle(f, d, job.opt.cap);
        out["oracle"] = strings(as_rationals(c));
        out["oracle_agrees"] = c == h;
    }
    return out;
}

Json cmd_euler(Job& job) {
    auto chi = euler_char(job.load_fan(), job.load_divisor(), job.opt.cap);
    return Json{{"chi", to_string(Rational(chi))}};
}

Json cmd_asym(Job& job) {
    auto h = hhat(job.load_fan(), job.load_divisor(), job.opt.cap);
    return Json{{"hhat", strings(h)}, {"hhat_decimal", decimals(h)}};
}

Json cmd_selfint(Job& job) {
    const auto& f = job.load_fan();
    const auto& d = job.load_divisor();
    auto [lhs, rhs] = asymptotic_rr_check(f, d, job.opt.cap);
    return Json{{"self_intersection", io::scalar_json(lhs)},
                {"alternating_hhat", io::scalar_json(rhs)},
                {"agrees", lhs == rhs}};
}

Json cmd_probe(Job& job) {
    const auto& f = job.load_fan();
    const auto& d = job.load_divisor();
    RayMask subset = f.all_rays();
    if (!job.opt.subset.empty()) {
        for (auto i : job.opt.subset)
            if (i >= f.ray_count()) throw UsageError("--subset index " + std::to_string(i) + " out of range");
        subset = mask_of(job.opt.subset);
    }
    Json rows = Json::array();
    for (const auto& row : ehrhart_probe(f, d, subset, job.opt.m_max))
        rows.push_back(Json{{"m", row.m},
                            {"count", to_string(Rational(row.count))},
                            {"scaled", to_string(row.scaled)},
                            {"scaled_decimal", to_decimal(row.scaled)}});
    Rational volume = normalized_volume(region(f, d, subset));
    return Json{{"subset", io::mask_json(subset)}, {"normalized_volume", io::scalar_json(volume)}, {"rows", rows}};
}

Json cmd_locate(Job& job) { return chamber_json(locate_chamber(job.load_fan(), job.load_divisor())); }

Json cmd_enumerate(Job& job) {
    const auto& f = job.load_fan();
    Json chambers = Json::array();
    for (const auto& g : enumerate_maximal_chambers(f, {job.opt.best_effort})) {
        auto sample = chamber_sample(f, g);
        chambers.push_back(Json{{"sigma_rays", io::mask_json(g.sigma.ray_set())},
                                {"sigma_cones", cones_json(g.sigma.max_cones)},
                                {"I", io::mask_json(g.outside)},
                                {"sample_divisor", strings(sample.coeffs)}});
    }
    return Json{{"count", chambers.size()}, {"chambers", chambers}};
}

Json cmd_ample(Job& job) {
    const auto& f = job.load_fan();
    const auto& d = job.load_divisor();
    auto rep = ample_via_asymptotics(f, d, job.opt.cap);
    bool direct = is_ample(f, d);
    Json chamber = nullptr;
    if (!polytope_vertices(f, d).empty()) chamber = chamber_json(locate_chamber(f, d));
    Json out{{"is_ample", direct},
             {"via_asymptotics", rep.neighborhood_vanishes},
             {"via_chamber", rep.ample},
             {"higher_vanish_at_d", rep.higher_vanish_at_d},
             {"perturbation_step", io::scalar_json(rep.step)},
             {"witness", rep.witness ? strings(rep.witness->coeffs) : Json(nullptr)},
             {"chamber", chamber},
             {"agreement", direct == rep.neighborhood_vanishes && direct == rep.ample}};
    return out;
}

void emit(const Job& job, const std::string& command, const Json& result) {
    Json report{{"tool", "toric"},
                {"version", kVersion},
                {"command", command},
                {"inputs", job.inputs},
                {"warnings", job.warnings},
                {"result", result}};
    std::string text = report.dump(2) + "\n";
    if (job.opt.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(job.opt.out_path, std::ios::binary);
        if (!out) throw UsageError("cannot write " + job.opt.out_path);
        out << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cohomology, asymptotic cohomology and GKZ chambers of toric varieties"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool needs_divisor) {
        sub->add_option("--fan", opt.fan_path, "fan JSON file")->required();
        if (needs_divisor) sub->add_option("--divisor", opt.divisor_path, "divisor JSON file")->required();
        sub->add_option("--cap", opt.cap, "maximum ray subset size for bounded-region enumeration")
            ->check(CLI::Range(1, 63));
        sub->add_option("--out", opt.out_path, "write the report here instead of stdout");
    };
    add_common(app.add_subcommand("validate", "strict fan validation with diagnostics"), false);
    auto* cohom = app.add_subcommand("cohom", "h^i(X, O(D)) for all i");
    add_common(cohom, true);
    cohom->add_flag("--check-oracle", opt.check_oracle, "cross-check against the Cech complex");
    add_common(app.add_subcommand("euler", "Euler characteristic"), true);
    add_common(app.add_subcommand("asym", "asymptotic cohomology hhat^i(D)"), true);
    add_common(app.add_subcommand("selfint", "top self-intersection (D^n)"), true);
    auto* probe = app.add_subcommand("probe", "lattice counts of mP_{D,I}");
    add_common(probe, true);
    probe->add_option("--mmax", opt.m_max, "largest multiple")->check(CLI::Range(1, kMaxProbeMultiple));
    probe->add_option("--subset", opt.subset, "ray indices of I (default: all rays)")->delimiter(',');
    add_common(app.add_subcommand("gkz-locate", "GKZ cone containing [D]"), true);
    auto* enumerate = app.add_subcommand("gkz-enumerate", "maximal GKZ chambers");
    add_common(enumerate, false);
    enumerate->add_flag("--best-effort", opt.best_effort, "allow the search in dimension >= 3");
    add_common(app.add_subcommand("ample", "ampleness by convexity, chamber and asymptotic vanishing"), true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    Job job{opt};
    try {
        Json result;
        int status = 0;
        if (command == "validate") result = cmd_validate(job, status);
        else if (command == "cohom") result = cmd_cohom(job);
        else if (command == "euler") result = cmd_euler(job);
        else if (command == "asym") result = cmd_asym(job);
        else if (command == "selfint") result = cmd_selfint(job);
        else if (command == "probe") result = cmd_probe(job);
        else if (command == "gkz-locate") result = cmd_locate(job);
        else if (command == "gkz-enumerate") result = cmd_enumerate(job);
        else if (command == "ample") result = cmd_ample(job);
        emit(job, command, result);
        return status;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const ValidationFailure& e) {
        std::cerr << e.what();
        return 2;
    } catch (const io::FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << '\n';
        return 3;
    } catch (const ResourceError& e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
