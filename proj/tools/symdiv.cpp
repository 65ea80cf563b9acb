#include "symdiv/io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace symdiv;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

int print_checks(const std::vector<Check>& checks) {
    int failed = 0;
    for (const auto& c : checks) {
        if (c.pass) continue;
        ++failed;
        std::cout << "FAIL " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    }
    if (failed == 0) {
        std::cout << "all checks pass (" << checks.size() << ")\n";
        return kOk;
    }
    std::cout << failed << " of " << checks.size() << " checks fail\n";
    return kCheckFailed;
}

int cmd_validate(const std::string& path) {
    ConfigDocument doc = config_from_json(read_json_file(path));
    const AreaVector* w = doc.areas ? &*doc.areas : nullptr;
    std::vector<std::string> issues = validate(doc.config, w);
    if (issues.empty() && w) {
        Rational v = hypothesis_value(doc.config, *w);
        std::cout << "area(K+[D]) = " << to_string(v) << "\n";
        if (v >= 0) issues.push_back("area(K+[D]) = " + to_string(v) + " is not negative");
        if (doc.config.ambient().is_rational())
            for (auto& s : check_tree_of_spheres(doc.config, *w))
                if (std::find(issues.begin(), issues.end(), s) == issues.end() && s.find("K+[D]") == std::string::npos)
                    issues.push_back("tree of spheres: " + s);
    }
    if (!w) std::cout << "no areas given: symplectic checks skipped\n";
    for (const auto& s : issues) std::cout << "invalid: " << s << "\n";
    if (!issues.empty()) return kCheckFailed;
    std::cout << "valid: " << doc.config.components().size() << " components on " << doc.config.ambient().describe()
              << "\n";
    return kOk;
}

int cmd_certify(const std::string& path, bool dot, int64_t coeff_bound, const std::string& area_bound) {
    ConfigDocument doc = config_from_json(read_json_file(path));
    if (!doc.areas) throw ParseError("areas", "required for certification");
    CertifyOptions opt;
    opt.coeff_bound = coeff_bound;
    if (!area_bound.empty()) {
        try {
            opt.area_bound = parse_rational(area_bound);
        } catch (const std::invalid_argument& e) {
            throw ParseError("--area-bound", e.what());
        }
    }
    try {
        AffineRuledCertificate cert = certify_affine_ruled(doc.config, *doc.areas, opt);
        std::cout << certificate_to_json(cert).dump(2) << "\n";
        if (dot)
            for (const auto& [name, cfg] : pipeline_configs(cert)) std::cout << to_dot(cfg, name);
        return all_pass(cert.checks) ? kOk : kCheckFailed;
    } catch (const StageError& e) {
        std::cout << "certification failed at stage " << e.stage() << ": " << e.what() << "\n";
        return kCheckFailed;
    }
}

int cmd_cusp(int64_t p, int64_t q) {
    WeightSequence ws;
    try {
        ws = weight_sequence(p, q);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    int64_t s1 = 0, s2 = 0;
    std::cout << "W =";
    for (int64_t m : ws.weights) {
        std::cout << " " << m;
        s1 += m;
        s2 += m * m;
    }
    std::cout << "\n";
    std::cout << "sum m^2 = " << s2 << " (pq = " << p * q << ")\n";
    std::cout << "sum m = " << s1 << " (p+q-1 = " << p + q - 1 << ")\n";
    return (s2 == p * q && s1 == p + q - 1) ? kOk : kCheckFailed;
}

int cmd_inflate(int n, int g, const std::string& target, const std::string& verify_path) {
    if (!verify_path.empty()) {
        InflationPlan plan = plan_from_json(read_json_file(verify_path));
        auto checks = verify_plan(plan);
        Json j = plan_to_json(plan);
        std::cout << j.dump(2) << "\n";
        return print_checks(checks);
    }
    if (target.empty()) throw ParseError("--target", "required unless --verify-only is given");
    NormalizedVector v;
    std::stringstream ss(target);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            v.push_back(parse_rational(item));
        } catch (const std::invalid_argument& e) {
            throw ParseError("--target", e.what());
        }
    }
    if (static_cast<int>(v.size()) != n + 1)
        throw ParseError("--target", "expected " + std::to_string(n + 1) + " entries (delta_B, delta_1..delta_n)");
    if (g < 1) throw ParseError("--g", "base genus must be >= 1");
    auto viol = region_violations(v, 1);
    if (!viol.empty()) {
        std::cout << "target outside the region (g = 1):\n";
        for (const auto& s : viol) std::cout << "  violates " << s << "\n";
        return kCheckFailed;
    }
    InflationPlan plan = plan_kahler(v, g);
    Json j = plan_to_json(plan);
    std::cout << j.dump(2) << "\n";
    return j["verified"].get<bool>() ? kOk : kCheckFailed;
}

int cmd_check(const std::string& path) {
    Json j = read_json_file(path);
    const std::string schema = j.value("schema", "");
    if (schema == kCertificateSchema) {
        AffineRuledCertificate cert = certificate_from_json(j);
        auto checks = verify_certificate(cert);
        bool same = checks.size() == cert.checks.size();
        for (size_t i = 0; same && i < checks.size(); ++i)
            same = checks[i].name == cert.checks[i].name && checks[i].pass == cert.checks[i].pass;
        checks.push_back({"recorded verdicts match the re-run", same, ""});
        return print_checks(checks);
    }
    if (schema == kPlanSchema) return print_checks(verify_plan(plan_from_json(j)));
    throw ParseError("schema", "expected " + std::string(kCertificateSchema) + " or " + kPlanSchema);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symplectic divisor configurations: validation, cusp certificates, inflation plans"};
    app.require_subcommand(1);

    std::string path, target, verify_path, area_bound;
    bool dot = false;
    int64_t coeff_bound = kDefaultCoeffBound, p = 0, q = 0;
    int n = 0, g = 1;

    auto* validate_cmd = app.add_subcommand("validate", "check a configuration file");
    validate_cmd->add_option("file", path, "configuration JSON")->required();

    auto* certify_cmd = app.add_subcommand("certify", "run the reduction pipeline and emit a certificate");
    certify_cmd->add_option("file", path, "configuration JSON")->required();
    certify_cmd->add_flag("--dot", dot, "append DOT dual graphs of every pipeline stage");
    certify_cmd->add_option("--coeff-bound", coeff_bound, "coefficient bound for exceptional-class search");
    certify_cmd->add_option("--area-bound", area_bound, "area bound (p/q) for the exceptional pairing check");

    auto* cusp_cmd = app.add_subcommand("cusp", "weight sequence of a (p,q) cusp");
    cusp_cmd->add_option("p", p)->required();
    cusp_cmd->add_option("q", q)->required();

    auto* inflate_cmd = app.add_subcommand("inflate", "plan or replay an inflation to a normalized vector");
    inflate_cmd->add_option("--n", n, "number of exceptional generators");
    inflate_cmd->add_option("--g", g, "base genus");
    inflate_cmd->add_option("--target", target, "delta_B,delta_1,...,delta_n as rationals");
    inflate_cmd->add_option("--verify-only", verify_path, "replay a plan JSON instead of planning");

    auto* check_cmd = app.add_subcommand("check", "re-verify a certificate or plan document");
    check_cmd->add_option("file", path, "certificate or plan JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*validate_cmd) return cmd_validate(path);
        if (*certify_cmd) return cmd_certify(path, dot, coeff_bound, area_bound);
        if (*cusp_cmd) return cmd_cusp(p, q);
        if (*inflate_cmd) return cmd_inflate(n, g, target, verify_path);
        if (*check_cmd) return cmd_check(path);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCheckFailed;
    }
    return kInputError;
}
