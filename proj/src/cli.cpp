#include "bt/cli.hpp"

#include "bt/errors.hpp"
#include "bt/io.hpp"
#include "bt/svg.hpp"
#include "bt/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace bt {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
}

// ---------------------------------------------------------------- kottwitz

struct KottwitzArgs {
    int n = 0, d = 0;
    bool classify = false, hasse = false;
    std::string svg, json_path;
};

int cmd_kottwitz(const KottwitzArgs& a, std::ostream& out)
{
    if (a.n < 2 || a.n > 16) throw UsageError("--n must be between 2 and 16");
    if (a.d < 1 || a.d >= a.n) throw UsageError("--d must satisfy 0 < d < n");
    HodgeDatum h(a.n, a.d);
    auto S = enumerate_kottwitz(h);

    if (a.classify) {
        out << std::left << std::setw(40) << "newton" << std::setw(7) << "basic" << std::setw(6) << "hn" << std::setw(4)
            << "sr" << "dim\n";
        for (const auto& v : S) {
            out << std::setw(40) << v.str() << std::setw(7) << (is_basic(v) ? "yes" : "no") << std::setw(6)
                << (is_hn_decomposable(v, h) ? "yes" : "no") << std::setw(4)
                << (is_strongly_regular(v, h) ? "yes" : "no") << stratum_dim(v, h) << "\n";
        }
    } else {
        for (const auto& v : S) out << v.str() << "\n";
    }
    if (a.hasse)
        for (auto [lo, hi] : hasse_edges(S)) out << S[lo].str() << " < " << S[hi].str() << "\n";

    if (!a.json_path.empty()) {
        json j;
        j["n"] = a.n;
        j["d"] = a.d;
        json elems = json::array();
        for (const auto& v : S)
            elems.push_back(json{{"slopes", newton_to_json(v)},
                                 {"basic", is_basic(v)},
                                 {"hn_decomposable", is_hn_decomposable(v, h)},
                                 {"strongly_regular", is_strongly_regular(v, h)},
                                 {"stratum_dim", stratum_dim(v, h)}});
        j["elements"] = elems;
        j["hasse"] = hasse_to_json(S);
        write_file(a.json_path, j.dump(2) + "\n");
    }
    if (!a.svg.empty()) write_file(a.svg, polygons_svg(h, S));
    return kExitOk;
}

// ---------------------------------------------------------------- retract

struct RetractArgs {
    std::string point, config;
    bool apartment_only = false;
};

int cmd_retract(const RetractArgs& a, std::ostream& out, std::ostream& err)
{
    json input;
    RetractionConfig cfg;
    try {
        input = read_json_file(a.point);
        if (!a.config.empty()) cfg = config_from_json(read_json_file(a.config));
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(e.what());
    } catch (const Error& e) {
        throw UsageError(e.what());
    }

    try {
        if (a.apartment_only) {
            TropPlueckerVector tp;
            try {
                tp = has_trop(input) ? trop_from_json(input) : trop_pluecker(point_from_json(input));
            } catch (const nlohmann::json::exception& e) {
                throw UsageError(e.what());
            } catch (const ParseError& e) {
                throw UsageError(e.what());
            }
            auto cert = apartment_certificate(tp);
            json j;
            j["coords"] = certificate_to_json(cert)["coords"];
            j["certificate"] = certificate_to_json(cert);
            out << j.dump(2) << "\n";
            return kExitOk;
        }
        GrassPoint x;
        try {
            x = point_from_json(input);
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(e.what());
        } catch (const ParseError& e) {
            throw UsageError(e.what());
        }
        out << retraction_to_json(global_retract_full(x, cfg)).dump(2) << "\n";
        return kExitOk;
    } catch (const NonUniqueMaximizer& e) {
        json j;
        j["error"] = "NonUniqueMaximizer";
        json support = json::array();
        for (const auto& s : e.support) support.push_back(subset_str(s));
        j["face_support"] = support;
        out << j.dump(2) << "\n";
        err << e.what() << "\n";
        return kExitNotStable;
    } catch (const NotSemistableForTorus& e) {
        out << json{{"error", "NotSemistableForTorus"}}.dump(2) << "\n";
        err << e.what() << "\n";
        return kExitNotStable;
    } catch (const NotStable& e) {
        out << json{{"error", "NotStable"}, {"detail", e.what()}}.dump(2) << "\n";
        err << e.what() << "\n";
        return kExitNotStable;
    } catch (const MaxIterationsExceeded& e) {
        out << json{{"error", "MaxIterationsExceeded"}, {"trail", e.trail}}.dump(2) << "\n";
        err << e.what() << "\n";
        return kExitMaxIterations;
    }
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string suite;
    std::uint64_t seed = 1;
    std::string report;
    bool quick = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out)
{
    SuiteSizes sizes;
    if (a.quick) {
        sizes.section = 18;
        sizes.drinfeld = 9;
        sizes.drinfeld_covectors = 30;
        sizes.equivariance = 9;
        sizes.compat = 20;
        sizes.hull_per_pair = 100;
    }
    SuiteReport r = run_suite(a.suite, a.seed, sizes);
    std::string text = r.to_json().dump(2) + "\n";
    out << text;
    if (!a.report.empty()) write_file(a.report, text);
    return r.passed() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Newton strata, tropical retractions and building points for GL_n"};
    app.require_subcommand(1);

    KottwitzArgs ka;
    auto* kott = app.add_subcommand("kottwitz", "enumerate and classify a Kottwitz set B(GL_n, mu)");
    kott->add_option("--n", ka.n, "rank")->required();
    kott->add_option("--d", ka.d, "Hodge datum (1^d, 0^(n-d))")->required();
    kott->add_flag("--classify", ka.classify, "table of basic / HN-decomposable / strongly regular / dimension");
    kott->add_flag("--hasse", ka.hasse, "print covering relations");
    kott->add_option("--svg", ka.svg, "write the polygons as SVG");
    kott->add_option("--json", ka.json_path, "write the classification as JSON");

    RetractArgs ra;
    auto* ret = app.add_subcommand("retract", "retract a Grassmannian point to the building");
    ret->add_option("--point", ra.point, "JSON point file")->required();
    ret->add_flag("--apartment-only", ra.apartment_only, "only the standard apartment retraction");
    ret->add_option("--config", ra.config, "JSON retraction config");

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    std::vector<std::string> names = suite_names();
    names.push_back("all");
    ver->add_option("--suite", va.suite, "suite name")->required()->check(CLI::IsMember(names));
    ver->add_option("--seed", va.seed, "seed for randomized suites");
    ver->add_option("--report", va.report, "also write the report to this file");
    ver->add_flag("--quick", va.quick, "reduced sample sizes");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (kott->parsed()) return cmd_kottwitz(ka, out);
        if (ret->parsed()) return cmd_retract(ra, out, err);
        return cmd_verify(va, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ComplexityGuard& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace bt
