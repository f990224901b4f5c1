// wpvol: exact Weil-Petersson volumes, tight volumes, moment data, and
// JT-gravity correlators from the command line.
//
// Exit codes: 0 success, 1 identity-check failure, 2 usage error,
// 3 input-file error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "wpvol/cache.hpp"
#include "wpvol/checks.hpp"
#include "wpvol/extract_tight.hpp"
#include "wpvol/json_io.hpp"
#include "wpvol/jt.hpp"
#include "wpvol/kernel_recursion.hpp"
#include "wpvol/n_recursion.hpp"
#include "wpvol/render.hpp"
#include "wpvol/residue_recursion.hpp"

namespace {

using nlohmann::json;
using namespace wpvol;

constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInputFile = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Weight load_weight(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw WeightParseError("", "cannot open weight file " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw WeightParseError("", std::string("invalid JSON: ") + e.what());
    }
    return weight_from_json(j);
}

void require_stable(int g, int n) {
    if (g < 0 || n < 1 || 2 * g - 2 + n <= 0)
        throw UsageError("unstable (g,n) = (" + std::to_string(g) + "," + std::to_string(n) +
                         ")");
}

// Cached symbolic volume polynomials: exact arithmetic makes payloads
// byte-identical across runs, so cache hits are safe to trust after the
// checksum.
VolumePoly cached_volume(const std::string& kind, int g, int n, int p, Basis basis,
                         const std::function<VolumePoly()>& compute) {
    CacheKey key{kind, g, n, p, basis_name(basis)};
    if (auto hit = cache_load(key)) {
        try {
            return volume_poly_from_json(*hit);
        } catch (const std::exception&) {
            // fall through to recompute
        }
    }
    VolumePoly v = compute();
    cache_store(key, volume_poly_to_json(v));
    return v;
}

int cmd_volumes(int g, int n, const std::string& basis, const std::string& format) {
    require_stable(g, n);
    Basis b = basis == "wp" ? Basis::WP : basis == "moments" ? Basis::Moments : Basis::Beta;
    VolumePoly v = cached_volume("V", g, n, 0, b, [&] {
        if (b == Basis::WP) return wp_volume(g, n);
        if (b == Basis::Moments) return convert_basis(tight_volume(g, n), Basis::Moments);
        return tight_volume(g, n);
    });
    std::cout << render_volume(v, parse_format(format)) << "\n";
    return 0;
}

int cmd_tight(int g, int n, int defects, const std::string& mu_path, const std::string& basis,
              const std::string& format) {
    require_stable(g, n);
    OutputFormat f = parse_format(format);
    if (defects >= 0) {
        VolumePoly v = cached_volume("Tgnp", g, n, defects, Basis::WP, [&] {
            return VolumePoly{g, n + defects, Basis::WP, tight_volume_defects(g, n, defects)};
        });
        std::cout << render_volume(v, f) << "\n";
        return 0;
    }
    if (!mu_path.empty()) {
        Weight w = load_weight(mu_path);
        if (w.formal) {
            MomentDataFormal md = moments_formal(w, 3 * g - 3 + n);
            VolumePoly t = tight_volume(g, n);
            json orders = json::array();
            TruncSeries expanded = expand_in_coupling(t.poly, md.beta);
            for (int k = 0; k <= md.order; ++k)
                orders.push_back(json{{"w_power", k}, {"coeff", mpoly_to_json(expanded.coeff(k))}});
            std::cout << json{{"g", g}, {"n", n}, {"series_in_w", orders}}.dump() << "\n";
            return 0;
        }
        MomentDataNum md = moments_numeric(w, 3 * g - 3 + n);
        auto value_of = [&](Symbol s) -> double {
            if (s.kind == SymKind::Beta) return md.beta.at(s.index);
            throw std::invalid_argument("unexpected symbol " + symbol_name(s));
        };
        NumPoly numeric = evaluate_coefficients(tight_volume(g, n).poly, n, value_of);
        json terms = json::array();
        for (const auto& [ks, c] : numeric) terms.push_back(json{{"k", ks}, {"coeff", c}});
        std::cout << json{{"g", g}, {"n", n}, {"R", md.R}, {"terms", terms}}.dump() << "\n";
        return 0;
    }
    Basis b = basis == "beta" ? Basis::Beta : Basis::Moments;
    VolumePoly v = cached_volume("T", g, n, 0, b, [&] {
        return b == Basis::Beta ? tight_volume(g, n) : tight_in_moments(g, n);
    });
    std::cout << render_volume(v, f) << "\n";
    return 0;
}

int cmd_moments(const std::string& mu_path, int order, const std::string& format) {
    Weight w = load_weight(mu_path);
    if (w.formal) {
        MomentDataFormal md = moments_formal(w, order);
        auto series_json = [](const TruncSeries& s) {
            json out = json::array();
            for (int k = 0; k <= s.order; ++k) out.push_back(mpoly_to_json(s.coeff(k)));
            return out;
        };
        json out{{"mode", "formal"}, {"order", md.order}, {"R", series_json(md.R)}};
        json mm = json::array(), tt = json::array(), bb = json::array();
        for (const auto& s : md.M) mm.push_back(series_json(s));
        for (const auto& s : md.t) tt.push_back(series_json(s));
        for (const auto& s : md.beta) bb.push_back(series_json(s));
        out["M"] = mm;
        out["t"] = tt;
        out["beta"] = bb;
        std::cout << out.dump() << "\n";
        return 0;
    }
    MomentDataNum md = moments_numeric(w, order);
    if (parse_format(format) == OutputFormat::Json) {
        json out{{"mode", "numeric"},
                 {"R", md.R},
                 {"z_residual", md.z_residual},
                 {"newton_iterations", md.newton_iterations},
                 {"M", md.M},
                 {"t", md.t},
                 {"beta", md.beta},
                 {"beta_convolution_residual", md.beta_convolution_residual()}};
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "R = " << md.R << "  (|Z(R)| = " << md.z_residual << ", "
                  << md.newton_iterations << " Newton steps)\n";
        for (size_t k = 0; k < md.M.size(); ++k)
            std::cout << "M_" << k << " = " << md.M[k] << "   t_" << k << " = " << md.t[k]
                      << "   beta_" << k << " = " << md.beta[k] << "\n";
    }
    return 0;
}

int cmd_jt(int g, std::vector<double> betas, const std::string& mu_path, double s0,
           bool use_fzzt) {
    JTRequest req;
    req.g = g;
    req.betas = std::move(betas);
    req.s0 = s0;
    if (!mu_path.empty()) req.weight = load_weight(mu_path);
    int n = static_cast<int>(req.betas.size());
    if (!(g == 0 && n == 2)) require_stable(g, n);
    JTResult res = use_fzzt ? fzzt_partition(req) : jt_partition(req);
    json out{{"value", res.value},
             {"prefactor_exponent", res.prefactor_exponent},
             {"R", res.R},
             {"diagnostics", json{{"z_residual", res.z_residual}, {"s0", res.s0}}}};
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_check(const std::string& suite, int max_complexity) {
    std::vector<CheckSuiteResult> results;
    if (suite == "all")
        results = run_all_checks(max_complexity);
    else
        results.push_back(run_check_suite(suite, max_complexity));
    json report = check_results_to_json(results);
    std::cout << report.dump(2) << "\n";
    return report.at("pass").get<bool>() ? 0 : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Weil-Petersson and tight-volume engine"};
    app.require_subcommand(1);

    int g = 0, n = 0, defects = -1, order = 6, max_complexity = 6;
    double s0 = 0.0;
    std::string volumes_basis = "wp", tight_basis = "moments", format = "table";
    std::string mu_path, suite = "all";
    std::vector<double> betas;
    bool use_fzzt = false;

    auto* volumes = app.add_subcommand("volumes", "V_{g,n} volume polynomial");
    volumes->add_option("-g", g, "genus")->required();
    volumes->add_option("-n", n, "number of boundaries")->required();
    volumes->add_option("--basis", volumes_basis, "wp | moments | beta");
    volumes->add_option("--format", format, "table | json | latex | csv");

    auto* tight = app.add_subcommand("tight", "tight volume generating polynomials");
    tight->add_option("-g", g, "genus")->required();
    tight->add_option("-n", n, "number of tight boundaries")->required();
    tight->add_option("--defects", defects, "defect count p: emit T_{g,n,p}");
    tight->add_option("--mu", mu_path, "weight file (JSON)");
    tight->add_option("--basis", tight_basis, "moments | beta");
    tight->add_option("--format", format, "table | json | latex | csv");

    auto* moments = app.add_subcommand("moments", "R, moments, times, reverse moments");
    moments->add_option("--mu", mu_path, "weight file (JSON)")->required();
    moments->add_option("-K,--order", order, "highest moment index");
    moments->add_option("--format", format, "table | json");

    auto* jt = app.add_subcommand("jt", "JT multi-boundary correlators");
    jt->add_option("-g", g, "genus")->required();
    jt->add_option("--beta", betas, "asymptotic boundary lengths")->required()->expected(-1);
    jt->add_option("--mu", mu_path, "weight file (JSON)");
    jt->add_option("--s0", s0, "topological coupling (reported, not applied)");
    jt->add_flag("--fzzt", use_fzzt, "use the FZZT pipeline (weight must carry fzzt)");

    auto* check = app.add_subcommand("check", "run identity suites");
    check->add_option("--suite", suite,
                      "ring | paths | string-dilaton | decomposition | jt | all");
    check->add_option("--max-complexity", max_complexity, "bound on 2g-2+n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (volumes->parsed()) return cmd_volumes(g, n, volumes_basis, format);
        if (tight->parsed()) return cmd_tight(g, n, defects, mu_path, tight_basis, format);
        if (moments->parsed()) return cmd_moments(mu_path, order, format);
        if (jt->parsed()) return cmd_jt(g, betas, mu_path, s0, use_fzzt);
        if (check->parsed()) return cmd_check(suite, max_complexity);
    } catch (const WeightParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputFile;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
    return kExitUsage;
}
