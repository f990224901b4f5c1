#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wpvol/checks.hpp"
#include "wpvol/extract_tight.hpp"
#include "wpvol/json_io.hpp"
#include "wpvol/jt.hpp"
#include "wpvol/kernel_recursion.hpp"
#include "wpvol/n_recursion.hpp"
#include "wpvol/render.hpp"
#include "wpvol/residue_recursion.hpp"

namespace py = pybind11;
using namespace wpvol;

namespace {

std::string volume_json(int g, int n, const std::string& basis) {
    Basis b = basis == "wp" ? Basis::WP : basis == "moments" ? Basis::Moments : Basis::Beta;
    VolumePoly v = b == Basis::WP        ? wp_volume(g, n)
                   : b == Basis::Moments ? convert_basis(tight_volume(g, n), Basis::Moments)
                                         : tight_volume(g, n);
    return volume_poly_to_json(v).dump();
}

std::string volume_latex(int g, int n, const std::string& basis) {
    Basis b = basis == "wp" ? Basis::WP : basis == "moments" ? Basis::Moments : Basis::Beta;
    VolumePoly v = b == Basis::WP        ? wp_volume(g, n)
                   : b == Basis::Moments ? tight_in_moments(g, n)
                                         : tight_volume(g, n);
    return render_volume(v, OutputFormat::Latex);
}

std::string tight_defects_json(int g, int n, int p) {
    VolumePoly v{g, n + p, Basis::WP, tight_volume_defects(g, n, p)};
    return volume_poly_to_json(v).dump();
}

std::string omega_json(int g, int n) { return correlator_to_json(omega(g, n)).dump(); }

py::dict moments_dict(const std::string& weight_json, int order) {
    Weight w = weight_from_json(nlohmann::json::parse(weight_json));
    if (w.formal) throw std::invalid_argument("moments(): numeric weights only here");
    MomentDataNum md = moments_numeric(w, order);
    py::dict out;
    out["R"] = md.R;
    out["z_residual"] = md.z_residual;
    out["M"] = md.M;
    out["t"] = md.t;
    out["beta"] = md.beta;
    out["beta_convolution_residual"] = md.beta_convolution_residual();
    return out;
}

py::dict jt_dict(int g, const std::vector<double>& betas, const std::string& weight_json,
                 double s0) {
    JTRequest req;
    req.g = g;
    req.betas = betas;
    req.s0 = s0;
    if (!weight_json.empty()) req.weight = weight_from_json(nlohmann::json::parse(weight_json));
    JTResult res = req.weight.has_fzzt() ? fzzt_partition(req) : jt_partition(req);
    py::dict out;
    out["value"] = res.value;
    out["prefactor_exponent"] = res.prefactor_exponent;
    out["R"] = res.R;
    out["z_residual"] = res.z_residual;
    return out;
}

std::string checks_json(const std::string& suite, int max_complexity) {
    std::vector<CheckSuiteResult> results;
    if (suite == "all")
        results = run_all_checks(max_complexity);
    else
        results.push_back(run_check_suite(suite, max_complexity));
    return check_results_to_json(results).dump();
}

std::string psi_string(int g, const std::vector<int>& d) {
    return rat_to_string(psi_intersection(g, d));
}

std::string intersection_table() { return intersection_table_to_json().dump(); }

double free_energy_py(int g, const std::string& weight_json) {
    Weight w = weight_json.empty() ? Weight::zero()
                                   : weight_from_json(nlohmann::json::parse(weight_json));
    return free_energy(g, w);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact Weil-Petersson / tight volume engine";
    m.def("volume_json", &volume_json, py::arg("g"), py::arg("n"), py::arg("basis") = "wp",
          "Volume polynomial as canonical JSON");
    m.def("volume_latex", &volume_latex, py::arg("g"), py::arg("n"), py::arg("basis") = "wp");
    m.def("tight_defects_json", &tight_defects_json, py::arg("g"), py::arg("n"), py::arg("p"),
          "T_{g,n,p} as canonical JSON (pi^2 coefficients)");
    m.def("omega_json", &omega_json, py::arg("g"), py::arg("n"),
          "Spectral-curve correlator coefficient table as JSON");
    m.def("psi_intersection", &psi_string, py::arg("g"), py::arg("d"),
          "psi-class intersection number as an exact rational string");
    m.def("intersection_table_json", &intersection_table,
          "All memoized intersection numbers as JSON rows");
    m.def("moments", &moments_dict, py::arg("weight_json"), py::arg("order") = 6,
          "Numeric moment data for a weight (JSON string, schema as the CLI)");
    m.def("jt_partition", &jt_dict, py::arg("g"), py::arg("betas"),
          py::arg("weight_json") = std::string(), py::arg("s0") = 0.0);
    m.def("free_energy", &free_energy_py, py::arg("g"),
          py::arg("weight_json") = std::string());
    m.def("run_checks", &checks_json, py::arg("suite") = "all", py::arg("max_complexity") = 6,
          "Run identity suites; returns the JSON report");
}
