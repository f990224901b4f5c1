#include "wpvol/jt.hpp"

#include <cmath>
#include <stdexcept>

#include "wpvol/kernel_recursion.hpp"

namespace wpvol {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

NumPoly evaluate_coefficients(const MPoly& p, int n,
                              const std::function<double(Symbol)>& value_of) {
    NumPoly out;
    for (const auto& [mono, c] : p.terms) {
        std::vector<int> ks(n, 0);
        double v = rat_to_double(c);
        for (const auto& [sid, e] : mono) {
            Symbol s = symbol_from_id(sid);
            if (s.kind == SymKind::B && s.index >= 1 && s.index <= static_cast<uint32_t>(n))
                ks[s.index - 1] = static_cast<int>(e);
            else
                v *= std::pow(value_of(s), static_cast<int>(e));
        }
        out[ks] += v;
    }
    return out;
}

double trumpet(double beta, double b) {
    return std::exp(-b * b / (4.0 * beta)) / (2.0 * std::sqrt(kPi * beta));
}

double tight_trumpet(double beta, double K, double R) {
    return std::exp(2.0 * R * beta) * trumpet(beta, K);
}

double gauss_glue(const NumPoly& poly, const std::vector<double>& betas, double R) {
    double beta_sum = 0.0, front = 1.0;
    for (double b : betas) {
        beta_sum += b;
        front /= 2.0 * std::sqrt(kPi * b);
    }
    double acc = 0.0;
    for (const auto& [ks, c] : poly) {
        if (ks.size() != betas.size())
            throw std::invalid_argument("gauss_glue: slot count mismatch");
        double term = c;
        for (size_t i = 0; i < ks.size(); ++i)
            term *= 0.5 * rat_to_double(factorial(ks[i])) *
                    std::pow(4.0 * betas[i], ks[i] + 1);
        acc += term;
    }
    return front * std::exp(2.0 * R * beta_sum) * acc;
}

namespace {

JTResult glue_request(const JTRequest& req, const Weight& w) {
    int n = static_cast<int>(req.betas.size());
    for (double b : req.betas)
        if (!(b > 0)) throw std::domain_error("jt_partition: boundary lengths must be positive");
    JTResult res;
    res.prefactor_exponent = 2 * req.g + n - 2;
    res.s0 = req.s0;
    if (req.g == 0 && n == 2) {
        MomentDataNum md = moments_numeric(w, 0);
        res.R = md.R;
        res.z_residual = md.z_residual;
        double b1 = req.betas[0], b2 = req.betas[1];
        res.value = std::sqrt(b1 * b2) / (2.0 * kPi * (b1 + b2)) *
                    std::exp(2.0 * (b1 + b2) * md.R);
        return res;
    }
    if (2 * req.g - 2 + n <= 0 || n < 1)
        throw std::domain_error("jt_partition: needs stable (g,n) or (0,2)");
    int K = 3 * req.g - 3 + n;
    MomentDataNum md = moments_numeric(w, std::max(K, 0));
    res.R = md.R;
    res.z_residual = md.z_residual;
    const VolumePoly& t = tight_volume(req.g, n);
    auto value_of = [&](Symbol s) -> double {
        if (s.kind == SymKind::Beta) return md.beta.at(s.index);
        throw std::invalid_argument("jt_partition: unexpected symbol " + symbol_name(s));
    };
    NumPoly numeric = evaluate_coefficients(t.poly, n, value_of);
    res.value = gauss_glue(numeric, req.betas, md.R);
    return res;
}

}  // namespace

JTResult jt_partition(const JTRequest& req) { return glue_request(req, req.weight); }

JTResult fzzt_partition(const JTRequest& req) {
    if (!req.weight.has_fzzt())
        throw std::invalid_argument("fzzt_partition: weight has no FZZT family");
    JTResult res = glue_request(req, req.weight);
    double z = req.weight.fzzt->z;
    if (!(z > 0) || !(z * z > 2.0 * res.R))
        throw std::domain_error("fzzt_partition: convergence requires z > sqrt(2R)");
    return res;
}

}  // namespace wpvol
