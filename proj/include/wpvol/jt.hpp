#pragma once

#include <map>
#include <vector>

#include "wpvol/weight.hpp"

namespace wpvol {

/// Multi-boundary partition function request: genus, asymptotic boundary
/// lengths, defect weight, and the topological coupling (reported as a
/// prefactor exponent, never multiplied in).
struct JTRequest {
    int g = 0;
    std::vector<double> betas;
    Weight weight;
    double s0 = 0.0;
};

struct JTResult {
    double value = 0.0;
    int prefactor_exponent = 0;  // of e^{-S0}, equal to 2g+n-2
    double R = 0.0;
    double z_residual = 0.0;
    double s0 = 0.0;
};

/// Volume polynomial with numeric coefficients: exponent vector of b_1..b_n
/// mapped to the coefficient.
using NumPoly = std::map<std::vector<int>, double>;

/// Evaluates every non-boundary symbol via `value_of`, keeping the b's.
NumPoly evaluate_coefficients(const MPoly& p, int n,
                              const std::function<double(Symbol)>& value_of);

double trumpet(double beta, double b);
double tight_trumpet(double beta, double K, double R);

/// Gaussian gluing of tight trumpets onto an even polynomial: per slot
/// b^k -> (1/2) k! (4 beta)^{k+1}, times prod 1/(2 sqrt(pi beta_i)) and
/// the tight-trumpet factor e^{2 R sum beta_i}.
double gauss_glue(const NumPoly& poly, const std::vector<double>& betas, double R);

/// Z_{g,n}(beta) for stable (g,n) via gauss_glue over T_{g,n}; the closed
/// form for (0,2). Throws std::domain_error otherwise.
JTResult jt_partition(const JTRequest& req);

/// Same pipeline with the FZZT defect family; requires the weight to carry
/// an FZZT brane with z > sqrt(2R).
JTResult fzzt_partition(const JTRequest& req);

}  // namespace wpvol
