#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cosfunk/transforms.hpp"

namespace cosfunk {

/// Diagnostics attached to every inversion. Error fields are -1 when no
/// reference was supplied.
struct InversionReport {
    std::string theorem;  // general-between | general-outside | funk | cosine1
    std::string method;   // between | outside | even-branch | log-branch
    cd lambda = 0.0;
    int ell = 0;
    int n = 0;
    int max_degree = 0;
    double max_error = -1.0;
    /// L2 norm of (result - reference) per degree 0..J.
    std::vector<double> degree_errors;
    /// Amplification 1 / |forward multiplier| per even degree 0..J.
    std::vector<double> condition_numbers;
    /// Even branches: max |first formula - second formula| on the grid.
    double branch_agreement = -1.0;
    /// L2 norm of the odd part of the input (-1 on grids without pairing).
    double odd_part_norm = -1.0;
    std::vector<std::string> warnings;
};

struct InversionResult {
    GridFunction f;
    /// Second formula of an even-n branch (F D phi vs D F phi, etc.).
    std::optional<GridFunction> alternative;
    InversionReport report;
};

struct InversionOptions {
    /// Highest band limit accepted; the differential operators amplify high
    /// degrees polynomially.
    int max_degree = 12;
    /// Path for the Funk transforms inside the theorems.
    Path funk_path = Path::quadrature;
    /// Optional ground truth for the report.
    std::optional<GridFunction> reference;
};

/// f = C^{-lambda-n} Delta_{lambda,ell} phi for phi = C^{lambda+2ell} f.
InversionResult invert_general_between(const GridFunction& phi, cd lambda, int ell, const InversionOptions& opt = {});

/// f = Delta_{-lambda-n,ell} C^{-lambda-n+2ell} phi for phi = C^lambda f.
InversionResult invert_general_outside(const GridFunction& phi, cd lambda, int ell, const InversionOptions& opt = {});

/// Funk inversion. n even: F(D phi) and D(F phi) with D = c_n^2 Delta_{1-n,(n-2)/2}.
/// n odd: phi_0 + c_n Delta_{1-n,(n-1)/2} C_log(phi - phi_0).
InversionResult invert_funk(const GridFunction& phi, const InversionOptions& opt = {});

/// Inversion of C^1. n even: F(D1 phi) and D2(F phi), D1 = c_n Delta_{1-n,n/2},
/// D2 = c_n Delta_{-1-n,n/2}. n odd: c phi_0 + Delta_{-1-n,(n+1)/2} C_log(phi - phi_0)
/// with c = Gamma((n+1)/2) / Gamma(-1/2).
InversionResult invert_cosine1(const GridFunction& phi, const InversionOptions& opt = {});

/// Constant of the odd-n branch of the C^1 inversion.
double cosine1_odd_constant(int n);

}  // namespace cosfunk
