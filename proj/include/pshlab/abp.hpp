#pragma once

#include <vector>

#include "pshlab/envelope.hpp"
#include "pshlab/geometry.hpp"

namespace pshlab {

/// Quantities of the Alexandrov-Bakelman-Pucci inequality
/// delta^3 <= sup_{B_delta} |v_delta| <= C delta (int_{contact} max(f,0)^{2n} dV)^{1/2n}.
struct AbpReport {
    double delta = 0.0;
    double sup_abs = 0.0;           // max |v_delta| over inner nodes
    double contact_integral = 0.0;  // Riemann sum over contact nodes, root 1/(2n)
    double implied_C = 0.0;         // sup_abs / (delta * contact_integral)
    bool implied_C_defined = false;
    bool lower_bound_ok = false;    // delta^3 <= sup_abs + tolerance
    std::size_t contact_count = 0;
};

/// f = laplacian(phi) + 4 n delta at interior nodes (boundary nodes carry 0;
/// contact nodes are always interior).
ScalarField poisson_rhs(const ScalarField& phi, double delta);

AbpReport abp_quantities(const ScalarField& v_delta, const ContactSet& contact,
                         const ScalarField& f, double delta, double lower_tol = 1e-10);

/// Max of implied_C over the reports that define one.
double estimate_constant(const std::vector<AbpReport>& reports);

}  // namespace pshlab
