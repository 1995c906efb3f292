#include "pshlab/abp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pshlab/calculus.hpp"

namespace pshlab {

ScalarField poisson_rhs(const ScalarField& phi, double delta) {
    const GridDomain& d = phi.domain();
    const double shift = 4.0 * d.n() * delta;
    std::vector<double> f(d.node_count(), 0.0);
    for (std::size_t i = 0; i < d.node_count(); ++i) {
        if (d.is_interior(i, 1)) f[i] = laplacian(phi, i) + shift;
    }
    return ScalarField(phi.domain_ptr(), std::move(f));
}

AbpReport abp_quantities(const ScalarField& v_delta, const ContactSet& contact,
                         const ScalarField& f, double delta, double lower_tol) {
    const GridDomain& d = v_delta.domain();
    AbpReport rep;
    rep.delta = delta;
    for (std::size_t i = 0; i < d.node_count(); ++i) {
        if (d.classify(i) == NodeClass::Inner) {
            rep.sup_abs = std::max(rep.sup_abs, std::abs(v_delta.at(i)));
        }
    }
    const double dim = static_cast<double>(d.dim());
    const double cell = std::pow(d.h(), dim);
    double integral = 0.0;
    for (std::size_t i : contact.nodes) {
        const double fp = std::max(f.at(i), 0.0);
        integral += std::pow(fp, dim) * cell;
    }
    rep.contact_count = contact.nodes.size();
    rep.contact_integral = std::pow(integral, 1.0 / dim);
    rep.implied_C_defined = rep.contact_integral > 0.0;
    if (rep.implied_C_defined) {
        rep.implied_C = rep.sup_abs / (delta * rep.contact_integral);
    }
    rep.lower_bound_ok = delta * delta * delta <= rep.sup_abs + lower_tol;
    return rep;
}

double estimate_constant(const std::vector<AbpReport>& reports) {
    double best = 0.0;
    bool any = false;
    for (const auto& r : reports) {
        if (r.implied_C_defined) {
            best = std::max(best, r.implied_C);
            any = true;
        }
    }
    if (!any) throw std::runtime_error("estimate_constant: no report defines implied_C");
    return best;
}

}  // namespace pshlab
