#include "pshlab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pshlab {

std::string to_string(PipelineVerdict v) {
    switch (v) {
        case PipelineVerdict::Certified: return "Certified";
        case PipelineVerdict::PreconditionViolated: return "PreconditionViolated";
        case PipelineVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "Pass";
        case Status::Fail: return "Fail";
        case Status::Inconclusive: return "Inconclusive";
    }
    return "?";
}

ScalarField build_v_delta(const Scenario& scenario, double delta,
                          std::shared_ptr<const GridDomain> domain) {
    const ComplexPoint z0 = scenario.z0;
    const auto u = scenario.u.eval;
    const auto phi = scenario.phi.eval;
    const double d3 = delta * delta * delta;
    FieldFunction v{
        "v_delta(" + scenario.name + ")",
        [=](const ComplexPoint& p) {
            double r2 = 0.0;
            for (std::size_t a = 0; a < p.coords.size(); ++a) {
                const double d = p.coords[a] - z0.coords[a];
                r2 += d * d;
            }
            return phi(p) + delta * r2 - d3 - u(p);
        },
        scenario.u.smooth && scenario.phi.smooth};
    return sample(v, std::move(domain));
}

CollarCheck verify_collar_nonnegative(const ScalarField& v_delta, double tol) {
    const GridDomain& d = v_delta.domain();
    CollarCheck c;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < d.node_count(); ++i) {
        if (d.classify(i) != NodeClass::Collar) continue;
        if (v_delta.at(i) < worst) {
            worst = v_delta.at(i);
            c.worst_node = i;
        }
    }
    c.worst_value = worst;
    c.ok = worst >= -tol;
    return c;
}

std::optional<std::size_t> pick_contact_point(const ContactSet& contact, const SingularSet& E,
                                              double margin, const GridDomain& domain) {
    std::optional<std::size_t> best;
    double best_dist = 0.0;
    for (std::size_t i : contact.nodes) {
        const ComplexPoint p = domain.node_point(i);
        if (E.contains(p, margin)) continue;
        const double dist = distance(p, domain.center());
        if (!best || dist < best_dist) {
            best = i;
            best_dist = dist;
        }
    }
    return best;
}

ChainRecord chain_bound(const ScalarField& u_field, const ScalarField& phi_field,
                        const ScalarField& gamma_field, std::size_t z_delta, double delta,
                        double r, const Direction& T, int direction_index, int m,
                        double cert_tol, double chain_tol) {
    const ComplexPoint center = u_field.domain().node_point(z_delta);
    ChainRecord rec;
    rec.delta = delta;
    rec.r = r;
    rec.direction_index = direction_index;
    rec.u_gap = circle_mean(u_field, center, r, T, m) - u_field.at(z_delta);
    rec.gamma_gap = circle_mean(gamma_field, center, r, T, m) - gamma_field.at(z_delta);
    rec.phi_bound = (circle_mean(phi_field, center, r, T, m) - phi_field.at(z_delta)) / (r * r);
    const double budget = cert_tol * r * r;
    rec.u_ok = rec.u_gap >= -budget;
    rec.gamma_ok = rec.gamma_gap >= -budget;
    rec.chain_ok = rec.phi_bound >= -delta - chain_tol;
    return rec;
}

std::pair<double, double> hessian_form_min(const ScalarField& phi_field, std::size_t z_delta,
                                           const std::vector<Direction>& directions) {
    const HermitianForm H = complex_hessian(phi_field, z_delta);
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& T : directions) mn = std::min(mn, H.quadratic_form(T));
    return {mn, min_eigenvalue(H)};
}

std::string validate_scenario(const Scenario& scenario, const PipelineParams& params) {
    if (params.deltas.empty()) return "no deltas configured";
    for (double delta : params.deltas) {
        if (!(delta > 0.0) || !(delta < scenario.delta0 / 2.0)) {
            std::ostringstream os;
            os << "delta " << delta << " outside (0, delta0/2) with delta0 = " << scenario.delta0;
            return os.str();
        }
    }
    const double touch = std::abs(scenario.phi.eval(scenario.z0) - scenario.u.eval(scenario.z0));
    if (!(touch <= 1e-10)) {
        std::ostringstream os;
        os << "phi does not touch u at z0: |phi - u| = " << touch;
        return os.str();
    }
    // Majorant sweep over the largest working grid.
    const auto grid = std::make_shared<const GridDomain>(scenario.n, scenario.z0,
                                                         params.deltas.front(),
                                                         params.points_per_axis);
    for (std::size_t i = 0; i < grid->node_count(); ++i) {
        const ComplexPoint p = grid->node_point(i);
        const double gap = scenario.phi.eval(p) - scenario.u.eval(p);
        if (gap < -1e-10) {
            std::ostringstream os;
            os << "phi < u at node " << i << " by " << -gap;
            return os.str();
        }
    }
    return {};
}

namespace {

bool circle_fits(const GridDomain& d, const ComplexPoint& center, double r) {
    for (int a = 0; a < d.dim(); ++a) {
        if (center[a] - r < d.axis_lo(a) - 1e-12 || center[a] + r > d.axis_hi(a) + 1e-12) {
            return false;
        }
    }
    return true;
}

// Least-squares line y = intercept + slope * x.
double linear_fit_intercept(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-15) return sy / n;
    const double slope = (n * sxy - sx * sy) / denom;
    return (sy - slope * sx) / n;
}

}  // namespace

ExtensionReport run_extension(const Scenario& scenario, const PipelineParams& params) {
    ExtensionReport rep;

    const std::string invalid = validate_scenario(scenario, params);
    if (!invalid.empty()) {
        rep.verdict = PipelineVerdict::PreconditionViolated;
        rep.reason = "scenario invariant violated: " + invalid;
        return rep;
    }

    const int dir_count = std::max(params.direction_count, 2 * scenario.n);
    const std::vector<Direction> dirs = direction_sample(scenario.n, dir_count, params.seed);

    // Guard: u must be subharmonic on the working grid and psh off E.
    {
        const auto grid = std::make_shared<const GridDomain>(scenario.n, scenario.z0,
                                                             params.deltas.front(),
                                                             params.points_per_axis);
        const ScalarField u_field = sample(scenario.u, grid);
        std::vector<double> radii;
        for (double c : params.cert_radii_cells) radii.push_back(c * grid->h());
        rep.guard_subharmonic = certify_subharmonic(u_field, radii, params.cert_tol, dirs,
                                                    params.quadrature_points);
        if (rep.guard_subharmonic.status != Status::Pass) {
            rep.verdict = PipelineVerdict::PreconditionViolated;
            rep.reason = "u fails the subharmonicity guard on the working grid";
            return rep;
        }
        rep.guard_psh = certify_psh(u_field, scenario.E, params.cert_margin_cells * grid->h(),
                                    radii, dirs, params.cert_tol, params.quadrature_points);
        if (rep.guard_psh.status != Status::Pass) {
            rep.verdict = PipelineVerdict::PreconditionViolated;
            rep.reason = "u fails the plurisubharmonicity guard off E";
            return rep;
        }
    }

    for (double delta : params.deltas) {
        const auto grid = std::make_shared<const GridDomain>(scenario.n, scenario.z0, delta,
                                                             params.points_per_axis);
        DeltaRecord dr;
        dr.delta = delta;
        dr.h = grid->h();

        const ScalarField u_field = sample(scenario.u, grid);
        const ScalarField phi_field = sample(scenario.phi, grid);
        const ScalarField v_delta = build_v_delta(scenario, delta, grid);
        for (double v : phi_field.values()) dr.phi_sup = std::max(dr.phi_sup, std::abs(v));

        dr.collar = verify_collar_nonnegative(v_delta, params.collar_tol);
        if (!dr.collar.ok) {
            rep.records.push_back(std::move(dr));
            rep.verdict = PipelineVerdict::PreconditionViolated;
            rep.reason = "v_delta is negative on the collar (phi is not a majorant)";
            return rep;
        }

        const Obstacle obstacle = build_obstacle(v_delta);
        const double env_tol = params.envelope_tol_scale * delta * delta * delta;
        const long max_iter = params.max_iter > 0
                                  ? params.max_iter
                                  : 50L * params.points_per_axis * params.points_per_axis;
        EnvelopeSolution solution;
        try {
            solution = convex_envelope_iterative(obstacle, default_stencil(grid->dim()), env_tol,
                                                 max_iter);
        } catch (const std::runtime_error& e) {
            rep.records.push_back(std::move(dr));
            rep.verdict = PipelineVerdict::Inconclusive;
            rep.reason = std::string("envelope did not converge: ") + e.what();
            return rep;
        }
        dr.envelope_iterations = solution.iterations;

        const double contact_tol = default_contact_tol(obstacle, env_tol);
        const ContactSet contact = contact_set(solution, obstacle, contact_tol);
        if (contact.nodes.empty()) {
            rep.records.push_back(std::move(dr));
            rep.verdict = PipelineVerdict::Inconclusive;
            rep.reason = "empty discrete contact set (contact_tol too tight for the grid)";
            return rep;
        }

        const ScalarField f = poisson_rhs(phi_field, delta);
        dr.abp = abp_quantities(v_delta, contact, f, delta);

        const double margin = params.margin_cells * grid->h();
        const auto picked = pick_contact_point(contact, scenario.E, margin, *grid);
        if (!picked) {
            rep.grid_fraction_on_E = grid_fraction_on_set(scenario.E, *grid, margin);
            rep.records.push_back(std::move(dr));
            rep.verdict = PipelineVerdict::Inconclusive;
            std::ostringstream os;
            os << "all contact nodes lie within margin of E (grid fraction on E: "
               << rep.grid_fraction_on_E << ")";
            rep.reason = os.str();
            return rep;
        }
        dr.z_delta_index = *picked;
        dr.z_delta = grid->node_point(*picked);
        dr.dist_to_z0 = distance(dr.z_delta, scenario.z0);
        // Distance from z_delta to E, estimated by margin bisection.
        {
            double lo = 0.0, hi = 8.0 * grid->delta();
            if (!scenario.E.contains(dr.z_delta, hi)) {
                dr.dist_to_E = hi;
            } else {
                for (int it = 0; it < 50; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (scenario.E.contains(dr.z_delta, mid)) hi = mid;
                    else lo = mid;
                }
                dr.dist_to_E = 0.5 * (lo + hi);
            }
        }

        const ScalarField gamma_field(grid, solution.gamma);
        for (double cells : params.radii_cells) {
            const double r = cells * grid->h();
            if (!circle_fits(*grid, dr.z_delta, r)) continue;
            ++dr.usable_radii;
            for (std::size_t di = 0; di < dirs.size(); ++di) {
                dr.chains.push_back(chain_bound(u_field, phi_field, gamma_field, *picked, delta,
                                                r, dirs[di], static_cast<int>(di),
                                                params.quadrature_points, params.cert_tol,
                                                params.chain_tol));
            }
        }
        if (dr.usable_radii == 0) {
            rep.records.push_back(std::move(dr));
            rep.verdict = PipelineVerdict::Inconclusive;
            rep.reason = "no chain radius fits around the contact point";
            return rep;
        }

        auto [form_min, eig_min] = hessian_form_min(phi_field, *picked, dirs);
        dr.hessian_form_min = form_min;
        dr.hessian_eigen_min = eig_min;
        rep.records.push_back(std::move(dr));
    }

    // delta -> 0 extrapolation of the per-delta Hessian form bound.
    {
        std::vector<double> xs, ys;
        for (const auto& r : rep.records) {
            xs.push_back(r.delta);
            ys.push_back(r.hessian_form_min);
        }
        if (xs.size() >= 2) {
            rep.extrapolated_bound = linear_fit_intercept(xs, ys);
            rep.extrapolation_defined = true;
        }
    }

    // Verdict assembly.
    bool ok = rep.extrapolation_defined && rep.extrapolated_bound >= -params.final_tol;
    std::string reason;
    if (!rep.extrapolation_defined) reason = "too few deltas for extrapolation";
    else if (!ok) reason = "extrapolated Hessian bound below tolerance";
    for (const auto& r : rep.records) {
        for (const auto& c : r.chains) {
            if (!(c.u_ok && c.gamma_ok && c.chain_ok)) {
                ok = false;
                if (reason.empty()) reason = "a chain record failed its inequality";
            }
        }
        // h-scaled stencil tolerance for the per-delta conclusion.
        const double hess_tol = params.psd_scale * r.h * (1.0 + r.phi_sup) + params.chain_tol;
        if (r.hessian_form_min < -r.delta - hess_tol) {
            ok = false;
            if (reason.empty()) reason = "per-delta Hessian form bound violated";
        }
    }
    // z_delta -> z0 trend: distances non-increasing within 2h slack as delta shrinks.
    for (std::size_t i = 1; i < rep.records.size(); ++i) {
        if (rep.records[i].dist_to_z0 > rep.records[i - 1].dist_to_z0 + 2.0 * rep.records[i - 1].h) {
            ok = false;
            if (reason.empty()) reason = "contact points do not trend toward z0";
        }
    }

    rep.verdict = ok ? PipelineVerdict::Certified : PipelineVerdict::Inconclusive;
    rep.reason = ok ? "all per-delta bounds and the extrapolated bound hold" : reason;
    return rep;
}

CounterexampleDemoReport counterexample_demo(int n, double grid_radius, int points_per_axis) {
    CounterexampleDemoReport rep;
    const double delta = grid_radius / 2.0;
    const auto grid = std::make_shared<const GridDomain>(n, ComplexPoint::origin(n), delta,
                                                         points_per_axis);
    FieldFunction u{"min(|z|^2, 1)",
                    [](const ComplexPoint& p) { return std::min(norm_squared(p), 1.0); }, false};
    const SingularSet sphere = SingularSet::sphere(ComplexPoint::origin(n), 1.0);
    const ScalarField u_field = sample(u, grid);

    const std::vector<Direction> dirs = direction_sample(n, std::max(8, 2 * n), 0x5eed);
    const double h = grid->h();
    const std::vector<double> radii{h, 2.0 * h};
    rep.subharmonic = certify_subharmonic(u_field, radii, 0.3, dirs, 64);
    rep.psh_off = certify_psh(u_field, sphere, 2.0 * h, {2.0 * h}, dirs, 0.3, 64);
    if (!rep.subharmonic.witnesses.empty()) {
        const ComplexPoint w = grid->node_point(rep.subharmonic.witnesses.front().node);
        rep.witness_distance_to_sphere = std::abs(std::sqrt(norm_squared(w)) - 1.0);
    }

    // Packaged as a pipeline scenario: probe point on the sphere with the
    // constant majorant 1; the guard must refuse it.
    ComplexPoint z0 = ComplexPoint::origin(n);
    z0[0] = 1.0;
    Scenario scen{"intro-counterexample", n, u,
                  FieldFunction{"1", [](const ComplexPoint&) { return 1.0; }, true}, z0, sphere,
                  0.5, "subharmonicity on Omega is essential"};
    PipelineParams params;
    params.deltas = {0.2, 0.1};
    params.points_per_axis = points_per_axis;
    rep.pipeline = run_extension(scen, params);
    return rep;
}

}  // namespace pshlab
