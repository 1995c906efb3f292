#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pshlab/abp.hpp"
#include "pshlab/calculus.hpp"
#include "pshlab/envelope.hpp"
#include "pshlab/geometry.hpp"
#include "pshlab/singular_set.hpp"
#include "pshlab/viscosity.hpp"

namespace pshlab {

/// A subharmonic candidate u, a touching C^2 majorant phi at the probe point
/// z0, the exceptional set E, and the working radius bound delta0.
struct Scenario {
    std::string name;
    int n = 1;
    FieldFunction u;
    FieldFunction phi;
    ComplexPoint z0;
    SingularSet E;
    double delta0 = 0.5;
    std::string notes;
};

struct PipelineParams {
    std::vector<double> deltas{0.2, 0.1, 0.05};
    int points_per_axis = 17;
    std::vector<double> radii_cells{2.0, 4.0, 8.0};  // chain radii, in units of h
    std::vector<double> cert_radii_cells{1.0, 2.0};  // guard radii, in units of h
    int direction_count = 8;
    int quadrature_points = 64;
    double margin_cells = 1.5;   // required node distance from E, in units of h
    double cert_margin_cells = 2.0;
    double cert_tol = 0.3;       // mean-value tolerance coefficient (of r^2)
    double envelope_tol_scale = 1e-6;  // envelope residual tol = scale * delta^3
    double chain_tol = 0.7;      // chain conclusion slack (absolute, added to delta)
    double psd_scale = 1.0;      // c_H in the h-scaled PSD tolerance
    double final_tol = 0.05;     // extrapolated-bound tolerance
    double collar_tol = 1e-10;
    long max_iter = 0;           // 0 -> 50 * points_per_axis^2
    unsigned seed = 0x5eed;
};

struct ChainRecord {
    double delta = 0.0;
    double r = 0.0;
    int direction_index = 0;
    double u_gap = 0.0;      // circle_mean(u) - u(z_delta)
    double gamma_gap = 0.0;  // circle_mean(Gamma) - Gamma(z_delta)
    double phi_bound = 0.0;  // (circle_mean(phi) - phi(z_delta)) / r^2
    bool u_ok = false;
    bool gamma_ok = false;
    bool chain_ok = false;
};

struct CollarCheck {
    bool ok = false;
    std::size_t worst_node = 0;
    double worst_value = 0.0;
};

struct DeltaRecord {
    double delta = 0.0;
    double h = 0.0;
    std::size_t z_delta_index = 0;
    ComplexPoint z_delta;
    double dist_to_E = 0.0;
    double dist_to_z0 = 0.0;
    CollarCheck collar;
    AbpReport abp;
    std::vector<ChainRecord> chains;
    double hessian_form_min = 0.0;   // min over the direction sample
    double hessian_eigen_min = 0.0;  // true min over all T
    double phi_sup = 0.0;            // max |phi| over the grid, for tolerance scaling
    long envelope_iterations = 0;
    int usable_radii = 0;
};

enum class PipelineVerdict { Certified, PreconditionViolated, Inconclusive };

std::string to_string(PipelineVerdict v);
std::string to_string(Status s);

struct ExtensionReport {
    PipelineVerdict verdict = PipelineVerdict::Inconclusive;
    std::string reason;
    Verdict guard_subharmonic;
    Verdict guard_psh;
    std::vector<DeltaRecord> records;
    double extrapolated_bound = 0.0;
    bool extrapolation_defined = false;
    double grid_fraction_on_E = 0.0;  // diagnostic, filled on selection failure
};

/// phi + delta ||z - z0||^2 - delta^3 - u on the given grid.
ScalarField build_v_delta(const Scenario& scenario, double delta,
                          std::shared_ptr<const GridDomain> domain);

/// v_delta >= -tol at every collar node.
CollarCheck verify_collar_nonnegative(const ScalarField& v_delta, double tol = 1e-10);

/// Among contact nodes farther than `margin` from E, the one nearest z0
/// (ties by node index). nullopt if none qualifies.
std::optional<std::size_t> pick_contact_point(const ContactSet& contact, const SingularSet& E,
                                              double margin, const GridDomain& domain);

/// One circle-mean inequality chain record at the contact point.
ChainRecord chain_bound(const ScalarField& u_field, const ScalarField& phi_field,
                        const ScalarField& gamma_field, std::size_t z_delta, double delta,
                        double r, const Direction& T, int direction_index, int m,
                        double cert_tol, double chain_tol);

/// Min over the direction sample of T* H(phi)(z_delta) T, with the true
/// eigenvalue minimum alongside.
std::pair<double, double> hessian_form_min(const ScalarField& phi_field, std::size_t z_delta,
                                           const std::vector<Direction>& directions);

/// Verify scenario invariants (touching at z0, phi >= u on the working box).
/// Returns an empty string on success, else a description of the violation.
std::string validate_scenario(const Scenario& scenario, const PipelineParams& params);

ExtensionReport run_extension(const Scenario& scenario, const PipelineParams& params);

struct CounterexampleDemoReport {
    Verdict subharmonic;   // expected Fail
    Verdict psh_off;       // expected Pass off the sphere
    ExtensionReport pipeline;  // expected PreconditionViolated
    double witness_distance_to_sphere = 0.0;
};

/// The introduction example u = min(||z||^2, 1) with E the unit sphere:
/// psh off E, not subharmonic, pipeline guard must refuse it.
CounterexampleDemoReport counterexample_demo(int n, double grid_radius, int points_per_axis);

}  // namespace pshlab
