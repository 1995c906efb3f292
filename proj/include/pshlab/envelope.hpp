#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "pshlab/geometry.hpp"

namespace pshlab {

/// Constraint data for the constrained convex envelope: one value per node of
/// the closed ball B_{2delta} (active nodes); nodes outside are excluded.
/// build_obstacle encodes the pipeline constraints (w = v_delta on B_delta,
/// w = 0 on the collar); obstacles may also be built directly for generic
/// envelope problems.
struct Obstacle {
    std::shared_ptr<const GridDomain> domain;
    std::vector<double> w;           // per node; meaningful where active
    std::vector<std::uint8_t> active;

    std::size_t active_count() const;
};

/// w = v_delta at inner nodes, 0 at collar nodes.
Obstacle build_obstacle(const ScalarField& v_delta);

/// Obstacle over all B_{2delta} nodes with the given values (no collar
/// substitution).
Obstacle make_obstacle(const ScalarField& w);

struct AffineFunction {
    std::vector<double> a;
    double b;

    double operator()(const ComplexPoint& p) const;
};

/// The constant function l = min(0, min_{B_delta} w), feasible for both
/// constraint families.
AffineFunction nonvoid_witness(const Obstacle& obstacle);

struct EnvelopeSolution {
    std::vector<double> gamma;  // per node; meaningful on active nodes
    long iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
};

/// Axis directions plus all two-axis (+-1, +-1) diagonals.
std::vector<std::vector<int>> default_stencil(int dim);

/// Obstacle-problem fixed point: starting from gamma = w, replace gamma(x) by
/// min(w(x), min over stencil directions and step sizes s of
/// (gamma(x+s e) + gamma(x-s e))/2), both neighbors active; Jacobi sweeps.
/// Multiple step sizes accelerate propagation without changing the fixed
/// point (segments between active nodes of a ball stay in the ball).
/// Throws on max_iter exhaustion with residual above tol.
EnvelopeSolution convex_envelope_iterative(const Obstacle& obstacle,
                                           const std::vector<std::vector<int>>& stencil,
                                           double tol, long max_iter);

/// Exact grid value of sup{ l(x0) : l affine, l <= w at every active node },
/// solved via the dual (a convex-combination LP) with a revised simplex.
/// The independent oracle for the iterative scheme.
double convex_envelope_lp(const Obstacle& obstacle, std::size_t node);

struct ContactSet {
    std::vector<std::uint8_t> mask;      // per node; true only at inner nodes
    std::vector<std::size_t> nodes;      // the inner nodes in contact, ascending
    double measure = 0.0;                // count * h^{2n}
    double tol_used = 0.0;
};

/// Inner nodes with w - gamma <= contact_tol.
ContactSet contact_set(const EnvelopeSolution& solution, const Obstacle& obstacle,
                       double contact_tol);

/// Default contact tolerance: 10*tol + h^2 * (max |discrete Laplacian of w|
/// over inner nodes with full stencils).
double default_contact_tol(const Obstacle& obstacle, double tol);

}  // namespace pshlab
