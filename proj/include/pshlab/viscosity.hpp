#pragma once

#include <cstddef>
#include <vector>

#include "pshlab/calculus.hpp"
#include "pshlab/geometry.hpp"
#include "pshlab/singular_set.hpp"

namespace pshlab {

enum class Status { Pass, Fail, Inconclusive };

/// A recorded violation: node index, direction index into the active sample
/// (-1 for sphere-mean or eigenvalue tests), test radius (0 for pointwise
/// tests), and the measured violation magnitude beyond the tolerance budget.
struct Witness {
    std::size_t node;
    int direction;
    double r;
    double violation;
};

struct Verdict {
    Status status = Status::Inconclusive;
    std::vector<Witness> witnesses;  // worst first, capped at 10
    std::size_t tested_node_count = 0;
    std::size_t skipped_node_count = 0;

    bool passed() const { return status == Status::Pass; }
};

/// Sub-mean-value test on Euclidean spheres (realized as direction-averaged
/// circle means): Pass iff sphere_mean(z, r) >= field(z) - tol*r^2 for every
/// node whose test circles fit in the grid and every r in radii.
Verdict certify_subharmonic(const ScalarField& field, const std::vector<double>& radii,
                            double tol, const std::vector<Direction>& directions, int m);

/// Circle sub-mean test per direction: Pass iff for every node off `exclude`
/// (at the given margin), every r, every direction T,
/// circle_mean(z, r, T) >= field(z) - tol*r^2.
Verdict certify_psh(const ScalarField& field, const SingularSet& exclude, double margin,
                    const std::vector<double>& radii, const std::vector<Direction>& directions,
                    double tol, int m);

/// PSD complex Hessian at every interior node; only meaningful for fields
/// sampled from twice-differentiable functions.
Verdict det_plus_subsolution_check(const ScalarField& field, double tol);

}  // namespace pshlab
