#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pshlab/geometry.hpp"

namespace pshlab {

/// Representation of the exceptional set E as a predicate with an explicit
/// margin: contains(p, m) asks whether p lies within Euclidean distance m of
/// the represented set. Variants: Empty, HypersurfaceLevelSet, CantorProduct,
/// FiniteUnion, PointCloud. Immutable after construction.
class SingularSet {
public:
    SingularSet();  // Empty

    static SingularSet empty();

    /// Level set {g = 0}. L must be a valid Lipschitz bound for g on the
    /// working box; membership at margin m is tested as |g(p)| <= m * L.
    static SingularSet hypersurface(FieldFunction g, double lipschitz);

    /// Coordinate hyperplane {coords[axis] = value}; exact distances.
    static SingularSet hyperplane(int axis, double value);

    /// Sphere {dist(p, center) = radius}; exact distances.
    static SingularSet sphere(ComplexPoint center, double radius);

    /// Product over the 2n real axes of the depth-truncated middle-third
    /// Cantor construction on [corner_a, corner_a + 1]. Outer approximation:
    /// measure_upper_bound = (2/3)^{depth * 2n}.
    static SingularSet cantor_product(int depth, int n, ComplexPoint lower_corner);
    static SingularSet cantor_product(int depth, int n);

    static SingularSet finite_union(std::vector<SingularSet> members);
    static SingularSet point_cloud(std::vector<ComplexPoint> points);

    bool contains(const ComplexPoint& p, double margin) const;
    bool is_empty_variant() const;
    double measure_upper_bound() const;
    std::string describe() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// Fraction of grid nodes within `margin` of the set.
double grid_fraction_on_set(const SingularSet& set, const GridDomain& domain, double margin);

}  // namespace pshlab
