#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace pshlab {

/// A point of C^n stored as 2n reals, ordered (x_1, y_1, ..., x_n, y_n)
/// with z_j = x_j + i*y_j.
struct ComplexPoint {
    std::vector<double> coords;

    ComplexPoint() = default;
    explicit ComplexPoint(std::vector<double> c);

    int n() const { return static_cast<int>(coords.size()) / 2; }
    int dim() const { return static_cast<int>(coords.size()); }
    double operator[](int a) const { return coords[static_cast<std::size_t>(a)]; }
    double& operator[](int a) { return coords[static_cast<std::size_t>(a)]; }

    static ComplexPoint origin(int n);
};

double norm_squared(const ComplexPoint& p);
double distance(const ComplexPoint& a, const ComplexPoint& b);

/// A real-valued function of a point together with a name and a smoothness
/// flag. Non-smooth functions must not be fed to difference stencils.
struct FieldFunction {
    std::string name;
    std::function<double(const ComplexPoint&)> eval;
    bool smooth = true;
};

enum class NodeClass { Inner, Collar, Outer };

/// Uniform grid over the box [-2*delta, 2*delta]^{2n} around `center`,
/// circumscribing B_{2delta}. points_per_axis is odd so the center is a node.
/// Nodes are classified against the concentric balls B_delta and B_{2delta}:
/// Inner iff dist < delta, Collar iff delta <= dist <= 2*delta, else Outer.
class GridDomain {
public:
    GridDomain(int n, ComplexPoint center, double delta, int points_per_axis);

    int n() const { return n_; }
    int dim() const { return 2 * n_; }
    double delta() const { return delta_; }
    double h() const { return h_; }
    int points_per_axis() const { return ppa_; }
    const ComplexPoint& center() const { return center_; }
    std::size_t node_count() const { return count_; }

    double axis_lo(int a) const { return center_[a] - 2.0 * delta_; }
    double axis_hi(int a) const { return center_[a] + 2.0 * delta_; }

    std::size_t stride(int a) const { return strides_[static_cast<std::size_t>(a)]; }
    std::vector<int> node_multi(std::size_t idx) const;
    std::size_t flat_index(const std::vector<int>& multi) const;
    ComplexPoint node_point(std::size_t idx) const;
    std::size_t center_index() const;

    NodeClass classify(std::size_t idx) const;

    /// True iff the node is at least `cells` grid cells away from every box face.
    bool is_interior(std::size_t idx, int cells = 1) const;

    /// True iff `p` lies in the closed grid box (with a tiny slack for roundoff).
    bool in_box(const ComplexPoint& p) const;

private:
    int n_;
    int ppa_;
    double delta_;
    double h_;
    ComplexPoint center_;
    std::size_t count_;
    std::vector<std::size_t> strides_;
};

/// Real values sampled at every node of a GridDomain, immutable after
/// construction. Carries its domain by shared pointer.
class ScalarField {
public:
    ScalarField(std::shared_ptr<const GridDomain> domain, std::vector<double> values);

    const GridDomain& domain() const { return *dom_; }
    std::shared_ptr<const GridDomain> domain_ptr() const { return dom_; }
    double at(std::size_t idx) const { return values_[idx]; }
    const std::vector<double>& values() const { return values_; }

    /// Multilinear interpolation over the 2^{2n} corners of the cell
    /// containing p. Exact at nodes and for affine functions.
    double interpolate(const ComplexPoint& p) const;

private:
    std::shared_ptr<const GridDomain> dom_;
    std::vector<double> values_;
};

/// Evaluate f at every node. Throws if any value is non-finite, naming the node.
ScalarField sample(const FieldFunction& f, std::shared_ptr<const GridDomain> domain);

}  // namespace pshlab
