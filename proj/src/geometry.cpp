#include "pshlab/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pshlab {

ComplexPoint::ComplexPoint(std::vector<double> c) : coords(std::move(c)) {
    if (coords.empty() || coords.size() % 2 != 0) {
        throw std::invalid_argument("ComplexPoint needs a positive even coordinate count");
    }
}

ComplexPoint ComplexPoint::origin(int n) {
    if (n < 1) throw std::invalid_argument("ComplexPoint: n must be >= 1");
    return ComplexPoint(std::vector<double>(static_cast<std::size_t>(2 * n), 0.0));
}

double norm_squared(const ComplexPoint& p) {
    double s = 0.0;
    for (double c : p.coords) s += c * c;
    return s;
}

double distance(const ComplexPoint& a, const ComplexPoint& b) {
    if (a.coords.size() != b.coords.size()) {
        throw std::invalid_argument("distance: dimension mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
        const double d = a.coords[i] - b.coords[i];
        s += d * d;
    }
    return std::sqrt(s);
}

GridDomain::GridDomain(int n, ComplexPoint center, double delta, int points_per_axis)
    : n_(n), ppa_(points_per_axis), delta_(delta), center_(std::move(center)) {
    if (n < 1) throw std::invalid_argument("GridDomain: n must be >= 1");
    if (!(delta > 0.0)) throw std::invalid_argument("GridDomain: delta must be positive");
    if (points_per_axis < 5 || points_per_axis % 2 == 0) {
        throw std::invalid_argument("GridDomain: points_per_axis must be odd and >= 5");
    }
    if (center_.dim() != 2 * n) {
        throw std::invalid_argument("GridDomain: center has wrong dimension");
    }
    h_ = 4.0 * delta_ / static_cast<double>(ppa_ - 1);
    count_ = 1;
    strides_.resize(static_cast<std::size_t>(dim()));
    // Last axis varies fastest.
    for (int a = dim() - 1; a >= 0; --a) {
        strides_[static_cast<std::size_t>(a)] = count_;
        count_ *= static_cast<std::size_t>(ppa_);
    }
}

std::vector<int> GridDomain::node_multi(std::size_t idx) const {
    std::vector<int> m(static_cast<std::size_t>(dim()));
    for (int a = 0; a < dim(); ++a) {
        m[static_cast<std::size_t>(a)] =
            static_cast<int>((idx / strides_[static_cast<std::size_t>(a)]) %
                             static_cast<std::size_t>(ppa_));
    }
    return m;
}

std::size_t GridDomain::flat_index(const std::vector<int>& multi) const {
    std::size_t idx = 0;
    for (int a = 0; a < dim(); ++a) {
        const int i = multi[static_cast<std::size_t>(a)];
        if (i < 0 || i >= ppa_) throw std::out_of_range("GridDomain: multi-index out of range");
        idx += static_cast<std::size_t>(i) * strides_[static_cast<std::size_t>(a)];
    }
    return idx;
}

ComplexPoint GridDomain::node_point(std::size_t idx) const {
    ComplexPoint p = center_;
    for (int a = 0; a < dim(); ++a) {
        const auto i = (idx / strides_[static_cast<std::size_t>(a)]) %
                       static_cast<std::size_t>(ppa_);
        p[a] = axis_lo(a) + static_cast<double>(i) * h_;
    }
    return p;
}

std::size_t GridDomain::center_index() const {
    std::size_t idx = 0;
    const int mid = (ppa_ - 1) / 2;
    for (int a = 0; a < dim(); ++a) {
        idx += static_cast<std::size_t>(mid) * strides_[static_cast<std::size_t>(a)];
    }
    return idx;
}

NodeClass GridDomain::classify(std::size_t idx) const {
    const double d = distance(node_point(idx), center_);
    if (d < delta_) return NodeClass::Inner;
    if (d <= 2.0 * delta_) return NodeClass::Collar;
    return NodeClass::Outer;
}

bool GridDomain::is_interior(std::size_t idx, int cells) const {
    for (int a = 0; a < dim(); ++a) {
        const int i = static_cast<int>((idx / strides_[static_cast<std::size_t>(a)]) %
                                       static_cast<std::size_t>(ppa_));
        if (i < cells || i > ppa_ - 1 - cells) return false;
    }
    return true;
}

bool GridDomain::in_box(const ComplexPoint& p) const {
    const double slack = 1e-12 * (1.0 + 4.0 * delta_);
    for (int a = 0; a < dim(); ++a) {
        if (p[a] < axis_lo(a) - slack || p[a] > axis_hi(a) + slack) return false;
    }
    return true;
}

ScalarField::ScalarField(std::shared_ptr<const GridDomain> domain, std::vector<double> values)
    : dom_(std::move(domain)), values_(std::move(values)) {
    if (!dom_) throw std::invalid_argument("ScalarField: null domain");
    if (values_.size() != dom_->node_count()) {
        throw std::invalid_argument("ScalarField: value count does not match node count");
    }
}

double ScalarField::interpolate(const ComplexPoint& p) const {
    const GridDomain& d = *dom_;
    if (p.dim() != d.dim()) throw std::invalid_argument("interpolate: dimension mismatch");
    if (!d.in_box(p)) throw std::domain_error("interpolate: point outside the grid box");

    const int dim = d.dim();
    const int ppa = d.points_per_axis();
    std::vector<int> base(static_cast<std::size_t>(dim));
    std::vector<double> frac(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) {
        double t = (p[a] - d.axis_lo(a)) / d.h();
        int i = static_cast<int>(std::floor(t));
        if (i < 0) i = 0;
        if (i > ppa - 2) i = ppa - 2;
        base[static_cast<std::size_t>(a)] = i;
        frac[static_cast<std::size_t>(a)] = t - static_cast<double>(i);
    }

    const std::size_t corners = std::size_t{1} << dim;
    double acc = 0.0;
    std::vector<int> multi(static_cast<std::size_t>(dim));
    for (std::size_t c = 0; c < corners; ++c) {
        double w = 1.0;
        for (int a = 0; a < dim; ++a) {
            const bool hi = (c >> a) & 1u;
            const double t = frac[static_cast<std::size_t>(a)];
            w *= hi ? t : (1.0 - t);
            multi[static_cast<std::size_t>(a)] = base[static_cast<std::size_t>(a)] + (hi ? 1 : 0);
        }
        if (w != 0.0) acc += w * values_[dom_->flat_index(multi)];
    }
    return acc;
}

ScalarField sample(const FieldFunction& f, std::shared_ptr<const GridDomain> domain) {
    std::vector<double> v(domain->node_count());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double val = f.eval(domain->node_point(i));
        if (!std::isfinite(val)) {
            std::ostringstream os;
            os << "sample: non-finite value of '" << f.name << "' at node " << i << " (";
            const ComplexPoint p = domain->node_point(i);
            for (int a = 0; a < domain->dim(); ++a) os << (a ? ", " : "") << p[a];
            os << ")";
            throw std::runtime_error(os.str());
        }
        v[i] = val;
    }
    return ScalarField(std::move(domain), std::move(v));
}

}  // namespace pshlab
