#include "pshlab/singular_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <variant>

namespace pshlab {

namespace {

struct Empty {};

struct Hypersurface {
    FieldFunction g;
    double lipschitz;
};

struct CantorProduct {
    int depth;
    int n;
    ComplexPoint lower_corner;
    std::vector<std::pair<double, double>> intervals;  // on [0,1], shared by all axes
    double measure_bound;
};

struct FiniteUnion {
    std::vector<SingularSet> members;
};

struct PointCloud {
    std::vector<ComplexPoint> points;
};

std::vector<std::pair<double, double>> middle_third_intervals(int depth) {
    std::vector<std::pair<double, double>> iv{{0.0, 1.0}};
    for (int d = 0; d < depth; ++d) {
        std::vector<std::pair<double, double>> next;
        next.reserve(iv.size() * 2);
        for (const auto& [lo, hi] : iv) {
            const double len = (hi - lo) / 3.0;
            next.emplace_back(lo, lo + len);
            next.emplace_back(hi - len, hi);
        }
        iv = std::move(next);
    }
    return iv;
}

double distance_to_intervals(double x, const std::vector<std::pair<double, double>>& iv) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [lo, hi] : iv) {
        if (x < lo) best = std::min(best, lo - x);
        else if (x > hi) best = std::min(best, x - hi);
        else return 0.0;
    }
    return best;
}

}  // namespace

struct SingularSet::Impl {
    std::variant<Empty, Hypersurface, CantorProduct, FiniteUnion, PointCloud> v;
};

SingularSet::SingularSet() : impl_(std::make_shared<Impl>(Impl{Empty{}})) {}

SingularSet SingularSet::empty() { return SingularSet(); }

SingularSet SingularSet::hypersurface(FieldFunction g, double lipschitz) {
    if (!(lipschitz > 0.0)) throw std::invalid_argument("hypersurface: Lipschitz bound must be positive");
    SingularSet s;
    s.impl_ = std::make_shared<Impl>(Impl{Hypersurface{std::move(g), lipschitz}});
    return s;
}

SingularSet SingularSet::hyperplane(int axis, double value) {
    FieldFunction g{"coord[" + std::to_string(axis) + "] - " + std::to_string(value),
                    [axis, value](const ComplexPoint& p) { return p[axis] - value; }, true};
    return hypersurface(std::move(g), 1.0);
}

SingularSet SingularSet::sphere(ComplexPoint center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("sphere: radius must be positive");
    FieldFunction g{"dist to sphere r=" + std::to_string(radius),
                    [c = std::move(center), radius](const ComplexPoint& p) {
                        return distance(p, c) - radius;
                    },
                    true};
    return hypersurface(std::move(g), 1.0);
}

SingularSet SingularSet::cantor_product(int depth, int n, ComplexPoint lower_corner) {
    if (depth < 0) throw std::invalid_argument("cantor_product: depth must be >= 0");
    if (n < 1) throw std::invalid_argument("cantor_product: n must be >= 1");
    if (lower_corner.dim() != 2 * n) {
        throw std::invalid_argument("cantor_product: corner has wrong dimension");
    }
    CantorProduct c;
    c.depth = depth;
    c.n = n;
    c.lower_corner = std::move(lower_corner);
    c.intervals = middle_third_intervals(depth);
    c.measure_bound = std::pow(2.0 / 3.0, static_cast<double>(depth) * 2.0 * n);
    SingularSet s;
    s.impl_ = std::make_shared<Impl>(Impl{std::move(c)});
    return s;
}

SingularSet SingularSet::cantor_product(int depth, int n) {
    return cantor_product(depth, n, ComplexPoint::origin(n));
}

SingularSet SingularSet::finite_union(std::vector<SingularSet> members) {
    SingularSet s;
    s.impl_ = std::make_shared<Impl>(Impl{FiniteUnion{std::move(members)}});
    return s;
}

SingularSet SingularSet::point_cloud(std::vector<ComplexPoint> points) {
    SingularSet s;
    s.impl_ = std::make_shared<Impl>(Impl{PointCloud{std::move(points)}});
    return s;
}

bool SingularSet::contains(const ComplexPoint& p, double margin) const {
    if (margin < 0.0) throw std::invalid_argument("contains: margin must be >= 0");
    return std::visit(
        [&](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Empty>) {
                return false;
            } else if constexpr (std::is_same_v<T, Hypersurface>) {
                return std::abs(v.g.eval(p)) <= margin * v.lipschitz;
            } else if constexpr (std::is_same_v<T, CantorProduct>) {
                double d2 = 0.0;
                for (int a = 0; a < 2 * v.n; ++a) {
                    const double da = distance_to_intervals(p[a] - v.lower_corner[a], v.intervals);
                    d2 += da * da;
                }
                return d2 <= margin * margin;
            } else if constexpr (std::is_same_v<T, FiniteUnion>) {
                for (const auto& m : v.members) {
                    if (m.contains(p, margin)) return true;
                }
                return false;
            } else {
                for (const auto& q : v.points) {
                    if (distance(p, q) <= margin) return true;
                }
                return false;
            }
        },
        impl_->v);
}

bool SingularSet::is_empty_variant() const {
    return std::holds_alternative<Empty>(impl_->v);
}

double SingularSet::measure_upper_bound() const {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, CantorProduct>) {
                return v.measure_bound;
            } else if constexpr (std::is_same_v<T, FiniteUnion>) {
                double s = 0.0;
                for (const auto& m : v.members) s += m.measure_upper_bound();
                return s;
            } else {
                return 0.0;
            }
        },
        impl_->v);
}

std::string SingularSet::describe() const {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Empty>) {
                return "empty";
            } else if constexpr (std::is_same_v<T, Hypersurface>) {
                return "level set of " + v.g.name;
            } else if constexpr (std::is_same_v<T, CantorProduct>) {
                std::ostringstream os;
                os << "cantor product depth " << v.depth << " in C^" << v.n
                   << " (measure bound " << v.measure_bound << ")";
                return os.str();
            } else if constexpr (std::is_same_v<T, FiniteUnion>) {
                return "union of " + std::to_string(v.members.size()) + " sets";
            } else {
                return "point cloud of " + std::to_string(v.points.size()) + " points";
            }
        },
        impl_->v);
}

double grid_fraction_on_set(const SingularSet& set, const GridDomain& domain, double margin) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < domain.node_count(); ++i) {
        if (set.contains(domain.node_point(i), margin)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(domain.node_count());
}

}  // namespace pshlab
