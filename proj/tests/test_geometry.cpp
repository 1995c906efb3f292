#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "pshlab/geometry.hpp"

using namespace pshlab;

namespace {

std::shared_ptr<const GridDomain> grid(int n, double delta, int ppa) {
    return std::make_shared<const GridDomain>(n, ComplexPoint::origin(n), delta, ppa);
}

}  // namespace

TEST_CASE("norm_squared basic values") {
    CHECK(norm_squared(ComplexPoint::origin(2)) == 0.0);
    CHECK(norm_squared(ComplexPoint({1.0, 0.0, 0.0, 1.0})) == 2.0);  // (z1,z2) = (1, i)
    CHECK(norm_squared(ComplexPoint({0.3, 0.4, 0.0, 0.0})) == doctest::Approx(0.25));
}

TEST_CASE("grid construction and spacing") {
    auto d = grid(1, 0.5, 5);
    CHECK(d->h() == doctest::Approx(0.5));
    CHECK(d->node_count() == 25);

    auto d2 = grid(2, 0.25, 9);
    CHECK(d2->h() == doctest::Approx(0.125));
    CHECK(d2->node_count() == 6561);

    CHECK_THROWS_AS(GridDomain(1, ComplexPoint::origin(1), 0.5, 4), std::invalid_argument);
    CHECK_THROWS_AS(GridDomain(1, ComplexPoint::origin(1), -0.5, 5), std::invalid_argument);
    CHECK_THROWS_AS(GridDomain(1, ComplexPoint::origin(1), 0.0, 5), std::invalid_argument);
}

TEST_CASE("center is a node and classification partitions") {
    auto d = grid(2, 0.3, 9);
    const ComplexPoint c = d->node_point(d->center_index());
    for (int a = 0; a < d->dim(); ++a) CHECK(c[a] == doctest::Approx(0.0));

    std::size_t inner = 0, collar = 0, outer = 0;
    for (std::size_t i = 0; i < d->node_count(); ++i) {
        switch (d->classify(i)) {
            case NodeClass::Inner: ++inner; break;
            case NodeClass::Collar: ++collar; break;
            case NodeClass::Outer: ++outer; break;
        }
    }
    CHECK(inner + collar + outer == d->node_count());
    CHECK(inner > 0);
    CHECK(collar > 0);
    CHECK(outer > 0);
}

TEST_CASE("inner fraction approaches ball/box volume ratio") {
    // vol(B_delta) / vol(box) in R^2 is pi delta^2 / (4 delta)^2 = pi/16.
    auto d = grid(1, 1.0, 33);
    std::size_t inner = 0;
    for (std::size_t i = 0; i < d->node_count(); ++i) {
        if (d->classify(i) == NodeClass::Inner) ++inner;
    }
    const double frac = static_cast<double>(inner) / static_cast<double>(d->node_count());
    CHECK(frac == doctest::Approx(M_PI / 16.0).epsilon(0.05));
}

TEST_CASE("sampling: constants, corner values, pole rejection") {
    auto d = grid(1, 0.5, 5);
    const ScalarField ones = sample({"1", [](const ComplexPoint&) { return 1.0; }, true}, d);
    for (std::size_t i = 0; i < d->node_count(); ++i) CHECK(ones.at(i) == 1.0);

    const ScalarField nsq = sample({"nsq", [](const ComplexPoint& p) { return norm_squared(p); }, true}, d);
    // corner (x, y) = (1, 1)
    CHECK(nsq.at(d->flat_index({4, 4})) == doctest::Approx(2.0));

    FieldFunction logn{"log|z|", [](const ComplexPoint& p) { return 0.5 * std::log(norm_squared(p)); }, false};
    CHECK_THROWS_AS(sample(logn, d), std::runtime_error);
}

TEST_CASE("interpolation is exact at nodes and for affine functions") {
    auto d = grid(2, 0.4, 9);
    FieldFunction affine{"affine", [](const ComplexPoint& p) { return p[0] + 2.0 * p[3] - 0.7; }, true};
    const ScalarField f = sample(affine, d);
    for (std::size_t i = 0; i < d->node_count(); i += 97) {
        CHECK(f.interpolate(d->node_point(i)) == doctest::Approx(f.at(i)).epsilon(1e-13));
    }
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-0.79, 0.79);
    for (int k = 0; k < 200; ++k) {
        ComplexPoint p({u(rng), u(rng), u(rng), u(rng)});
        CHECK(f.interpolate(p) == doctest::Approx(affine.eval(p)).epsilon(1e-12));
    }
}

TEST_CASE("interpolation error bound for norm squared at cell midpoints") {
    // For f = |z|^2 the multilinear interpolation error at a cell midpoint is
    // exactly (2n) h^2 / 4 (each axis contributes h^2/4 of chord overshoot).
    auto d = grid(1, 0.5, 9);
    FieldFunction nsq{"nsq", [](const ComplexPoint& p) { return norm_squared(p); }, true};
    const ScalarField f = sample(nsq, d);
    const double h = d->h();
    const double bound = 2.0 * h * h / 4.0;
    for (double x : {-0.8, -0.3, 0.1, 0.6}) {
        for (double y : {-0.7, 0.0, 0.4}) {
            ComplexPoint mid({x + h / 2.0, y + h / 2.0});
            const double err = f.interpolate(mid) - norm_squared(mid);
            CHECK(err >= 0.0);  // convex: chords overshoot
            CHECK(err <= bound + 1e-12);
        }
    }
}

TEST_CASE("interpolation rejects points outside the box") {
    auto d = grid(1, 0.5, 5);
    FieldFunction nsq{"nsq", [](const ComplexPoint& p) { return norm_squared(p); }, true};
    const ScalarField f = sample(nsq, d);
    CHECK_THROWS_AS(f.interpolate(ComplexPoint({1.5, 0.0})), std::domain_error);
}
