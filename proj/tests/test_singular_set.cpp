#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "pshlab/singular_set.hpp"

using namespace pshlab;

TEST_CASE("empty set contains nothing at any margin") {
    const SingularSet e = SingularSet::empty();
    CHECK_FALSE(e.contains(ComplexPoint::origin(2), 0.0));
    CHECK_FALSE(e.contains(ComplexPoint({5.0, 5.0, 5.0, 5.0}), 100.0));
    CHECK(e.measure_upper_bound() == 0.0);
}

TEST_CASE("hyperplane membership") {
    const SingularSet hp = SingularSet::hyperplane(0, 0.0);  // {Re z1 = 0}
    CHECK(hp.contains(ComplexPoint({0.0, 1.0, 0.0, 0.0}), 0.0));  // p = (i, 0)
    CHECK_FALSE(hp.contains(ComplexPoint({0.2, 0.0, 0.0, 0.0}), 0.1));
    CHECK(hp.contains(ComplexPoint({0.2, 0.0, 0.0, 0.0}), 0.2));
    CHECK_THROWS_AS(hp.contains(ComplexPoint::origin(2), -0.1), std::invalid_argument);
}

TEST_CASE("hypersurface argument validation and semantics") {
    CHECK_THROWS_AS(SingularSet::hypersurface({"g", [](const ComplexPoint& p) { return p[0]; }, true}, 0.0),
                    std::invalid_argument);
    // Non-C1-regular level sets are still accepted as predicates.
    const SingularSet s = SingularSet::hypersurface(
        {"re z1 * im z1", [](const ComplexPoint& p) { return p[0] * p[1]; }, true}, 1.0);
    CHECK(s.contains(ComplexPoint::origin(1), 0.0));
}

TEST_CASE("cantor product measure bookkeeping") {
    CHECK(SingularSet::cantor_product(0, 1).measure_upper_bound() == doctest::Approx(1.0));
    CHECK(SingularSet::cantor_product(1, 1).measure_upper_bound() == doctest::Approx(4.0 / 9.0));
    CHECK(SingularSet::cantor_product(3, 1).measure_upper_bound() ==
          doctest::Approx(std::pow(2.0 / 3.0, 6)));
    // Non-increasing in depth, tending to zero.
    double prev = 2.0;
    for (int d = 0; d < 8; ++d) {
        const double m = SingularSet::cantor_product(d, 2).measure_upper_bound();
        CHECK(m <= prev);
        prev = m;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("cantor product membership at depth 1") {
    // Middle thirds removed on both axes of [0,1]^2; center of the removed
    // middle square is off the set.
    const SingularSet c = SingularSet::cantor_product(1, 1);
    CHECK_FALSE(c.contains(ComplexPoint({0.5, 0.5}), 0.0));
    CHECK(c.contains(ComplexPoint({0.0, 0.0}), 0.0));
    CHECK(c.contains(ComplexPoint({1.0 / 3.0, 1.0}), 0.0));
    // Distance from the middle square center to the set is sqrt(2)/6.
    CHECK_FALSE(c.contains(ComplexPoint({0.5, 0.5}), 0.23));
    CHECK(c.contains(ComplexPoint({0.5, 0.5}), 0.24));
}

TEST_CASE("margin monotonicity over random points") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const std::vector<SingularSet> sets{
        SingularSet::hyperplane(0, 0.0),
        SingularSet::sphere(ComplexPoint::origin(1), 1.0),
        SingularSet::cantor_product(2, 1),
        SingularSet::point_cloud({ComplexPoint({0.5, -0.5})}),
    };
    for (const auto& s : sets) {
        for (int k = 0; k < 200; ++k) {
            const ComplexPoint p({u(rng), u(rng)});
            const double m1 = std::abs(u(rng));
            const double m2 = m1 + std::abs(u(rng));
            if (s.contains(p, m1)) CHECK(s.contains(p, m2));
        }
    }
}

TEST_CASE("finite union is the disjunction of members") {
    const SingularSet a = SingularSet::hyperplane(0, 0.0);
    const SingularSet b = SingularSet::hyperplane(1, 0.5);
    const SingularSet u = SingularSet::finite_union({a, b});
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int k = 0; k < 300; ++k) {
        const ComplexPoint p({dist(rng), dist(rng)});
        const double m = std::abs(dist(rng)) * 0.3;
        CHECK(u.contains(p, m) == (a.contains(p, m) || b.contains(p, m)));
    }
    CHECK(u.measure_upper_bound() == 0.0);
}

TEST_CASE("grid fraction on a node-aligned hyperplane slab") {
    const GridDomain d(1, ComplexPoint::origin(1), 0.5, 9);
    const SingularSet hp = SingularSet::hyperplane(0, 0.0);
    CHECK(grid_fraction_on_set(hp, d, 0.0) == doctest::Approx(1.0 / 9.0));
    CHECK(grid_fraction_on_set(SingularSet::empty(), d, 1.0) == 0.0);
}

TEST_CASE("grid fraction on a cantor product matches direct enumeration") {
    const GridDomain d(1, ComplexPoint({0.5, 0.5}), 0.25, 27);
    const SingularSet c = SingularSet::cantor_product(2, 1);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < d.node_count(); ++i) {
        // Direct interval bookkeeping: point in the union of depth-2 intervals
        // per axis.
        const ComplexPoint p = d.node_point(i);
        auto on_axis = [](double x) {
            if (x < 0.0 || x > 1.0) return false;
            // Depth-2 middle-third intervals of [0,1].
            const double iv[4][2] = {{0, 1.0 / 9}, {2.0 / 9, 3.0 / 9}, {6.0 / 9, 7.0 / 9}, {8.0 / 9, 1.0}};
            for (const auto& s : iv) {
                if (x >= s[0] - 1e-12 && x <= s[1] + 1e-12) return true;
            }
            return false;
        };
        if (on_axis(p[0]) && on_axis(p[1])) ++hits;
    }
    const double expected = static_cast<double>(hits) / static_cast<double>(d.node_count());
    CHECK(grid_fraction_on_set(c, d, 0.0) == doctest::Approx(expected));
}
