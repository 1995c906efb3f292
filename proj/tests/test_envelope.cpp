#include <doctest.h>

#include <cmath>
#include <memory>

#include "pshlab/envelope.hpp"

using namespace pshlab;

namespace {

std::shared_ptr<const GridDomain> grid(int n, double delta, int ppa) {
    return std::make_shared<const GridDomain>(n, ComplexPoint::origin(n), delta, ppa);
}

ScalarField from(std::shared_ptr<const GridDomain> d, double (*f)(const ComplexPoint&)) {
    return sample({"w", f, false}, std::move(d));
}

}  // namespace

TEST_CASE("build_obstacle keeps inner values and zeroes the collar") {
    auto d = grid(1, 0.5, 9);
    const ScalarField f = from(d, [](const ComplexPoint& p) { return norm_squared(p) - 0.1; });
    const Obstacle ob = build_obstacle(f);
    std::size_t inner = 0, collar = 0;
    for (std::size_t i = 0; i < d->node_count(); ++i) {
        switch (d->classify(i)) {
            case NodeClass::Inner:
                CHECK(ob.active[i]);
                CHECK(ob.w[i] == f.at(i));
                ++inner;
                break;
            case NodeClass::Collar:
                CHECK(ob.active[i]);
                CHECK(ob.w[i] == 0.0);
                ++collar;
                break;
            case NodeClass::Outer:
                CHECK_FALSE(ob.active[i]);
                break;
        }
    }
    CHECK(inner > 0);
    CHECK(collar > 0);
    CHECK(ob.active_count() == inner + collar);
}

TEST_CASE("nonvoid witness is feasible for both constraint families") {
    auto d = grid(1, 0.5, 9);
    const Obstacle ob =
        build_obstacle(from(d, [](const ComplexPoint& p) { return norm_squared(p) - 0.1; }));
    const AffineFunction l = nonvoid_witness(ob);
    CHECK(l(ComplexPoint::origin(1)) <= 0.0);
    for (std::size_t i = 0; i < d->node_count(); ++i) {
        if (!ob.active[i]) continue;
        CHECK(l(d->node_point(i)) <= ob.w[i] + 1e-15);
    }
    CHECK(l(ComplexPoint::origin(1)) == doctest::Approx(-0.1));  // min_{B_delta} w at the center
}

TEST_CASE("envelope of a convex obstacle is the obstacle itself") {
    auto d = grid(1, 0.5, 9);
    const Obstacle ob = make_obstacle(from(d, [](const ComplexPoint& p) { return norm_squared(p) - 0.3; }));
    const EnvelopeSolution sol = convex_envelope_iterative(ob, default_stencil(2), 1e-12, 10000);
    CHECK(sol.converged);
    for (std::size_t i = 0; i < d->node_count(); ++i) {
        if (!ob.active[i]) continue;
        CHECK(sol.gamma[i] == doctest::Approx(ob.w[i]).epsilon(1e-10));
        // LP oracle: supporting hyperplanes are feasible, the spike at the
        // node itself is optimal.
        if (i % 7 == 0) CHECK(convex_envelope_lp(ob, i) == doctest::Approx(ob.w[i]).epsilon(1e-8));
    }
}

TEST_CASE("two symmetric dips produce a chord through the center") {
    auto d = grid(1, 0.5, 17);
    const double h = d->h();  // delta/4
    std::vector<double> w(d->node_count(), 0.0);
    const std::size_t c = d->center_index();
    const std::size_t right = c + 4 * d->stride(0);
    const std::size_t left = c - 4 * d->stride(0);
    w[left] = w[right] = -1.0;
    const ScalarField wf(d, w);
    const Obstacle ob = make_obstacle(wf);
    const EnvelopeSolution sol = convex_envelope_iterative(ob, default_stencil(2), 1e-12, 20000);
    REQUIRE(sol.converged);
    CHECK(sol.gamma[c] == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(convex_envelope_lp(ob, c) == doctest::Approx(-1.0).epsilon(1e-9));
    // Halfway node: chord value is still -1 (flat chord), envelope respects it.
    CHECK(sol.gamma[c + 2 * d->stride(0)] == doctest::Approx(-1.0).epsilon(1e-9));
    // Off the segment the envelope rises toward 0; at a node one step along
    // the y-axis the LP value is strictly greater than -1.
    CHECK(convex_envelope_lp(ob, c + d->stride(1)) > -1.0 + 1e-6);
    (void)h;
}

TEST_CASE("iterative envelope agrees with the LP oracle on a nonconvex obstacle") {
    auto d = grid(1, 0.4, 17);
    const Obstacle ob = build_obstacle(from(d, [](const ComplexPoint& p) {
        const double s = norm_squared(p);
        return 0.4 * s - 0.064 + 0.3 * std::sin(8.0 * p[0]) * 0.01;
    }));
    const double tol = 1e-10;
    const EnvelopeSolution sol = convex_envelope_iterative(ob, default_stencil(2), tol, 50000);
    REQUIRE(sol.converged);
    const double h = d->h();
    for (std::size_t i = 0; i < d->node_count(); i += 3) {
        if (!ob.active[i]) continue;
        const double lp = convex_envelope_lp(ob, i);
        // The wide-stencil envelope dominates the true constrained envelope
        // and approaches it to O(h).
        CHECK(sol.gamma[i] >= lp - 1e-8);
        CHECK(sol.gamma[i] <= lp + 2.0 * h);
    }
}

TEST_CASE("envelope invariants: bounded by w, midpoint convex, idempotent") {
    auto d = grid(1, 0.4, 17);
    const Obstacle ob = build_obstacle(from(d, [](const ComplexPoint& p) {
        return 0.4 * norm_squared(p) - 0.064;
    }));
    const double tol = 1e-11;
    const EnvelopeSolution sol = convex_envelope_iterative(ob, default_stencil(2), tol, 50000);
    REQUIRE(sol.converged);
    for (std::size_t i = 0; i < d->node_count(); ++i) {
        if (!ob.active[i]) continue;
        CHECK(sol.gamma[i] <= ob.w[i] + 1e-14);
    }
    // Midpoint convexity along both axes wherever the triple is active.
    for (std::size_t i = 0; i < d->node_count(); ++i) {
        if (!ob.active[i]) continue;
        for (int a = 0; a < 2; ++a) {
            const std::size_t s = d->stride(a);
            if (i < s || i + s >= d->node_count()) continue;
            if (!ob.active[i - s] || !ob.active[i + s]) continue;
            CHECK(sol.gamma[i] <= 0.5 * (sol.gamma[i - s] + sol.gamma[i + s]) + 10.0 * tol);
        }
    }
    // Idempotence: re-solving with w = gamma returns gamma.
    Obstacle again = ob;
    again.w = sol.gamma;
    const EnvelopeSolution sol2 = convex_envelope_iterative(again, default_stencil(2), tol, 50000);
    REQUIRE(sol2.converged);
    for (std::size_t i = 0; i < d->node_count(); ++i) {
        if (!ob.active[i]) continue;
        CHECK(sol2.gamma[i] == doctest::Approx(sol.gamma[i]).epsilon(1e-9));
    }
}

TEST_CASE("contact set: full contact for a convex obstacle, tolerance bookkeeping") {
    auto d = grid(1, 0.5, 9);
    const Obstacle ob = make_obstacle(from(d, [](const ComplexPoint& p) { return norm_squared(p) - 0.3; }));
    const EnvelopeSolution sol = convex_envelope_iterative(ob, default_stencil(2), 1e-12, 10000);
    const ContactSet cs = contact_set(sol, ob, 1e-9);
    std::size_t inner = 0;
    for (std::size_t i = 0; i < d->node_count(); ++i) {
        if (d->classify(i) == NodeClass::Inner) ++inner;
    }
    CHECK(cs.nodes.size() == inner);
    CHECK(cs.measure == doctest::Approx(static_cast<double>(inner) * d->h() * d->h()));
    CHECK(cs.tol_used == 1e-9);
    for (const std::size_t node : cs.nodes) {
        CHECK(cs.mask[node]);
        CHECK(d->classify(node) == NodeClass::Inner);
    }

    const double dct = default_contact_tol(ob, 1e-8);
    CHECK(dct >= 10.0 * 1e-8);
    // |discrete Laplacian| of |z|^2 - 0.3 is 4 exactly.
    CHECK(dct == doctest::Approx(1e-7 + d->h() * d->h() * 4.0).epsilon(1e-9));
}

TEST_CASE("envelope error handling") {
    auto d = grid(1, 0.5, 17);
    std::vector<double> w(d->node_count(), 0.0);
    w[d->center_index() + 4 * d->stride(0)] = -1.0;
    w[d->center_index() - 4 * d->stride(0)] = -1.0;
    const Obstacle ob = make_obstacle(ScalarField(d, w));
    CHECK_THROWS_AS(convex_envelope_iterative(ob, default_stencil(2), 1e-15, 1), std::runtime_error);
    CHECK_THROWS_AS(convex_envelope_iterative(ob, {{1, 1}}, 1e-6, 100), std::invalid_argument);
    CHECK_THROWS_AS(convex_envelope_iterative(ob, default_stencil(2), -1.0, 100), std::invalid_argument);
    std::size_t outer = 0;
    while (ob.active[outer]) ++outer;
    CHECK_THROWS_AS(convex_envelope_lp(ob, outer), std::invalid_argument);
}
