#include <doctest.h>

#include <cmath>
#include <memory>

#include "pshlab/abp.hpp"
#include "pshlab/envelope.hpp"

using namespace pshlab;

namespace {

struct TrivialCase {
    // u = phi = |z|^2 around z0 = 0: the penalized difference is
    // delta*|z|^2 - delta^3 and every ABP quantity has a closed form.
    std::shared_ptr<const GridDomain> d;
    double delta;
    ScalarField v;
    ScalarField f;
    ContactSet contact;

    TrivialCase(int n, double delta_, int ppa)
        : d(std::make_shared<const GridDomain>(n, ComplexPoint::origin(n), delta_, ppa)),
          delta(delta_),
          v(sample({"v", [delta_](const ComplexPoint& p) {
                        return delta_ * norm_squared(p) - delta_ * delta_ * delta_;
                    },
                    true},
                   d)),
          f(poisson_rhs(sample({"phi", [](const ComplexPoint& p) { return norm_squared(p); }, true}, d),
                        delta_)) {
        const Obstacle ob = build_obstacle(v);
        const EnvelopeSolution sol =
            convex_envelope_iterative(ob, default_stencil(d->dim()), 1e-12 * delta_, 100000);
        contact = contact_set(sol, ob, default_contact_tol(ob, 1e-12 * delta_));
    }
};

}  // namespace

TEST_CASE("poisson_rhs is Laplacian plus the penalization term") {
    auto d = std::make_shared<const GridDomain>(2, ComplexPoint::origin(2), 0.25, 9);
    const double delta = 0.25;
    const ScalarField phi = sample({"phi", [](const ComplexPoint& p) { return norm_squared(p); }, true}, d);
    const ScalarField f = poisson_rhs(phi, delta);
    for (std::size_t i = 0; i < d->node_count(); ++i) {
        if (d->is_interior(i, 1)) {
            CHECK(f.at(i) == doctest::Approx(8.0 + 8.0 * delta).epsilon(1e-12));
        } else {
            CHECK(f.at(i) == 0.0);
        }
    }
}

TEST_CASE("trivial case: sup |v| equals delta^3 exactly and C is implied") {
    const TrivialCase tc(1, 0.2, 17);
    const AbpReport rep = abp_quantities(tc.v, tc.contact, tc.f, tc.delta);
    CHECK(rep.delta == tc.delta);
    CHECK(rep.sup_abs == doctest::Approx(std::pow(tc.delta, 3)).epsilon(1e-14));
    CHECK(rep.lower_bound_ok);
    REQUIRE(rep.contact_count > 0);
    CHECK(rep.contact_count == tc.contact.nodes.size());
    CHECK(rep.implied_C_defined);
    // integral = (count * h^2 * (4 + 4 delta)^2)^{1/2}; C = delta^3/(delta * integral).
    const double h = tc.d->h();
    const double integrand = std::pow(4.0 + 4.0 * tc.delta, 2.0);
    const double integral =
        std::sqrt(static_cast<double>(rep.contact_count) * h * h * integrand);
    CHECK(rep.contact_integral == doctest::Approx(integral).epsilon(1e-12));
    CHECK(rep.implied_C ==
          doctest::Approx(std::pow(tc.delta, 3) / (tc.delta * integral)).epsilon(1e-10));
}

TEST_CASE("contact region of the trivial case hugs the center") {
    const TrivialCase tc(1, 0.2, 17);
    // The constrained envelope pins v at the flat chord near the minimum;
    // the contact set must contain the center and stay within B_delta.
    bool has_center = false;
    for (const std::size_t node : tc.contact.nodes) {
        CHECK(tc.d->classify(node) == NodeClass::Inner);
        if (node == tc.d->center_index()) has_center = true;
    }
    CHECK(has_center);
    // At least 1% of inner nodes are in contact.
    std::size_t inner = 0;
    for (std::size_t i = 0; i < tc.d->node_count(); ++i) {
        if (tc.d->classify(i) == NodeClass::Inner) ++inner;
    }
    CHECK(static_cast<double>(tc.contact.nodes.size()) >= 0.01 * static_cast<double>(inner));
}

TEST_CASE("upper bound holds with a modest constant across deltas") {
    std::vector<AbpReport> reports;
    for (const double delta : {0.1, 0.2}) {
        const TrivialCase tc(1, delta, 17);
        reports.push_back(abp_quantities(tc.v, tc.contact, tc.f, tc.delta));
    }
    const double C = estimate_constant(reports);
    CHECK(C > 0.0);
    CHECK(C < 10.0);
    for (const AbpReport& r : reports) {
        CHECK(r.sup_abs <= C * r.delta * r.contact_integral + 1e-12);
    }
}

TEST_CASE("empty contact set leaves the constant undefined") {
    const TrivialCase tc(1, 0.2, 9);
    ContactSet empty;
    empty.mask.assign(tc.d->node_count(), 0);
    const AbpReport rep = abp_quantities(tc.v, empty, tc.f, tc.delta);
    CHECK_FALSE(rep.implied_C_defined);
    CHECK(rep.contact_count == 0);
    CHECK(rep.lower_bound_ok);  // the lower bound does not involve the contact set
    CHECK_THROWS_AS(estimate_constant({rep}), std::runtime_error);
}

TEST_CASE("lower bound flag reacts to a shrunken penalization") {
    // If v is scaled down below delta^3 the lower bound must fail.
    const TrivialCase tc(1, 0.2, 9);
    std::vector<double> shrunk(tc.d->node_count());
    for (std::size_t i = 0; i < shrunk.size(); ++i) shrunk[i] = 0.1 * tc.v.at(i);
    const AbpReport rep =
        abp_quantities(ScalarField(tc.d, shrunk), tc.contact, tc.f, tc.delta);
    CHECK_FALSE(rep.lower_bound_ok);
}
