#include <doctest.h>

#include <cmath>
#include <memory>

#include "pshlab/calculus.hpp"
#include "pshlab/singular_set.hpp"
#include "pshlab/viscosity.hpp"

using namespace pshlab;

namespace {

struct Fixture {
    std::shared_ptr<const GridDomain> d;
    std::vector<Direction> dirs;
    std::vector<double> radii;

    Fixture(int n, double delta, int ppa, int dir_count = 16)
        : d(std::make_shared<const GridDomain>(n, ComplexPoint::origin(n), delta, ppa)),
          dirs(direction_sample(n, dir_count, 0x5eed)) {
        radii = {d->h(), 2.0 * d->h()};
    }

    ScalarField field(double (*f)(const ComplexPoint&)) const {
        return sample({"f", f, false}, d);
    }
};

}  // namespace

TEST_CASE("subharmonic certifier passes norm-squared and constants") {
    Fixture fx(1, 0.5, 17);
    const Verdict v = certify_subharmonic(
        fx.field([](const ComplexPoint& p) { return norm_squared(p); }), fx.radii, 0.3, fx.dirs, 32);
    CHECK(v.status == Status::Pass);
    CHECK(v.witnesses.empty());
    CHECK(v.tested_node_count > 0);

    const Verdict c = certify_subharmonic(
        fx.field([](const ComplexPoint&) { return 2.0; }), fx.radii, 0.3, fx.dirs, 32);
    CHECK(c.status == Status::Pass);
}

TEST_CASE("subharmonic certifier fails concave bumps with a centered witness") {
    Fixture fx(1, 0.5, 17);
    const Verdict v = certify_subharmonic(
        fx.field([](const ComplexPoint& p) { return -norm_squared(p); }), fx.radii, 0.3, fx.dirs, 32);
    REQUIRE(v.status == Status::Fail);
    REQUIRE_FALSE(v.witnesses.empty());
    CHECK(v.witnesses.size() <= 10);
    // -|z|^2 violates by r^2 everywhere; the tolerance budget is 0.3 r^2, so
    // the excess is about 0.7 r^2 at the larger radius.
    const Witness& w = v.witnesses.front();
    const double r = fx.radii.back();
    CHECK(w.violation == doctest::Approx(0.7 * r * r).epsilon(0.05));
    // Witnesses are sorted by violation, descending.
    for (std::size_t i = 1; i < v.witnesses.size(); ++i) {
        CHECK(v.witnesses[i - 1].violation >= v.witnesses[i].violation);
    }
}

TEST_CASE("subharmonic certifier accepts |Re z1| and rejects -|Re z1|") {
    Fixture fx(1, 0.5, 33);
    CHECK(certify_subharmonic(fx.field([](const ComplexPoint& p) { return std::abs(p[0]); }),
                              fx.radii, 0.3, fx.dirs, 32)
              .status == Status::Pass);
    CHECK(certify_subharmonic(fx.field([](const ComplexPoint& p) { return -std::abs(p[0]); }),
                              fx.radii, 0.3, fx.dirs, 32)
              .status == Status::Fail);
}

TEST_CASE("certifier returns Inconclusive when no node admits a test circle") {
    Fixture fx(1, 0.5, 5);  // h = delta/2; radius 4h exceeds every clearance
    const Verdict v = certify_subharmonic(
        fx.field([](const ComplexPoint& p) { return norm_squared(p); }), {4.0 * fx.d->h()}, 0.3,
        fx.dirs, 32);
    CHECK(v.status == Status::Inconclusive);
    CHECK(v.tested_node_count == 0);
    CHECK(v.skipped_node_count == fx.d->node_count());
}

TEST_CASE("psh certifier matches the subharmonic one in one variable") {
    Fixture fx(1, 0.5, 17);
    const SingularSet none = SingularSet::empty();
    const auto fns = {+[](const ComplexPoint& p) { return norm_squared(p); },
                      +[](const ComplexPoint& p) { return std::abs(p[0]); },
                      +[](const ComplexPoint& p) { return -norm_squared(p); }};
    for (auto f : fns) {
        const ScalarField sf = fx.field(f);
        CHECK(certify_psh(sf, none, 0.0, fx.radii, fx.dirs, 0.3, 32).status ==
              certify_subharmonic(sf, fx.radii, 0.3, fx.dirs, 32).status);
    }
}

TEST_CASE("psh certifier distinguishes subharmonic from plurisubharmonic") {
    // |z1|^2 - |z2|^2 is harmonic in C^2 (so subharmonic) but not psh.
    Fixture fx(2, 0.5, 9);
    const ScalarField f = fx.field([](const ComplexPoint& p) {
        return p[0] * p[0] + p[1] * p[1] - p[2] * p[2] - p[3] * p[3];
    });
    CHECK(certify_subharmonic(f, fx.radii, 0.3, fx.dirs, 32).status == Status::Pass);
    const Verdict v = certify_psh(f, SingularSet::empty(), 0.0, fx.radii, fx.dirs, 0.3, 32);
    REQUIRE(v.status == Status::Fail);
    // The violating directions concentrate on the z2 slice.
    CHECK(v.witnesses.front().direction >= 0);
}

TEST_CASE("psh certifier skips the excluded set and certifies off it") {
    // |Re z1| is psh away from the hyperplane Re z1 = 0 (indeed pluriharmonic
    // there), and fails the pointwise Hessian test on it.
    Fixture fx(1, 0.5, 17);
    const ScalarField f = fx.field([](const ComplexPoint& p) { return std::abs(p[0]); });
    const SingularSet E = SingularSet::hyperplane(0, 0.0);
    const double margin = 2.0 * fx.d->h();
    const Verdict v = certify_psh(f, E, margin, {fx.d->h()}, fx.dirs, 0.3, 32);
    CHECK(v.status == Status::Pass);
    CHECK(v.skipped_node_count > 0);

    // -|Re z1| stays non-psh even off the kink: circles along Im z1 see a
    // strictly concave profile? No: it is harmonic off the kink in each
    // variable separately, but circles of radius > margin would cross. With
    // r <= margin the certifier must pass, because the function is
    // pluriharmonic on each open half-space.
    const ScalarField g = fx.field([](const ComplexPoint& p) { return -std::abs(p[0]); });
    CHECK(certify_psh(g, E, margin, {fx.d->h()}, fx.dirs, 0.3, 32).status == Status::Pass);
    // ...and without the exclusion it fails outright.
    CHECK(certify_psh(g, SingularSet::empty(), 0.0, {fx.d->h()}, fx.dirs, 0.3, 32).status ==
          Status::Fail);
}

TEST_CASE("intro counterexample: subharmonic fails, psh off the sphere passes") {
    auto d = std::make_shared<const GridDomain>(2, ComplexPoint::origin(2), 0.75, 17);
    const ScalarField f = sample(
        {"min(|z|^2,1)", [](const ComplexPoint& p) { return std::min(norm_squared(p), 1.0); }, false},
        d);
    const auto dirs = direction_sample(2, 16, 0x5eed);
    const double h = d->h();

    const Verdict sub = certify_subharmonic(f, {h, 2.0 * h}, 0.3, dirs, 32);
    REQUIRE(sub.status == Status::Fail);
    // Worst witnesses sit near the unit sphere.
    const double dist = std::abs(std::sqrt(norm_squared(d->node_point(sub.witnesses.front().node))) - 1.0);
    CHECK(dist <= 2.0 * h);

    const SingularSet E = SingularSet::sphere(ComplexPoint::origin(2), 1.0);
    const Verdict off = certify_psh(f, E, 2.0 * h, {2.0 * h}, dirs, 0.3, 32);
    CHECK(off.status == Status::Pass);
}

TEST_CASE("pointwise det-plus subsolution check") {
    Fixture fx(2, 0.5, 9);
    CHECK(det_plus_subsolution_check(
              fx.field([](const ComplexPoint& p) { return norm_squared(p); }), 1e-8)
              .status == Status::Pass);
    const Verdict v = det_plus_subsolution_check(
        fx.field([](const ComplexPoint& p) {
            return p[0] * p[0] + p[1] * p[1] - p[2] * p[2] - p[3] * p[3];
        }),
        1e-8);
    CHECK(v.status == Status::Fail);
    REQUIRE_FALSE(v.witnesses.empty());
    CHECK(v.witnesses.front().direction == -1);
    CHECK(v.witnesses.front().violation == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("certifier argument validation") {
    Fixture fx(1, 0.5, 9);
    const ScalarField f = fx.field([](const ComplexPoint& p) { return norm_squared(p); });
    CHECK_THROWS_AS(certify_subharmonic(f, {}, 0.3, fx.dirs, 32), std::invalid_argument);
    CHECK_THROWS_AS(certify_subharmonic(f, fx.radii, 0.3, {}, 32), std::invalid_argument);
    CHECK_THROWS_AS(certify_psh(f, SingularSet::empty(), -0.1, fx.radii, fx.dirs, 0.3, 32),
                    std::invalid_argument);
}
