#include "pshlab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace pshlab {

namespace {

FieldFunction fn_norm_squared() {
    return {"norm-squared", [](const ComplexPoint& p) { return norm_squared(p); }, true};
}

FieldFunction fn_re_z1() {
    return {"re-z1", [](const ComplexPoint& p) { return p[0]; }, true};
}

FieldFunction fn_intro() {
    return {"min(|z|^2, 1)",
            [](const ComplexPoint& p) { return std::min(norm_squared(p), 1.0); }, false};
}

}  // namespace

std::vector<CatalogEntry> catalog_entries(int n) {
    std::vector<CatalogEntry> out;
    const SingularSet hyperplane = SingularSet::hyperplane(0, 0.0);

    {
        CatalogEntry e;
        e.name = "norm-squared";
        e.f = fn_norm_squared();
        e.n = n;
        e.notes = "strictly psh everywhere";
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "re-z1";
        e.f = fn_re_z1();
        e.n = n;
        e.notes = "pluriharmonic; boundary case of the psh cone";
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "im-z1";
        e.f = {"im-z1", [](const ComplexPoint& p) { return p[1]; }, true};
        e.n = n;
        e.notes = "pluriharmonic";
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "re-z1-squared";
        e.f = {"re(z1^2)", [](const ComplexPoint& p) { return p[0] * p[0] - p[1] * p[1]; }, true};
        e.n = n;
        e.notes = "pluriharmonic, zero complex Hessian with nonzero real Hessian";
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "quartic-norm";
        e.f = {"norm^4",
               [](const ComplexPoint& p) {
                   const double s = norm_squared(p);
                   return s * s;
               },
               true};
        e.n = n;
        e.notes = "smooth psh, degenerate Hessian at the origin";
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "neg-norm-squared";
        e.f = {"-norm^2", [](const ComplexPoint& p) { return -norm_squared(p); }, true};
        e.n = n;
        e.expected_subharmonic = Status::Fail;
        e.expected_psh = Status::Fail;
        e.notes = "superharmonic; fails both certifiers";
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "abs-re-z1";
        e.f = {"|re z1|", [](const ComplexPoint& p) { return std::abs(p[0]); }, false};
        e.n = n;
        e.psh_off_set = hyperplane;
        e.notes = "convex, psh everywhere including on the kink hypersurface";
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "max-re-z1-0";
        e.f = {"max(re z1, 0)", [](const ComplexPoint& p) { return std::max(p[0], 0.0); }, false};
        e.n = n;
        e.notes = "convex with a kink along a hypersurface";
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "intro-counterexample";
        e.f = fn_intro();
        e.n = n;
        e.grid_delta = 0.75;
        e.expected_subharmonic = Status::Fail;
        e.expected_psh = Status::Fail;
        e.psh_off_set = SingularSet::sphere(ComplexPoint::origin(n), 1.0);
        e.radii_cells = {2.0};
        e.notes = "psh off the unit sphere but not subharmonic across it";
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "neg-abs-re-z1";
        e.f = {"-|re z1|", [](const ComplexPoint& p) { return -std::abs(p[0]); }, false};
        e.n = n;
        e.expected_subharmonic = Status::Fail;
        e.expected_psh = Status::Fail;
        e.psh_off_set = hyperplane;
        e.notes = "pluriharmonic off the hyperplane, concave kink on it";
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.name = "norm-squared-cantor";
        e.f = fn_norm_squared();
        e.n = n;
        e.grid_delta = 0.75;
        e.psh_off_set = SingularSet::cantor_product(3, n);
        e.notes = "psh everywhere; E is a fat-looking measure-small Cantor product";
        out.push_back(std::move(e));
    }
    if (n >= 2) {
        CatalogEntry e;
        e.name = "sh-not-psh";
        e.f = {"|z1|^2 - |z2|^2",
               [](const ComplexPoint& p) {
                   return p[0] * p[0] + p[1] * p[1] - p[2] * p[2] - p[3] * p[3];
               },
               true};
        e.n = n;
        e.expected_psh = Status::Fail;
        e.dimension_generic = false;
        e.notes = "harmonic with Hessian signature (1,-1): subharmonic, not psh";
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<Scenario> scenario_entries(int n) {
    std::vector<Scenario> out;
    const ComplexPoint z0 = ComplexPoint::origin(n);

    FieldFunction zero{"0", [](const ComplexPoint&) { return 0.0; }, true};
    out.push_back(Scenario{"trivial", n, zero, zero, z0, SingularSet::empty(), 0.5,
                           "u = phi = 0; v_delta = delta|z|^2 - delta^3"});

    FieldFunction u_sq = fn_norm_squared();
    FieldFunction phi_quartic{"norm^2 + norm^4",
                              [](const ComplexPoint& p) {
                                  const double s = norm_squared(p);
                                  return s + s * s;
                              },
                              true};
    out.push_back(Scenario{"smooth-psh", n, u_sq, phi_quartic, z0,
                           SingularSet::hyperplane(0, 0.0), 0.5,
                           "quartic majorant touching |z|^2 at the origin; E a hyperplane"});

    out.push_back(Scenario{"smooth-psh-cantor", n, u_sq, phi_quartic, z0,
                           SingularSet::cantor_product(3, n), 0.5,
                           "same pair with a Cantor-product E containing z0"});

    FieldFunction phi_bad{"norm^2 + norm^4 - 0.1 (re z1)^2",
                          [](const ComplexPoint& p) {
                              const double s = norm_squared(p);
                              return s + s * s - 0.1 * p[0] * p[0];
                          },
                          true};
    out.push_back(Scenario{"negative-control", n, u_sq, phi_bad, z0, SingularSet::empty(), 0.5,
                           "corrupted majorant dips below u near z0"});

    ComplexPoint sphere_pt = ComplexPoint::origin(n);
    sphere_pt[0] = 1.0;
    out.push_back(Scenario{"precondition-violation", n, fn_intro(),
                           FieldFunction{"1", [](const ComplexPoint&) { return 1.0; }, true},
                           sphere_pt, SingularSet::sphere(ComplexPoint::origin(n), 1.0), 0.5,
                           "intro example packaged with a touching majorant on the sphere"});
    return out;
}

const CatalogEntry* find_entry(const std::vector<CatalogEntry>& entries, const std::string& name) {
    for (const auto& e : entries) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

const Scenario* find_scenario(const std::vector<Scenario>& scenarios, const std::string& name) {
    for (const auto& s : scenarios) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

EntryVerdicts certify_entry(const CatalogEntry& entry, int points_per_axis, unsigned seed) {
    const auto grid = std::make_shared<const GridDomain>(entry.n, ComplexPoint::origin(entry.n),
                                                         entry.grid_delta, points_per_axis);
    const ScalarField field = sample(entry.f, grid);
    const auto dirs = direction_sample(entry.n, std::max(8, 2 * entry.n), seed);
    std::vector<double> radii;
    for (double c : entry.radii_cells) radii.push_back(c * grid->h());
    const double tol = 0.3;
    const int m = 64;

    EntryVerdicts v;
    v.subharmonic = certify_subharmonic(field, radii, tol, dirs, m);
    v.psh = certify_psh(field, SingularSet::empty(), 0.0, radii, dirs, tol, m);
    if (entry.psh_off_set) {
        // Radii above the margin would let circles cross E, where the class
        // claim says nothing; keep r <= margin.
        std::vector<double> off_radii;
        for (double c : entry.radii_cells) {
            if (c <= entry.margin_cells) off_radii.push_back(c * grid->h());
        }
        if (off_radii.empty()) off_radii.push_back(entry.margin_cells * grid->h());
        v.psh_off = certify_psh(field, *entry.psh_off_set, entry.margin_cells * grid->h(),
                                off_radii, dirs, tol, m);
    }
    return v;
}

}  // namespace pshlab
