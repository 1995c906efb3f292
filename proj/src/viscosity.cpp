#include "pshlab/viscosity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pshlab {

namespace {

// Circle quadrature as a fixed linear stencil. The angular tap offsets are
// identical for every lattice node, so cell fractions and corner weights can
// be computed once; evaluating the mean at a node is then a weighted sum of
// values at fixed flat-index offsets.
struct CircleStencil {
    std::vector<std::ptrdiff_t> offsets;
    std::vector<double> weights;
    std::vector<int> lo_index;  // per axis: admissible node index range
    std::vector<int> hi_index;

    bool eligible(const std::vector<int>& multi) const {
        for (std::size_t a = 0; a < lo_index.size(); ++a) {
            if (multi[a] < lo_index[a] || multi[a] > hi_index[a]) return false;
        }
        return true;
    }

    double mean_at(const std::vector<double>& values, std::size_t node) const {
        double acc = 0.0;
        const auto base = static_cast<std::ptrdiff_t>(node);
        for (std::size_t i = 0; i < offsets.size(); ++i) {
            acc += weights[i] * values[static_cast<std::size_t>(base + offsets[i])];
        }
        return acc;
    }
};

CircleStencil build_circle_stencil(const GridDomain& d, double r, const Direction& T, int m) {
    if (std::abs(direction_norm(T) - 1.0) > 1e-12) {
        throw std::invalid_argument("certify: direction must be a unit vector");
    }
    if (m < 8) throw std::invalid_argument("certify: m must be >= 8");
    const int dim = d.dim();
    const int n = d.n();
    const double h = d.h();

    CircleStencil st;
    st.lo_index.assign(static_cast<std::size_t>(dim), 0);
    st.hi_index.assign(static_cast<std::size_t>(dim), d.points_per_axis() - 1);
    const double inv_m = 1.0 / static_cast<double>(m);

    std::vector<int> cell(static_cast<std::size_t>(dim));
    std::vector<double> frac(static_cast<std::size_t>(dim));
    for (int k = 0; k < m; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / m;
        const double ct = std::cos(theta), st_ = std::sin(theta);
        for (int j = 0; j < n; ++j) {
            const double tx = T[static_cast<std::size_t>(j)].real();
            const double ty = T[static_cast<std::size_t>(j)].imag();
            const double ox = r * (ct * tx - st_ * ty);
            const double oy = r * (ct * ty + st_ * tx);
            const double tx_cells = ox / h;
            const double ty_cells = oy / h;
            cell[static_cast<std::size_t>(2 * j)] = static_cast<int>(std::floor(tx_cells));
            cell[static_cast<std::size_t>(2 * j + 1)] = static_cast<int>(std::floor(ty_cells));
            frac[static_cast<std::size_t>(2 * j)] =
                tx_cells - std::floor(tx_cells);
            frac[static_cast<std::size_t>(2 * j + 1)] = ty_cells - std::floor(ty_cells);
        }
        for (int a = 0; a < dim; ++a) {
            st.lo_index[static_cast<std::size_t>(a)] =
                std::max(st.lo_index[static_cast<std::size_t>(a)], -cell[static_cast<std::size_t>(a)]);
            st.hi_index[static_cast<std::size_t>(a)] =
                std::min(st.hi_index[static_cast<std::size_t>(a)],
                         d.points_per_axis() - 2 - cell[static_cast<std::size_t>(a)]);
        }
        const std::size_t corners = std::size_t{1} << dim;
        for (std::size_t c = 0; c < corners; ++c) {
            double w = inv_m;
            std::ptrdiff_t off = 0;
            for (int a = 0; a < dim; ++a) {
                const bool hi = (c >> a) & 1u;
                const double t = frac[static_cast<std::size_t>(a)];
                w *= hi ? t : (1.0 - t);
                off += static_cast<std::ptrdiff_t>(cell[static_cast<std::size_t>(a)] + (hi ? 1 : 0)) *
                       static_cast<std::ptrdiff_t>(d.stride(a));
            }
            if (w != 0.0) {
                st.offsets.push_back(off);
                st.weights.push_back(w);
            }
        }
    }
    return st;
}

void record_witness(std::vector<Witness>& worst, const Witness& w) {
    worst.push_back(w);
    std::sort(worst.begin(), worst.end(), [](const Witness& a, const Witness& b) {
        if (a.violation != b.violation) return a.violation > b.violation;
        if (a.node != b.node) return a.node < b.node;
        return a.direction < b.direction;
    });
    if (worst.size() > 10) worst.resize(10);
}

}  // namespace

Verdict certify_subharmonic(const ScalarField& field, const std::vector<double>& radii,
                            double tol, const std::vector<Direction>& directions, int m) {
    if (radii.empty()) throw std::invalid_argument("certify_subharmonic: empty radii list");
    if (directions.empty()) throw std::invalid_argument("certify_subharmonic: empty direction list");
    const GridDomain& d = field.domain();

    std::vector<std::vector<CircleStencil>> stencils;  // [radius][direction]
    for (double r : radii) {
        std::vector<CircleStencil> per_dir;
        for (const auto& T : directions) per_dir.push_back(build_circle_stencil(d, r, T, m));
        stencils.push_back(std::move(per_dir));
    }

    Verdict v;
    const double inv_dirs = 1.0 / static_cast<double>(directions.size());
    for (std::size_t node = 0; node < d.node_count(); ++node) {
        const auto multi = d.node_multi(node);
        bool fits = true;
        for (const auto& per_dir : stencils) {
            for (const auto& st : per_dir) {
                if (!st.eligible(multi)) { fits = false; break; }
            }
            if (!fits) break;
        }
        if (!fits) {
            ++v.skipped_node_count;
            continue;
        }
        ++v.tested_node_count;
        const double value = field.at(node);
        for (std::size_t ri = 0; ri < radii.size(); ++ri) {
            double mean = 0.0;
            for (const auto& st : stencils[ri]) mean += st.mean_at(field.values(), node);
            mean *= inv_dirs;
            const double budget = tol * radii[ri] * radii[ri];
            if (mean < value - budget) {
                record_witness(v.witnesses, Witness{node, -1, radii[ri], value - mean});
            }
        }
    }
    v.status = v.tested_node_count == 0 ? Status::Inconclusive
               : v.witnesses.empty()    ? Status::Pass
                                        : Status::Fail;
    return v;
}

Verdict certify_psh(const ScalarField& field, const SingularSet& exclude, double margin,
                    const std::vector<double>& radii, const std::vector<Direction>& directions,
                    double tol, int m) {
    if (radii.empty()) throw std::invalid_argument("certify_psh: empty radii list");
    if (directions.empty()) throw std::invalid_argument("certify_psh: empty direction list");
    if (margin < 0.0) throw std::invalid_argument("certify_psh: margin must be >= 0");
    const GridDomain& d = field.domain();

    std::vector<std::vector<CircleStencil>> stencils;
    for (double r : radii) {
        std::vector<CircleStencil> per_dir;
        for (const auto& T : directions) per_dir.push_back(build_circle_stencil(d, r, T, m));
        stencils.push_back(std::move(per_dir));
    }

    Verdict v;
    for (std::size_t node = 0; node < d.node_count(); ++node) {
        const auto multi = d.node_multi(node);
        bool fits = true;
        for (const auto& per_dir : stencils) {
            for (const auto& st : per_dir) {
                if (!st.eligible(multi)) { fits = false; break; }
            }
            if (!fits) break;
        }
        if (!fits || exclude.contains(d.node_point(node), margin)) {
            ++v.skipped_node_count;
            continue;
        }
        ++v.tested_node_count;
        const double value = field.at(node);
        for (std::size_t ri = 0; ri < radii.size(); ++ri) {
            const double budget = tol * radii[ri] * radii[ri];
            for (std::size_t di = 0; di < directions.size(); ++di) {
                const double mean = stencils[ri][di].mean_at(field.values(), node);
                if (mean < value - budget) {
                    record_witness(v.witnesses, Witness{node, static_cast<int>(di), radii[ri],
                                                        value - mean});
                }
            }
        }
    }
    v.status = v.tested_node_count == 0 ? Status::Inconclusive
               : v.witnesses.empty()    ? Status::Pass
                                        : Status::Fail;
    return v;
}

Verdict det_plus_subsolution_check(const ScalarField& field, double tol) {
    const GridDomain& d = field.domain();
    Verdict v;
    for (std::size_t node = 0; node < d.node_count(); ++node) {
        if (!d.is_interior(node, 1)) {
            ++v.skipped_node_count;
            continue;
        }
        ++v.tested_node_count;
        const double mn = min_eigenvalue(complex_hessian(field, node));
        if (mn < -tol) {
            record_witness(v.witnesses, Witness{node, -1, 0.0, -mn});
        }
    }
    v.status = v.tested_node_count == 0 ? Status::Inconclusive
               : v.witnesses.empty()    ? Status::Pass
                                        : Status::Fail;
    return v;
}

}  // namespace pshlab
