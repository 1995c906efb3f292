#include "pshlab/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pshlab {

std::size_t Obstacle::active_count() const {
    std::size_t c = 0;
    for (auto a : active) c += a;
    return c;
}

Obstacle build_obstacle(const ScalarField& v_delta) {
    const GridDomain& d = v_delta.domain();
    Obstacle ob;
    ob.domain = v_delta.domain_ptr();
    ob.w.assign(d.node_count(), 0.0);
    ob.active.assign(d.node_count(), 0);
    for (std::size_t i = 0; i < d.node_count(); ++i) {
        switch (d.classify(i)) {
            case NodeClass::Inner:
                ob.w[i] = v_delta.at(i);
                ob.active[i] = 1;
                break;
            case NodeClass::Collar:
                ob.w[i] = 0.0;
                ob.active[i] = 1;
                break;
            case NodeClass::Outer:
                break;
        }
    }
    return ob;
}

Obstacle make_obstacle(const ScalarField& w) {
    const GridDomain& d = w.domain();
    Obstacle ob;
    ob.domain = w.domain_ptr();
    ob.w.assign(d.node_count(), 0.0);
    ob.active.assign(d.node_count(), 0);
    for (std::size_t i = 0; i < d.node_count(); ++i) {
        if (d.classify(i) != NodeClass::Outer) {
            ob.w[i] = w.at(i);
            ob.active[i] = 1;
        }
    }
    return ob;
}

double AffineFunction::operator()(const ComplexPoint& p) const {
    double s = b;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * p.coords[i];
    return s;
}

AffineFunction nonvoid_witness(const Obstacle& obstacle) {
    const GridDomain& d = *obstacle.domain;
    double mn = 0.0;
    for (std::size_t i = 0; i < d.node_count(); ++i) {
        if (obstacle.active[i] && d.classify(i) == NodeClass::Inner) {
            mn = std::min(mn, obstacle.w[i]);
        }
    }
    return AffineFunction{std::vector<double>(static_cast<std::size_t>(d.dim()), 0.0), mn};
}

std::vector<std::vector<int>> default_stencil(int dim) {
    std::vector<std::vector<int>> st;
    for (int a = 0; a < dim; ++a) {
        std::vector<int> e(static_cast<std::size_t>(dim), 0);
        e[static_cast<std::size_t>(a)] = 1;
        st.push_back(std::move(e));
    }
    for (int a = 0; a < dim; ++a) {
        for (int b = a + 1; b < dim; ++b) {
            for (int sb : {1, -1}) {
                std::vector<int> e(static_cast<std::size_t>(dim), 0);
                e[static_cast<std::size_t>(a)] = 1;
                e[static_cast<std::size_t>(b)] = sb;
                st.push_back(std::move(e));
            }
        }
    }
    return st;
}

EnvelopeSolution convex_envelope_iterative(const Obstacle& obstacle,
                                           const std::vector<std::vector<int>>& stencil,
                                           double tol, long max_iter) {
    if (!(tol > 0.0)) throw std::invalid_argument("convex_envelope_iterative: tol must be > 0");
    const GridDomain& d = *obstacle.domain;
    const int dim = d.dim();
    const int ppa = d.points_per_axis();
    for (int a = 0; a < dim; ++a) {
        std::vector<int> axis(static_cast<std::size_t>(dim), 0);
        axis[static_cast<std::size_t>(a)] = 1;
        if (std::find(stencil.begin(), stencil.end(), axis) == stencil.end()) {
            throw std::invalid_argument("convex_envelope_iterative: stencil must contain all axis directions");
        }
    }

    // Per direction: flat offset and active-axis spans, plus geometric step
    // sizes to speed up information propagation across flat regions.
    struct Dir {
        std::ptrdiff_t offset;
        std::vector<int> v;
    };
    std::vector<Dir> dirs;
    for (const auto& e : stencil) {
        std::ptrdiff_t off = 0;
        for (int a = 0; a < dim; ++a) off += static_cast<std::ptrdiff_t>(e[static_cast<std::size_t>(a)]) *
                                             static_cast<std::ptrdiff_t>(d.stride(a));
        dirs.push_back(Dir{off, e});
    }
    std::vector<int> steps;
    for (int s = 1; s < ppa; s *= 2) steps.push_back(s);

    const std::size_t count = d.node_count();
    std::vector<double> cur(obstacle.w);
    std::vector<double> next(count, 0.0);
    std::vector<std::vector<int>> multis(count);
    std::vector<std::size_t> active_nodes;
    for (std::size_t i = 0; i < count; ++i) {
        if (obstacle.active[i]) {
            active_nodes.push_back(i);
            multis[i] = d.node_multi(i);
        }
    }

    EnvelopeSolution sol;
    double residual = std::numeric_limits<double>::infinity();
    long iter = 0;
    while (iter < max_iter) {
        ++iter;
        residual = 0.0;
        std::copy(cur.begin(), cur.end(), next.begin());
        for (std::size_t i : active_nodes) {
            const auto& multi = multis[i];
            double cand = obstacle.w[i];
            if (cur[i] < cand) cand = cur[i];
            for (const auto& dir : dirs) {
                for (int s : steps) {
                    bool in = true;
                    for (int a = 0; a < dim; ++a) {
                        const int step = s * dir.v[static_cast<std::size_t>(a)];
                        if (step == 0) continue;
                        const int idx = multi[static_cast<std::size_t>(a)];
                        if (idx + step < 0 || idx + step > ppa - 1 || idx - step < 0 ||
                            idx - step > ppa - 1) {
                            in = false;
                            break;
                        }
                    }
                    if (!in) break;  // larger steps along this direction cannot fit either
                    const std::ptrdiff_t o = dir.offset * s;
                    const std::size_t plus = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + o);
                    const std::size_t minus = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) - o);
                    if (!obstacle.active[plus] || !obstacle.active[minus]) continue;
                    const double mid = 0.5 * (cur[plus] + cur[minus]);
                    if (mid < cand) cand = mid;
                }
            }
            next[i] = cand;
            const double upd = cur[i] - cand;
            if (upd > residual) residual = upd;
        }
        cur.swap(next);
        if (residual < tol) break;
    }

    sol.gamma = std::move(cur);
    sol.iterations = iter;
    sol.final_residual = residual;
    sol.converged = residual < tol;
    if (!sol.converged) {
        throw std::runtime_error("convex_envelope_iterative: no convergence after " +
                                 std::to_string(iter) + " sweeps, residual " +
                                 std::to_string(residual));
    }
    return sol;
}

namespace {

// Revised simplex on the dual convex-combination LP:
//   min sum lambda_i w_i   s.t.  sum lambda_i ((x_i - x0)/h, 1) = (0,...,0,1), lambda >= 0.
// Artificial columns carry a big-M cost; Bland's rule guards against cycling.
class DualSimplex {
public:
    DualSimplex(const Obstacle& ob, std::size_t x0)
        : ob_(ob), d_(*ob.domain), m_(d_.dim() + 1), x0_(d_.node_point(x0)) {
        for (std::size_t i = 0; i < d_.node_count(); ++i) {
            if (ob.active[i]) cols_.push_back(i);
        }
        double wmax = 1.0;
        for (std::size_t i : cols_) wmax = std::max(wmax, std::abs(ob.w[i]));
        big_m_ = 1e8 * wmax;
    }

    double solve() {
        const int m = m_;
        std::vector<long> basis(static_cast<std::size_t>(m));
        // Artificial basis; b = (0,...,0,1) so it is feasible with the last
        // artificial at level 1 and the rest degenerate at 0.
        for (int r = 0; r < m; ++r) basis[static_cast<std::size_t>(r)] = -(r + 1);

        const long max_pivots = 200000;
        for (long pivot = 0; pivot < max_pivots; ++pivot) {
            // Basis inverse by Gauss-Jordan (m <= 5).
            std::vector<double> binv(static_cast<std::size_t>(m * m), 0.0);
            {
                std::vector<double> bm(static_cast<std::size_t>(m * m), 0.0);
                for (int c = 0; c < m; ++c) {
                    std::vector<double> col = column(basis[static_cast<std::size_t>(c)]);
                    for (int r = 0; r < m; ++r) bm[static_cast<std::size_t>(r * m + c)] = col[static_cast<std::size_t>(r)];
                }
                for (int r = 0; r < m; ++r) binv[static_cast<std::size_t>(r * m + r)] = 1.0;
                for (int c = 0; c < m; ++c) {
                    int piv = c;
                    double best = std::abs(bm[static_cast<std::size_t>(c * m + c)]);
                    for (int r = c + 1; r < m; ++r) {
                        const double v = std::abs(bm[static_cast<std::size_t>(r * m + c)]);
                        if (v > best) { best = v; piv = r; }
                    }
                    if (best < 1e-13) throw std::runtime_error("envelope LP: singular basis");
                    if (piv != c) {
                        for (int k = 0; k < m; ++k) {
                            std::swap(bm[static_cast<std::size_t>(c * m + k)], bm[static_cast<std::size_t>(piv * m + k)]);
                            std::swap(binv[static_cast<std::size_t>(c * m + k)], binv[static_cast<std::size_t>(piv * m + k)]);
                        }
                    }
                    const double dpiv = bm[static_cast<std::size_t>(c * m + c)];
                    for (int k = 0; k < m; ++k) {
                        bm[static_cast<std::size_t>(c * m + k)] /= dpiv;
                        binv[static_cast<std::size_t>(c * m + k)] /= dpiv;
                    }
                    for (int r = 0; r < m; ++r) {
                        if (r == c) continue;
                        const double f = bm[static_cast<std::size_t>(r * m + c)];
                        if (f == 0.0) continue;
                        for (int k = 0; k < m; ++k) {
                            bm[static_cast<std::size_t>(r * m + k)] -= f * bm[static_cast<std::size_t>(c * m + k)];
                            binv[static_cast<std::size_t>(r * m + k)] -= f * binv[static_cast<std::size_t>(c * m + k)];
                        }
                    }
                }
            }

            std::vector<double> xb(static_cast<std::size_t>(m), 0.0);
            for (int r = 0; r < m; ++r) xb[static_cast<std::size_t>(r)] = binv[static_cast<std::size_t>(r * m + (m - 1))];

            std::vector<double> y(static_cast<std::size_t>(m), 0.0);
            for (int r = 0; r < m; ++r) {
                const double cb = cost(basis[static_cast<std::size_t>(r)]);
                if (cb == 0.0) continue;
                for (int k = 0; k < m; ++k) y[static_cast<std::size_t>(k)] += cb * binv[static_cast<std::size_t>(r * m + k)];
            }

            // Pricing: smallest improving column id, with a tolerance scaled
            // to the magnitudes in the inner product so big-M noise cannot
            // masquerade as an improving direction.
            long entering = 0;
            bool found = false;
            for (std::size_t ci = 0; ci < cols_.size() && !found; ++ci) {
                const long id = static_cast<long>(ci) + 1;
                if (is_basic(basis, id)) continue;
                const std::vector<double> col = column(id);
                double red = cost(id);
                double scale = std::abs(red);
                for (int k = 0; k < m; ++k) {
                    const double term = y[static_cast<std::size_t>(k)] * col[static_cast<std::size_t>(k)];
                    red -= term;
                    scale += std::abs(term);
                }
                if (red < -1e-10 * (1.0 + scale)) { entering = id; found = true; }
            }
            if (!found) {
                double obj = 0.0;
                for (int r = 0; r < m; ++r) {
                    if (basis[static_cast<std::size_t>(r)] < 0 && xb[static_cast<std::size_t>(r)] > 1e-7) {
                        throw std::runtime_error("envelope LP: infeasible (artificial stuck in basis)");
                    }
                    obj += cost(basis[static_cast<std::size_t>(r)]) * xb[static_cast<std::size_t>(r)];
                }
                return obj;
            }

            const std::vector<double> col = column(entering);
            std::vector<double> dir(static_cast<std::size_t>(m), 0.0);
            for (int r = 0; r < m; ++r) {
                for (int k = 0; k < m; ++k) {
                    dir[static_cast<std::size_t>(r)] += binv[static_cast<std::size_t>(r * m + k)] * col[static_cast<std::size_t>(k)];
                }
            }
            // Lexicographic ratio test on the rows of (x_B | B^{-1}); immune
            // to cycling under any entering rule, which matters here because
            // the degenerate start (b = e_m) makes ties the common case.
            int leave = -1;
            auto lex_less = [&](int r, int s) {
                const double dr = dir[static_cast<std::size_t>(r)];
                const double ds = dir[static_cast<std::size_t>(s)];
                double a = xb[static_cast<std::size_t>(r)] / dr;
                double b = xb[static_cast<std::size_t>(s)] / ds;
                if (std::abs(a - b) > 1e-13 * (1.0 + std::abs(a) + std::abs(b))) return a < b;
                for (int k = 0; k < m; ++k) {
                    a = binv[static_cast<std::size_t>(r * m + k)] / dr;
                    b = binv[static_cast<std::size_t>(s * m + k)] / ds;
                    if (std::abs(a - b) > 1e-13 * (1.0 + std::abs(a) + std::abs(b))) return a < b;
                }
                return false;
            };
            for (int r = 0; r < m; ++r) {
                if (dir[static_cast<std::size_t>(r)] > 1e-11) {
                    if (leave < 0 || lex_less(r, leave)) leave = r;
                }
            }
            if (leave < 0) throw std::runtime_error("envelope LP: unbounded (should not happen)");
            basis[static_cast<std::size_t>(leave)] = entering;
        }
        throw std::runtime_error("envelope LP: pivot limit exceeded");
    }

private:
    // Column ids: positive k -> node cols_[k-1]; negative -r -> artificial row r-1.
    std::vector<double> column(long id) const {
        std::vector<double> c(static_cast<std::size_t>(m_), 0.0);
        if (id < 0) {
            c[static_cast<std::size_t>(-id - 1)] = 1.0;
            return c;
        }
        const ComplexPoint p = d_.node_point(cols_[static_cast<std::size_t>(id - 1)]);
        for (int a = 0; a < d_.dim(); ++a) c[static_cast<std::size_t>(a)] = (p[a] - x0_[a]) / d_.h();
        c[static_cast<std::size_t>(m_ - 1)] = 1.0;
        return c;
    }

    double cost(long id) const {
        if (id < 0) return big_m_;
        return ob_.w[cols_[static_cast<std::size_t>(id - 1)]];
    }

    static bool is_basic(const std::vector<long>& basis, long id) {
        return std::find(basis.begin(), basis.end(), id) != basis.end();
    }

    const Obstacle& ob_;
    const GridDomain& d_;
    int m_;
    ComplexPoint x0_;
    std::vector<std::size_t> cols_;
    double big_m_;
};

}  // namespace

double convex_envelope_lp(const Obstacle& obstacle, std::size_t node) {
    if (!obstacle.active[node]) {
        throw std::invalid_argument("convex_envelope_lp: node is not an obstacle node");
    }
    return DualSimplex(obstacle, node).solve();
}

ContactSet contact_set(const EnvelopeSolution& solution, const Obstacle& obstacle,
                       double contact_tol) {
    const GridDomain& d = *obstacle.domain;
    ContactSet cs;
    cs.mask.assign(d.node_count(), 0);
    cs.tol_used = contact_tol;
    for (std::size_t i = 0; i < d.node_count(); ++i) {
        if (!obstacle.active[i] || d.classify(i) != NodeClass::Inner) continue;
        if (obstacle.w[i] - solution.gamma[i] <= contact_tol) {
            cs.mask[i] = 1;
            cs.nodes.push_back(i);
        }
    }
    cs.measure = static_cast<double>(cs.nodes.size()) * std::pow(d.h(), d.dim());
    return cs;
}

double default_contact_tol(const Obstacle& obstacle, double tol) {
    const GridDomain& d = *obstacle.domain;
    double curv = 0.0;
    for (std::size_t i = 0; i < d.node_count(); ++i) {
        if (d.classify(i) != NodeClass::Inner || !d.is_interior(i, 1)) continue;
        bool ok = true;
        double lap = 0.0;
        for (int a = 0; a < d.dim() && ok; ++a) {
            const std::size_t s = d.stride(a);
            if (!obstacle.active[i + s] || !obstacle.active[i - s]) { ok = false; break; }
            lap += (obstacle.w[i + s] - 2.0 * obstacle.w[i] + obstacle.w[i - s]) / (d.h() * d.h());
        }
        if (ok) curv = std::max(curv, std::abs(lap));
    }
    return 10.0 * tol + d.h() * d.h() * curv;
}

}  // namespace pshlab
