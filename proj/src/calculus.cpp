#include "pshlab/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace pshlab {

HermitianForm::HermitianForm(int n, std::vector<Complex> entries) : n_(n), a_(std::move(entries)) {
    if (n < 1) throw std::invalid_argument("HermitianForm: n must be >= 1");
    if (a_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
        throw std::invalid_argument("HermitianForm: entry count must be n*n");
    }
    // Symmetrize with the conjugate transpose; the invariant then holds exactly.
    for (int j = 0; j < n_; ++j) {
        for (int k = j; k < n_; ++k) {
            const Complex m = 0.5 * (a_[static_cast<std::size_t>(j * n_ + k)] +
                                     std::conj(a_[static_cast<std::size_t>(k * n_ + j)]));
            a_[static_cast<std::size_t>(j * n_ + k)] = (j == k) ? Complex(m.real(), 0.0) : m;
            a_[static_cast<std::size_t>(k * n_ + j)] = std::conj(m);
        }
    }
}

double HermitianForm::trace() const {
    double t = 0.0;
    for (int j = 0; j < n_; ++j) t += at(j, j).real();
    return t;
}

double HermitianForm::determinant() const {
    // LU with partial pivoting; the determinant of a Hermitian matrix is real.
    std::vector<Complex> m = a_;
    const int n = n_;
    double sign = 1.0;
    Complex det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(m[static_cast<std::size_t>(col * n + col)]);
        for (int r = col + 1; r < n; ++r) {
            const double v = std::abs(m[static_cast<std::size_t>(r * n + col)]);
            if (v > best) { best = v; piv = r; }
        }
        if (best == 0.0) return 0.0;
        if (piv != col) {
            for (int c = 0; c < n; ++c) {
                std::swap(m[static_cast<std::size_t>(col * n + c)],
                          m[static_cast<std::size_t>(piv * n + c)]);
            }
            sign = -sign;
        }
        const Complex d = m[static_cast<std::size_t>(col * n + col)];
        det *= d;
        for (int r = col + 1; r < n; ++r) {
            const Complex f = m[static_cast<std::size_t>(r * n + col)] / d;
            for (int c = col; c < n; ++c) {
                m[static_cast<std::size_t>(r * n + c)] -= f * m[static_cast<std::size_t>(col * n + c)];
            }
        }
    }
    return sign * det.real();
}

double HermitianForm::quadratic_form(const Direction& T) const {
    if (static_cast<int>(T.size()) != n_) {
        throw std::invalid_argument("quadratic_form: direction has wrong dimension");
    }
    Complex s = 0.0;
    for (int j = 0; j < n_; ++j) {
        for (int k = 0; k < n_; ++k) {
            s += std::conj(T[static_cast<std::size_t>(j)]) * at(j, k) * T[static_cast<std::size_t>(k)];
        }
    }
    return s.real();
}

namespace {

void require_interior(const ScalarField& field, std::size_t node) {
    if (!field.domain().is_interior(node, 1)) {
        throw std::domain_error("difference stencil at a boundary node");
    }
}

// Pure second difference along axis a.
double second_diff(const ScalarField& f, std::size_t node, int a, double h) {
    const std::size_t s = f.domain().stride(a);
    return (f.at(node + s) - 2.0 * f.at(node) + f.at(node - s)) / (h * h);
}

// Mixed four-point cross difference along distinct axes a, b.
double cross_diff(const ScalarField& f, std::size_t node, int a, int b, double h) {
    const std::size_t sa = f.domain().stride(a);
    const std::size_t sb = f.domain().stride(b);
    return (f.at(node + sa + sb) - f.at(node + sa - sb) - f.at(node - sa + sb) +
            f.at(node - sa - sb)) /
           (4.0 * h * h);
}

double diff2(const ScalarField& f, std::size_t node, int a, int b, double h) {
    return (a == b) ? second_diff(f, node, a, h) : cross_diff(f, node, a, b, h);
}

}  // namespace

double laplacian(const ScalarField& field, std::size_t node) {
    require_interior(field, node);
    const double h = field.domain().h();
    double s = 0.0;
    for (int a = 0; a < field.domain().dim(); ++a) s += second_diff(field, node, a, h);
    return s;
}

HermitianForm complex_hessian(const ScalarField& field, std::size_t node) {
    require_interior(field, node);
    const int n = field.domain().n();
    const double h = field.domain().h();
    std::vector<Complex> e(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const int xj = 2 * j, yj = 2 * j + 1;
        for (int k = 0; k < n; ++k) {
            const int xk = 2 * k, yk = 2 * k + 1;
            const double re = diff2(field, node, xj, xk, h) + diff2(field, node, yj, yk, h);
            const double im = diff2(field, node, xj, yk, h) - diff2(field, node, yj, xk, h);
            e[static_cast<std::size_t>(j * n + k)] = 0.25 * Complex(re, im);
        }
    }
    return HermitianForm(n, std::move(e));
}

namespace {

// Cyclic Jacobi diagonalization for Hermitian matrices, n >= 3.
double jacobi_min_eigenvalue(const HermitianForm& H) {
    const int n = H.n();
    std::vector<Complex> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    double scale = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            a[static_cast<std::size_t>(j * n + k)] = H.at(j, k);
            scale = std::max(scale, std::abs(H.at(j, k)));
        }
    }
    if (scale == 0.0) return 0.0;
    auto A = [&](int j, int k) -> Complex& { return a[static_cast<std::size_t>(j * n + k)]; };

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) off += std::norm(A(p, q));
        }
        if (std::sqrt(off) <= 1e-13 * scale * n) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = A(p, q);
                if (std::abs(apq) == 0.0) continue;
                // Phase out apq, then apply the real Jacobi rotation.
                const Complex phase = apq / std::abs(apq);
                const double app = A(p, p).real();
                const double aqq = A(q, q).real();
                const double tau = (aqq - app) / (2.0 * std::abs(apq));
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex sp = s * phase;  // rotation applied to column q
                for (int r = 0; r < n; ++r) {
                    const Complex arp = A(r, p);
                    const Complex arq = A(r, q);
                    A(r, p) = c * arp - std::conj(sp) * arq;
                    A(r, q) = sp * arp + c * arq;
                }
                for (int r = 0; r < n; ++r) {
                    const Complex apr = A(p, r);
                    const Complex aqr = A(q, r);
                    A(p, r) = c * apr - sp * aqr;
                    A(q, r) = std::conj(sp) * apr + c * aqr;
                }
                A(p, q) = 0.0;
                A(q, p) = 0.0;
            }
        }
    }
    double mn = A(0, 0).real();
    for (int j = 1; j < n; ++j) mn = std::min(mn, A(j, j).real());
    return mn;
}

}  // namespace

double min_eigenvalue(const HermitianForm& H) {
    const int n = H.n();
    if (n == 1) return H.at(0, 0).real();
    if (n == 2) {
        const double a = H.at(0, 0).real();
        const double d = H.at(1, 1).real();
        const double mid = 0.5 * (a + d);
        const double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(H.at(0, 1)));
        return mid - disc;
    }
    return jacobi_min_eigenvalue(H);
}

bool is_psd(const HermitianForm& H, double tol) { return min_eigenvalue(H) >= -tol; }

DetPlusValue det_plus(const HermitianForm& H, double tol) {
    if (!is_psd(H, tol)) return DetPlusValue::minus_infinity();
    return DetPlusValue::of(H.determinant());
}

double direction_norm(const Direction& T) {
    double s = 0.0;
    for (const Complex& t : T) s += std::norm(t);
    return std::sqrt(s);
}

double circle_mean(const ScalarField& field, const ComplexPoint& center, double r,
                   const Direction& T, int m) {
    const int n = field.domain().n();
    if (static_cast<int>(T.size()) != n) {
        throw std::invalid_argument("circle_mean: direction has wrong dimension");
    }
    if (std::abs(direction_norm(T) - 1.0) > 1e-12) {
        throw std::invalid_argument("circle_mean: direction must be a unit vector");
    }
    if (m < 8) throw std::invalid_argument("circle_mean: m must be >= 8");
    if (!(r > 0.0)) throw std::invalid_argument("circle_mean: r must be positive");

    double acc = 0.0;
    ComplexPoint p = center;
    for (int k = 0; k < m; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / m;
        const double ct = std::cos(theta), st = std::sin(theta);
        for (int j = 0; j < n; ++j) {
            const double tx = T[static_cast<std::size_t>(j)].real();
            const double ty = T[static_cast<std::size_t>(j)].imag();
            p[2 * j] = center[2 * j] + r * (ct * tx - st * ty);
            p[2 * j + 1] = center[2 * j + 1] + r * (ct * ty + st * tx);
        }
        if (!field.domain().in_box(p)) {
            throw std::domain_error("circle_mean: circle exits the grid box");
        }
        acc += field.interpolate(p);
    }
    return acc / static_cast<double>(m);
}

double sphere_mean(const ScalarField& field, const ComplexPoint& center, double r,
                   const std::vector<Direction>& directions, int m) {
    if (directions.empty()) throw std::invalid_argument("sphere_mean: empty direction list");
    double acc = 0.0;
    for (const auto& T : directions) acc += circle_mean(field, center, r, T, m);
    return acc / static_cast<double>(directions.size());
}

std::vector<Direction> direction_sample(int n, int count, unsigned seed) {
    if (n < 1) throw std::invalid_argument("direction_sample: n must be >= 1");
    if (count < 1) throw std::invalid_argument("direction_sample: count must be >= 1");
    std::vector<Direction> dirs;

    // The 2n coordinate directions e_j and i*e_j.
    for (int j = 0; j < n; ++j) {
        Direction e(static_cast<std::size_t>(n), Complex(0.0, 0.0));
        e[static_cast<std::size_t>(j)] = Complex(1.0, 0.0);
        dirs.push_back(e);
        e[static_cast<std::size_t>(j)] = Complex(0.0, 1.0);
        dirs.push_back(std::move(e));
    }

    // Seeded unit vectors; each base vector enters with all n of its cyclic
    // coordinate shifts, so sums of |T_j|^2 over the sample are equal across j.
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    while (static_cast<int>(dirs.size()) < count) {
        Direction base(static_cast<std::size_t>(n));
        double norm2 = 0.0;
        for (int j = 0; j < n; ++j) {
            base[static_cast<std::size_t>(j)] = Complex(gauss(rng), gauss(rng));
            norm2 += std::norm(base[static_cast<std::size_t>(j)]);
        }
        if (norm2 < 1e-12) continue;
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& t : base) t *= inv;
        for (int shift = 0; shift < n; ++shift) {
            Direction d(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) {
                d[static_cast<std::size_t>((j + shift) % n)] = base[static_cast<std::size_t>(j)];
            }
            dirs.push_back(std::move(d));
        }
    }
    return dirs;
}

}  // namespace pshlab
