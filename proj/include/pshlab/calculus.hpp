#pragma once

#include <complex>
#include <vector>

#include "pshlab/geometry.hpp"

namespace pshlab {

using Complex = std::complex<double>;
using Direction = std::vector<Complex>;  // unit vector T in C^n

/// n x n complex Hermitian matrix. Construction symmetrizes with the
/// conjugate transpose, so H = H* holds exactly and the diagonal is real.
class HermitianForm {
public:
    HermitianForm(int n, std::vector<Complex> entries);

    int n() const { return n_; }
    Complex at(int j, int k) const { return a_[static_cast<std::size_t>(j * n_ + k)]; }
    double trace() const;
    double determinant() const;

    /// Real value of T* H T for a (not necessarily unit) vector T.
    double quadratic_form(const Direction& T) const;

private:
    int n_;
    std::vector<Complex> a_;  // row-major
};

/// det(A) on the PSD cone, MinusInfinity off it.
struct DetPlusValue {
    bool finite;
    double value;  // meaningful iff finite

    static DetPlusValue minus_infinity() { return {false, 0.0}; }
    static DetPlusValue of(double v) { return {true, v}; }
};

/// Second-order (4n+1)-point central-difference Laplacian at an interior node.
double laplacian(const ScalarField& field, std::size_t node);

/// Finite-difference complex Hessian H[j][k] ~ d^2/dz_j dzbar_k at an interior
/// node, via the identity 4 H[j][k] = (D_{x_j x_k} + D_{y_j y_k})
/// + i (D_{x_j y_k} - D_{y_j x_k}) on central differences.
HermitianForm complex_hessian(const ScalarField& field, std::size_t node);

/// Smallest eigenvalue: closed form for n <= 2, cyclic Jacobi for n >= 3.
double min_eigenvalue(const HermitianForm& H);

bool is_psd(const HermitianForm& H, double tol);
DetPlusValue det_plus(const HermitianForm& H, double tol);

double direction_norm(const Direction& T);

/// Trapezoidal quadrature of theta -> field(center + r e^{i theta} T) over m
/// equispaced angles. T must be unit to 1e-12; the circle must stay in the box.
double circle_mean(const ScalarField& field, const ComplexPoint& center, double r,
                   const Direction& T, int m);

/// Arithmetic mean of circle_mean over a direction sample; with directions
/// balanced in second moments this approximates the Euclidean sphere mean.
double sphere_mean(const ScalarField& field, const ComplexPoint& center, double r,
                   const std::vector<Direction>& directions, int m);

/// Deterministic direction sample: the n coordinate directions and their
/// i-multiples, then seeded unit vectors closed under cyclic coordinate shift
/// (which balances the per-coordinate second moments exactly). Returns at
/// least `count` directions.
std::vector<Direction> direction_sample(int n, int count, unsigned seed);

}  // namespace pshlab
