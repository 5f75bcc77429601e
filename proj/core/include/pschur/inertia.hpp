#pragma once

#include <utility>
#include <vector>

#include "pschur/matrix.hpp"

namespace pschur {

/// Eigenvalue sign counts of a Hermitian matrix: nu negative, zeta zero,
/// pi positive. sigma = pi - nu, rho = pi + nu.
struct Inertia {
    int nu = 0;
    int zeta = 0;
    int pi = 0;

    int rank() const { return nu + pi; }
    int signature() const { return pi - nu; }
    int dim() const { return nu + zeta + pi; }

    friend bool operator==(const Inertia&, const Inertia&) = default;
};

inline constexpr double kDefaultEpsRel = 1e-9;

/// Zero-threshold policy. The exact backend never rounds; the float
/// backend treats eigenvalues of magnitude <= eps_rel * max(1, ||H||_inf)
/// as zero and refuses to certify anything within 10x of that band.
struct TolerancePolicy {
    bool exact = true;
    double eps_rel = kDefaultEpsRel;

    static TolerancePolicy exact_mode() { return {true, 0.0}; }
    static TolerancePolicy float_mode(double eps = kDefaultEpsRel) { return {false, eps}; }
};

/// Exact sign counts by symmetric-pivoted block elimination over Gaussian
/// rationals; 1x1 pivots on nonzero diagonal entries, 2x2 pivots when the
/// whole trailing diagonal vanishes. No eigenvalue extraction.
Inertia inertia(const ExactHermitian& H);

/// Float sign counts from Hermitian eigenvalues. Throws DegenerateTolerance
/// when an eigenvalue lies within 10x of the zero threshold.
Inertia inertia(const FloatHermitian& H, double eps_rel = kDefaultEpsRel);

int signature(const ExactHermitian& H);
int signature(const FloatHermitian& H, double eps_rel = kDefaultEpsRel);

/// (rank, determinant); the determinant of a Hermitian matrix is real.
/// The 0x0 matrix has rank 0 and determinant 1.
std::pair<int, Rational> rank_det(const ExactHermitian& H);
std::pair<int, double> rank_det(const FloatHermitian& H, double eps_rel = kDefaultEpsRel);

// Policy-dispatched forms. The policy mode must match the matrix backend.
inline Inertia inertia(const ExactHermitian& H, const TolerancePolicy& pol) {
    if (!pol.exact) throw InvariantViolation("float policy applied to an exact matrix");
    return inertia(H);
}
inline Inertia inertia(const FloatHermitian& H, const TolerancePolicy& pol) {
    if (pol.exact) throw InvariantViolation("exact policy applied to a float matrix");
    return inertia(H, pol.eps_rel);
}
inline int signature(const ExactHermitian& H, const TolerancePolicy& pol) {
    return inertia(H, pol).signature();
}
inline int signature(const FloatHermitian& H, const TolerancePolicy& pol) {
    return inertia(H, pol).signature();
}

/// Jacobi/Frobenius signature rule from leading principal minors
/// (|M_0|, ..., |M_{n-1}|), with |M_{-1}| = 1 implied and sign 0 = 0.
template <class R>
int signature_via_minors(const std::vector<R>& minor_dets) {
    int sigma = 0;
    R prev = R(1);
    for (const R& d : minor_dets) {
        sigma += sign(prev) * sign(d);
        prev = d;
    }
    return sigma;
}

} // namespace pschur
