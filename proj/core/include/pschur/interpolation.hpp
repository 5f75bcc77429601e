#pragma once

#include <cstddef>
#include <vector>

#include "pschur/inertia.hpp"
#include "pschur/matrix.hpp"

namespace pschur {

/// Scalar factorization data on a finite subset of the disk: find S with
/// B(z) = A(z) S(z) off at most kappa points. w0 = points[base_index].
struct InterpolationInstance {
    std::vector<cdouble> points;
    std::vector<cdouble> A_values;
    std::vector<cdouble> B_values;
    std::size_t base_index = 0;

    std::size_t size() const { return points.size(); }
    cdouble w0() const { return points[base_index]; }
    void validate() const;
};

/// Disk involution phi(z) = (w0 - z)/(1 - conj(w0) z), taken as the identity
/// when w0 = 0.
struct MobiusTransform {
    cdouble w0{0.0, 0.0};
    cdouble apply(cdouble z) const;
};

/// Returns the instance moved so the base point is the origin, with the
/// transform needed to pull the solution back: S(z) = S'(phi(z)).
InterpolationInstance mobius_normalize(const InterpolationInstance& inst, MobiusTransform& record);

/// The reproducing-kernel Pontryagin space on the sample, presented in a
/// rank-basis of kernel sections. metric is the invertible Gram P of the
/// basis; coords expresses every kernel section in the basis; an element
/// with coordinates x evaluates at point i as (gram row i over basis) * x.
struct KernelSpaceRep {
    std::size_t dim = 0;
    std::vector<std::size_t> basis;
    FloatMatrix metric;
    FloatMatrix coords;
    FloatHermitian gram;
    Inertia gram_inertia;  // kappa = gram_inertia.nu
    Inertia metric_inertia;
};

KernelSpaceRep kernel_space(const InterpolationInstance& normalized);

/// Generators of the isometric relation R in (H_K (+) C) x (H_K (+) C),
/// stacked as coordinate columns (state coordinates, then the scalar slot).
struct RelationGenerators {
    FloatMatrix domain;
    FloatMatrix range;
    double max_isometry_residual = 0.0;
};

/// Builds the generators and verifies the relation is isometric against the
/// simplified closed form of the inner products (both sides must match it).
RelationGenerators build_relation(const InterpolationInstance& normalized, const KernelSpaceRep& ksp);

/// Orthogonal complements of dom R and ran R in the indefinite metrics.
struct DefectReport {
    FloatMatrix M_basis, N_basis;
    FloatMatrix M_gram, N_gram;
    bool M_positive = true;
    bool N_positive = true;
};

DefectReport defect_subspaces(const KernelSpaceRep& ksp, const RelationGenerators& rel);

/// Block operator V = [[T, F], [G, H]] over the state metric P, a partial
/// isometry in the indefinite inner products. exceptional_points are the
/// disk points 1/lambda for eigenvalues of T with |lambda| > 1; there are
/// at most nu(P) of them.
struct Colligation {
    std::size_t dim = 0;
    FloatMatrix T;
    FloatMatrix F; // dim x 1
    FloatMatrix G; // 1 x dim
    cdouble H{0.0, 0.0};
    FloatMatrix metric;
    std::vector<cdouble> exceptional_points;
};

Colligation complete_colligation(const InterpolationInstance& normalized, const KernelSpaceRep& ksp,
                                 const RelationGenerators& rel, const DefectReport& defects);

/// S(z) = H + z G (1 - z T)^{-1} F. Throws ExceptionalPoint near the
/// recorded singularities of 1 - z T.
cdouble transfer_eval(const Colligation& col, cdouble z);

/// Transfer function together with the Mobius pullback of the normalization.
struct TransferFunction {
    Colligation colligation;
    MobiusTransform pullback;

    cdouble eval(cdouble z) const;
    std::vector<cdouble> exceptional_points() const; // in original coordinates
};

/// Full pipeline: normalize, build the kernel space and relation, check the
/// defects, complete the colligation.
TransferFunction solve_rectangular(const InterpolationInstance& inst);

/// Alternative colligation from the kernel pair K1, K2; requires both sample
/// Grams to show the same number of negative squares and needs no base point
/// or defect positivity check.
TransferFunction two_kernel_solve(const InterpolationInstance& inst);

struct FactorCheckResult {
    std::vector<std::size_t> failure_indices; // points where B != A*S beyond tolerance
    double max_residual = 0.0;
    std::size_t checked = 0;
};

/// Relative-residual audit of B = A*S on the instance points. The contract
/// is at most kappa failures, never at the base point.
FactorCheckResult factor_check(const InterpolationInstance& inst, const TransferFunction& tf,
                               double tol = 1e-8);

/// Empirical Schur-class certificate: nu of K_S Grams on nested disk grids
/// avoiding exceptional points; the trace is nondecreasing by nesting.
struct CertifyReport {
    int kappa_prime = 0;
    std::vector<int> nu_per_level;
    bool within_bound = true;
    std::size_t grid_points = 0;
};

CertifyReport certify_schur_class(const TransferFunction& tf, std::size_t grid_size, int kappa);

} // namespace pschur
