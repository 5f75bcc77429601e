#include "pschur/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include <Eigen/Dense>

namespace pschur {

namespace {

using EMat = Eigen::MatrixXcd;
using EVec = Eigen::VectorXcd;

EMat to_eigen(const FloatMatrix& m) {
    EMat out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return out;
}

FloatMatrix from_eigen(const EMat& m) {
    FloatMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
    return out;
}

// Sign counts with an explicit zero threshold and no certification band;
// pipeline internals need a verdict, not a certificate.
Inertia counted_inertia(const EMat& m, double eps_rel = 1e-9) {
    EMat h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<EMat> solver(h, Eigen::EigenvaluesOnly);
    const double tau = eps_rel * std::max(1.0, h.cwiseAbs().maxCoeff() * static_cast<double>(h.rows()));
    Inertia in;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double ev = solver.eigenvalues()(i);
        if (std::abs(ev) <= tau)
            ++in.zeta;
        else if (ev < 0)
            ++in.nu;
        else
            ++in.pi;
    }
    return in;
}

// Greedy symmetric complete pivoting on a Hermitian matrix: returns indices
// of a maximal nonsingular principal submatrix (a rank-basis).
std::vector<std::size_t> pivoted_rank_basis(EMat w, double tol) {
    const std::size_t n = static_cast<std::size_t>(w.rows());
    std::vector<bool> active(n, true);
    std::vector<std::size_t> selected;

    while (true) {
        std::optional<std::size_t> best;
        for (std::size_t p = 0; p < n; ++p)
            if (active[p] && (!best || std::abs(w(p, p)) > std::abs(w(*best, *best)))) best = p;
        if (best && std::abs(w(*best, *best)) > tol) {
            const std::size_t p = *best;
            active[p] = false;
            selected.push_back(p);
            const cdouble piv = w(p, p);
            for (std::size_t a = 0; a < n; ++a) {
                if (!active[a]) continue;
                for (std::size_t b = 0; b < n; ++b)
                    if (active[b]) w(a, b) -= w(a, p) * std::conj(w(b, p)) / piv;
            }
            continue;
        }
        // All active diagonals are negligible; look for an off-diagonal pivot.
        std::optional<std::pair<std::size_t, std::size_t>> od;
        double best_od = tol;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (active[i] && active[j] && std::abs(w(i, j)) > best_od) {
                    best_od = std::abs(w(i, j));
                    od = {i, j};
                }
        if (!od) break;
        const auto [i, j] = *od;
        active[i] = active[j] = false;
        selected.push_back(j);
        selected.push_back(i);
        const cdouble e11 = w(j, j), e12 = w(j, i), e21 = w(i, j), e22 = w(i, i);
        const cdouble det = e11 * e22 - e12 * e21;
        for (std::size_t a = 0; a < n; ++a) {
            if (!active[a]) continue;
            for (std::size_t b = 0; b < n; ++b) {
                if (!active[b]) continue;
                const cdouble x1 = w(a, j), x2 = w(a, i);
                const cdouble y1 = std::conj(w(b, j)), y2 = std::conj(w(b, i));
                // [x1 x2] E^{-1} [y1; y2]
                w(a, b) -= (x1 * (e22 * y1 - e12 * y2) + x2 * (-e21 * y1 + e11 * y2)) / det;
            }
        }
    }
    std::sort(selected.begin(), selected.end());
    return selected;
}

EMat state_metric_J(const EMat& p) {
    EMat j = EMat::Zero(p.rows() + 1, p.cols() + 1);
    j.topLeftCorner(p.rows(), p.cols()) = p;
    j(p.rows(), p.cols()) = 1.0;
    return j;
}

double frob(const EMat& m) { return m.norm(); }

KernelSpaceRep kernel_space_from_gram(FloatHermitian gram) {
    KernelSpaceRep ksp;
    ksp.gram = std::move(gram);
    const EMat g = to_eigen(ksp.gram.matrix());
    const double tol = 1e-10 * std::max(1.0, g.cwiseAbs().maxCoeff());

    ksp.basis = pivoted_rank_basis(g, tol);
    ksp.dim = ksp.basis.size();
    ksp.gram_inertia = counted_inertia(g);

    EMat p(ksp.dim, ksp.dim);
    for (std::size_t i = 0; i < ksp.dim; ++i)
        for (std::size_t j = 0; j < ksp.dim; ++j)
            p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                g(static_cast<Eigen::Index>(ksp.basis[i]), static_cast<Eigen::Index>(ksp.basis[j]));

    EMat rows(ksp.dim, g.cols());
    for (std::size_t i = 0; i < ksp.dim; ++i)
        rows.row(static_cast<Eigen::Index>(i)) = g.row(static_cast<Eigen::Index>(ksp.basis[i]));

    ksp.metric = from_eigen(p);
    ksp.metric_inertia = counted_inertia(p);
    if (ksp.metric_inertia.nu != ksp.gram_inertia.nu ||
        ksp.metric_inertia.rank() != static_cast<int>(ksp.dim) ||
        ksp.gram_inertia.rank() != static_cast<int>(ksp.dim))
        throw Error("kernel_space: rank-basis metric does not reproduce the Gram inertia");

    ksp.coords = from_eigen(Eigen::FullPivLU<EMat>(p).solve(rows));
    return ksp;
}

// Value of the element with coordinates x at sample index i.
cdouble evaluate_at(const KernelSpaceRep& ksp, const EVec& x, std::size_t i) {
    cdouble v = 0.0;
    for (std::size_t k = 0; k < ksp.dim; ++k)
        v += ksp.gram(i, ksp.basis[k]) * x(static_cast<Eigen::Index>(k));
    return v;
}

struct CompletionChecks {
    double partial_isometry = 0.0;
    double mapping = 0.0;
};

// Builds the partial isometry V with V* acting by from -> to on the span of
// `from` and by zero on its metric-orthogonal complement; returns V.
EMat complete_partial_isometry(const EMat& from, const EMat& to, const EMat& j,
                               CompletionChecks& checks) {
    Eigen::ColPivHouseholderQR<EMat> qr(from);
    qr.setThreshold(1e-10);
    const Eigen::Index rk = qr.rank();
    if (rk == 0) return EMat::Zero(j.rows(), j.cols());

    const EMat from_piv = from * qr.colsPermutation();
    const EMat to_piv = to * qr.colsPermutation();
    const EMat from_b = from_piv.leftCols(rk);
    const EMat to_b = to_piv.leftCols(rk);

    // Dependencies among generators must map consistently.
    const EMat w = from_b.colPivHouseholderQr().solve(from_piv);
    const double scale = std::max({1.0, frob(from_piv), frob(to_piv)});
    if (frob(from_b * w - from_piv) > 1e-8 * scale || frob(to_b * w - to_piv) > 1e-8 * scale)
        throw NumericallySingularCompletion("relation closure is not single-valued within tolerance");

    const EMat gram_b = from_b.adjoint() * j * from_b;
    Eigen::JacobiSVD<EMat> svd(gram_b);
    if (svd.singularValues()(svd.singularValues().size() - 1) <
        1e-12 * std::max(1.0, svd.singularValues()(0)))
        throw NumericallySingularCompletion("generator Gram is numerically singular");

    Eigen::FullPivLU<EMat> gram_lu(gram_b);
    const EMat vstar = to_b * gram_lu.solve(from_b.adjoint() * j);

    // Defining mapping and the partial-isometry identity.
    checks.mapping = frob(vstar * from - to) / scale;
    const EMat v = Eigen::FullPivLU<EMat>(j).solve(vstar.adjoint() * j);
    const EMat a = vstar * v;
    checks.partial_isometry = frob(a * a - a) / std::max(1.0, frob(a));
    if (checks.mapping > 1e-8)
        throw NumericallySingularCompletion("completion does not reproduce the relation");
    if (checks.partial_isometry > 1e-8)
        throw NumericallySingularCompletion("partial isometry identity failed");
    return v;
}

Colligation extract_blocks(const EMat& v, const KernelSpaceRep& ksp) {
    Colligation col;
    col.dim = ksp.dim;
    const Eigen::Index d = static_cast<Eigen::Index>(ksp.dim);
    col.T = from_eigen(v.topLeftCorner(d, d));
    col.F = from_eigen(v.topRightCorner(d, 1));
    col.G = from_eigen(v.bottomLeftCorner(1, d));
    col.H = v(d, d);
    col.metric = ksp.metric;

    if (d > 0) {
        Eigen::ComplexEigenSolver<EMat> eig(v.topLeftCorner(d, d));
        for (Eigen::Index i = 0; i < d; ++i) {
            const cdouble lambda = eig.eigenvalues()(i);
            if (std::abs(lambda) > 1.0 + 1e-9) col.exceptional_points.push_back(1.0 / lambda);
        }
    }
    if (static_cast<int>(col.exceptional_points.size()) > ksp.metric_inertia.nu)
        throw Error("colligation: more exceptional points than negative squares");
    return col;
}

} // namespace

void InterpolationInstance::validate() const {
    if (points.empty() || points.size() != A_values.size() || points.size() != B_values.size())
        throw InvariantViolation("interpolation instance: mismatched point/value counts");
    if (base_index >= points.size())
        throw InvariantViolation("interpolation instance: base index out of range");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(std::abs(points[i]) < 1.0))
            throw InvariantViolation("interpolation instance: point outside the open disk");
        if (!std::isfinite(A_values[i].real()) || !std::isfinite(A_values[i].imag()) ||
            !std::isfinite(B_values[i].real()) || !std::isfinite(B_values[i].imag()))
            throw InvariantViolation("interpolation instance: non-finite value");
        for (std::size_t j = 0; j < i; ++j)
            if (points[i] == points[j]) throw InvariantViolation("interpolation instance: duplicate points");
    }
}

cdouble MobiusTransform::apply(cdouble z) const {
    if (w0 == cdouble(0.0, 0.0)) return z;
    return (w0 - z) / (1.0 - std::conj(w0) * z);
}

InterpolationInstance mobius_normalize(const InterpolationInstance& inst, MobiusTransform& record) {
    inst.validate();
    record.w0 = inst.w0();
    InterpolationInstance out = inst;
    for (auto& z : out.points) z = record.apply(z);
    out.points[out.base_index] = cdouble(0.0, 0.0); // phi(w0) = 0 exactly
    return out;
}

KernelSpaceRep kernel_space(const InterpolationInstance& normalized) {
    normalized.validate();
    const std::size_t m = normalized.size();
    FloatMatrix g(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            g(i, j) = (normalized.A_values[i] * std::conj(normalized.A_values[j]) -
                       normalized.B_values[i] * std::conj(normalized.B_values[j])) /
                      (1.0 - normalized.points[i] * std::conj(normalized.points[j]));
    return kernel_space_from_gram(FloatHermitian(std::move(g)));
}

RelationGenerators build_relation(const InterpolationInstance& normalized, const KernelSpaceRep& ksp) {
    const std::size_t m = normalized.size();
    const std::size_t base = normalized.base_index;
    if (std::abs(normalized.points[base]) > 1e-14)
        throw PreconditionViolated("build_relation: instance must be normalized (w0 = 0)");

    const EMat coords = to_eigen(ksp.coords);
    const EMat p = to_eigen(ksp.metric);
    const cdouble a0 = normalized.A_values[base];
    const cdouble b0 = normalized.B_values[base];

    const std::size_t gens = m; // one per alpha != 0, plus the u2 generator
    EMat domain = EMat::Zero(static_cast<Eigen::Index>(ksp.dim) + 1, static_cast<Eigen::Index>(gens));
    EMat range = EMat::Zero(static_cast<Eigen::Index>(ksp.dim) + 1, static_cast<Eigen::Index>(gens));

    // Bookkeeping for the closed-form check: which (alpha, u1, u2) each
    // generator carries.
    std::vector<std::size_t> alpha_of(gens, base);
    std::vector<bool> is_u1(gens, false);

    std::size_t g = 0;
    for (std::size_t a = 0; a < m; ++a) {
        if (a == base) continue;
        const cdouble alpha = normalized.points[a];
        const cdouble abar = std::conj(alpha);
        domain.col(g).head(static_cast<Eigen::Index>(ksp.dim)) = coords.col(static_cast<Eigen::Index>(a));
        domain(static_cast<Eigen::Index>(ksp.dim), static_cast<Eigen::Index>(g)) =
            (std::conj(normalized.A_values[a]) - std::conj(a0)) / abar;
        range.col(g).head(static_cast<Eigen::Index>(ksp.dim)) =
            (coords.col(static_cast<Eigen::Index>(a)) - coords.col(static_cast<Eigen::Index>(base))) / abar;
        range(static_cast<Eigen::Index>(ksp.dim), static_cast<Eigen::Index>(g)) =
            (std::conj(normalized.B_values[a]) - std::conj(b0)) / abar;
        alpha_of[g] = a;
        is_u1[g] = true;
        ++g;
    }
    domain(static_cast<Eigen::Index>(ksp.dim), static_cast<Eigen::Index>(g)) = std::conj(a0);
    range.col(g).head(static_cast<Eigen::Index>(ksp.dim)) = coords.col(static_cast<Eigen::Index>(base));
    range(static_cast<Eigen::Index>(ksp.dim), static_cast<Eigen::Index>(g)) = std::conj(b0);

    // Both inner products must reduce to the simplified closed form.
    const EMat j = state_metric_J(p);
    const EMat dom_gram = domain.adjoint() * j * domain;
    const EMat ran_gram = range.adjoint() * j * range;

    RelationGenerators rel;
    double scale = 1.0;
    for (std::size_t x = 0; x < gens; ++x)
        for (std::size_t y = 0; y < gens; ++y) {
            const std::size_t a = alpha_of[x];
            const std::size_t b = alpha_of[y];
            cdouble closed = 0.0;
            if (is_u1[x] && is_u1[y]) {
                const cdouble alpha = normalized.points[a];
                const cdouble beta = normalized.points[b];
                const cdouble k_ab = ksp.gram(b, a);
                closed += k_ab + (normalized.A_values[b] - a0) *
                                     (std::conj(normalized.A_values[a]) - std::conj(a0)) /
                                     (std::conj(alpha) * beta);
            }
            if (is_u1[x] && !is_u1[y])
                closed += a0 * (std::conj(normalized.A_values[a]) - std::conj(a0)) /
                          std::conj(normalized.points[a]);
            if (!is_u1[x] && is_u1[y])
                closed += std::conj(a0) * (normalized.A_values[b] - a0) / normalized.points[b];
            if (!is_u1[x] && !is_u1[y]) closed += a0 * std::conj(a0);

            // <gen_x, gen_y> = (gen_y)^H J (gen_x)
            const cdouble dom_val = dom_gram(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x));
            const cdouble ran_val = ran_gram(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x));
            scale = std::max({scale, std::abs(closed)});
            rel.max_isometry_residual = std::max({rel.max_isometry_residual,
                                                  std::abs(dom_val - closed), std::abs(ran_val - closed)});
        }
    if (rel.max_isometry_residual > 1e-10 * scale)
        throw IsometryResidualTooLarge("relation inner products do not match the closed form");

    rel.domain = from_eigen(domain);
    rel.range = from_eigen(range);
    return rel;
}

namespace {

std::pair<FloatMatrix, FloatMatrix> metric_complement(const EMat& generators, const EMat& j) {
    Eigen::FullPivLU<EMat> lu(generators.adjoint() * j);
    lu.setThreshold(1e-10);
    if (lu.dimensionOfKernel() == 0)
        return {from_eigen(EMat::Zero(j.rows(), 0)), from_eigen(EMat::Zero(0, 0))};
    EMat kernel = lu.kernel();
    Eigen::HouseholderQR<EMat> qr(kernel);
    EMat q = qr.householderQ() * EMat::Identity(kernel.rows(), kernel.cols());
    return {from_eigen(q), from_eigen(EMat(q.adjoint() * j * q))};
}

bool gram_positive(const FloatMatrix& gram, double j_scale) {
    if (gram.rows() == 0) return true;
    Eigen::SelfAdjointEigenSolver<EMat> eig(to_eigen(gram), Eigen::EigenvaluesOnly);
    return eig.eigenvalues()(0) > -1e-9 * std::max(1.0, j_scale);
}

} // namespace

DefectReport defect_subspaces(const KernelSpaceRep& ksp, const RelationGenerators& rel) {
    const EMat j = state_metric_J(to_eigen(ksp.metric));
    const double j_scale = j.cwiseAbs().maxCoeff();

    DefectReport report;
    std::tie(report.M_basis, report.M_gram) = metric_complement(to_eigen(rel.domain), j);
    std::tie(report.N_basis, report.N_gram) = metric_complement(to_eigen(rel.range), j);
    report.M_positive = gram_positive(report.M_gram, j_scale);
    report.N_positive = gram_positive(report.N_gram, j_scale);
    return report;
}

Colligation complete_colligation(const InterpolationInstance& normalized, const KernelSpaceRep& ksp,
                                 const RelationGenerators& rel, const DefectReport& defects) {
    if (!defects.M_positive)
        throw DefectNotPositive("defect subspace M is not nonnegative; hypotheses fail");
    if (!defects.N_positive)
        throw DefectNotPositive("defect subspace N is not nonnegative; hypotheses fail");

    const EMat j = state_metric_J(to_eigen(ksp.metric));
    CompletionChecks checks;
    // V* maps domain generators to range generators and kills the complement.
    const EMat v = complete_partial_isometry(to_eigen(rel.domain), to_eigen(rel.range), j, checks);
    Colligation col = extract_blocks(v, ksp);

    // The block formulas relating V to function evaluation must hold on the
    // sample. h runs over the kernel sections, f over the scalar slot.
    const std::size_t m = normalized.size();
    const std::size_t base = normalized.base_index;
    const EMat coords = to_eigen(ksp.coords);
    const EMat t = to_eigen(col.T);
    const EMat f_blk = to_eigen(col.F);
    const EMat g_blk = to_eigen(col.G);
    const cdouble a0 = normalized.A_values[base];
    const cdouble b0 = normalized.B_values[base];

    double residual = 0.0;
    double scale = 1.0;
    for (std::size_t sec = 0; sec < m; ++sec) {
        const EVec h = coords.col(static_cast<Eigen::Index>(sec));
        const cdouble gh = (g_blk * h)(0);
        for (std::size_t i = 0; i < m; ++i) {
            const cdouble hz = evaluate_at(ksp, h, i);
            scale = std::max(scale, std::abs(hz));
            if (i == base) {
                residual = std::max(residual, std::abs(a0 * gh - hz)); // A(0) G h = h(0)
                continue;
            }
            const cdouble z = normalized.points[i];
            const cdouble lhs = evaluate_at(ksp, EVec(t * h), i);
            const cdouble rhs = (hz - normalized.A_values[i] * gh) / z;
            residual = std::max(residual, std::abs(lhs - rhs));
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (i == base) {
            residual = std::max(residual, std::abs(a0 * col.H - b0)); // A(0) H = B(0)
            continue;
        }
        const cdouble z = normalized.points[i];
        const cdouble lhs = evaluate_at(ksp, EVec(f_blk.col(0)), i);
        const cdouble rhs = (normalized.B_values[i] - normalized.A_values[i] * col.H) / z;
        residual = std::max(residual, std::abs(lhs - rhs));
    }
    if (residual > 1e-9 * scale * 10.0)
        throw NumericallySingularCompletion("colligation block formulas failed on the sample");
    return col;
}

cdouble transfer_eval(const Colligation& col, cdouble z) {
    for (const cdouble& e : col.exceptional_points)
        if (std::abs(z - e) <= 1e-9) throw ExceptionalPoint("evaluation at an exceptional point");
    if (col.dim == 0) return col.H;
    const EMat t = to_eigen(col.T);
    const EMat f = to_eigen(col.F);
    const EMat g = to_eigen(col.G);
    const EMat lhs = EMat::Identity(t.rows(), t.cols()) - z * t;
    Eigen::FullPivLU<EMat> lu(lhs);
    const EVec x = lu.solve(f.col(0));
    if ((lhs * x - f.col(0)).norm() > 1e-6 * (1.0 + f.norm()))
        throw ExceptionalPoint("1 - zT is numerically singular at this point");
    return col.H + z * (g * x)(0);
}

cdouble TransferFunction::eval(cdouble z) const {
    return transfer_eval(colligation, pullback.apply(z));
}

std::vector<cdouble> TransferFunction::exceptional_points() const {
    std::vector<cdouble> out;
    out.reserve(colligation.exceptional_points.size());
    for (const cdouble& e : colligation.exceptional_points) out.push_back(pullback.apply(e));
    return out;
}

TransferFunction solve_rectangular(const InterpolationInstance& inst) {
    MobiusTransform record;
    const InterpolationInstance normalized = mobius_normalize(inst, record);
    const KernelSpaceRep ksp = kernel_space(normalized);
    const RelationGenerators rel = build_relation(normalized, ksp);
    const DefectReport defects = defect_subspaces(ksp, rel);
    const Colligation col = complete_colligation(normalized, ksp, rel, defects);
    return TransferFunction{col, record};
}

TransferFunction two_kernel_solve(const InterpolationInstance& inst) {
    inst.validate();
    const std::size_t m = inst.size();

    FloatMatrix g1(m, m), g2(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const cdouble zz = inst.points[i] * std::conj(inst.points[j]);
            const cdouble aa = inst.A_values[i] * std::conj(inst.A_values[j]);
            const cdouble bb = inst.B_values[i] * std::conj(inst.B_values[j]);
            g1(i, j) = (aa - bb) / (1.0 - zz);
            g2(i, j) = (aa - zz * bb) / (1.0 - zz);
        }

    const Inertia in1 = counted_inertia(to_eigen(g1));
    const Inertia in2 = counted_inertia(to_eigen(g2));
    if (in1.nu != in2.nu)
        throw KernelMismatch("the two kernels disagree on negative squares: nu(K1)=" +
                             std::to_string(in1.nu) + ", nu(K2)=" + std::to_string(in2.nu));

    KernelSpaceRep ksp = kernel_space_from_gram(FloatHermitian(std::move(g1)));
    const EMat coords = to_eigen(ksp.coords);

    // Relation pairs (K1(w,.) , B(w)*) -> (wbar K1(w,.), A(w)*); V* inverts it.
    EMat domain = EMat::Zero(static_cast<Eigen::Index>(ksp.dim) + 1, static_cast<Eigen::Index>(m));
    EMat range = EMat::Zero(static_cast<Eigen::Index>(ksp.dim) + 1, static_cast<Eigen::Index>(m));
    for (std::size_t w = 0; w < m; ++w) {
        domain.col(w).head(static_cast<Eigen::Index>(ksp.dim)) = coords.col(static_cast<Eigen::Index>(w));
        domain(static_cast<Eigen::Index>(ksp.dim), static_cast<Eigen::Index>(w)) =
            std::conj(inst.B_values[w]);
        range.col(w).head(static_cast<Eigen::Index>(ksp.dim)) =
            std::conj(inst.points[w]) * coords.col(static_cast<Eigen::Index>(w));
        range(static_cast<Eigen::Index>(ksp.dim), static_cast<Eigen::Index>(w)) =
            std::conj(inst.A_values[w]);
    }

    // Isometry here is the two-kernel identity: the domain Gram is the K2 Gram.
    const EMat j = state_metric_J(to_eigen(ksp.metric));
    const EMat dom_gram = domain.adjoint() * j * domain;
    const EMat g2e = to_eigen(g2);
    double residual = 0.0;
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y)
            residual = std::max(residual,
                                std::abs(dom_gram(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) -
                                         g2e(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x))));
    if (residual > 1e-9 * std::max(1.0, g2e.cwiseAbs().maxCoeff()))
        throw IsometryResidualTooLarge("two-kernel relation Gram does not match the K2 Gram");

    CompletionChecks checks;
    // V* has initial space span(range generators) and maps them to the domain.
    const EMat v = complete_partial_isometry(range, domain, j, checks);
    Colligation col = extract_blocks(v, ksp);
    return TransferFunction{col, MobiusTransform{}};
}

FactorCheckResult factor_check(const InterpolationInstance& inst, const TransferFunction& tf,
                               double tol) {
    inst.validate();
    FactorCheckResult out;
    out.checked = inst.size();
    for (std::size_t i = 0; i < inst.size(); ++i) {
        double residual;
        try {
            const cdouble s = tf.eval(inst.points[i]);
            residual = std::abs(inst.B_values[i] - inst.A_values[i] * s);
        } catch (const ExceptionalPoint&) {
            residual = std::numeric_limits<double>::infinity();
        }
        const double bound = tol * (1.0 + std::abs(inst.A_values[i]) + std::abs(inst.B_values[i]));
        if (residual > bound) out.failure_indices.push_back(i);
        if (std::isfinite(residual)) out.max_residual = std::max(out.max_residual, residual);
    }
    return out;
}

CertifyReport certify_schur_class(const TransferFunction& tf, std::size_t grid_size, int kappa) {
    static const double radii[] = {0.2, 0.45, 0.7, 0.88};
    const std::size_t per_level = std::max<std::size_t>(4, grid_size / 4);
    const std::vector<cdouble> exceptional = tf.exceptional_points();

    CertifyReport report;
    std::vector<cdouble> points, values;
    for (double r : radii) {
        for (std::size_t k = 0; k < per_level; ++k) {
            const double theta =
                2.0 * std::numbers::pi * (static_cast<double>(k) + 0.37) / static_cast<double>(per_level);
            const cdouble z = std::polar(r, theta);
            bool near_exceptional = false;
            for (const cdouble& e : exceptional) near_exceptional = near_exceptional || std::abs(z - e) < 0.03;
            if (near_exceptional) continue;
            try {
                const cdouble s = tf.eval(z);
                points.push_back(z);
                values.push_back(s);
            } catch (const ExceptionalPoint&) {
                continue;
            }
        }
        if (points.empty()) continue;
        const std::size_t n = points.size();
        FloatMatrix g(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t jj = 0; jj < n; ++jj)
                g(i, jj) = (1.0 - values[i] * std::conj(values[jj])) /
                           (1.0 - points[i] * std::conj(points[jj]));
        const Inertia in = counted_inertia(to_eigen(g), 1e-8);
        if (!report.nu_per_level.empty() && in.nu < report.nu_per_level.back())
            throw Error("certify_schur_class: negative-square trace decreased on a nested grid");
        report.nu_per_level.push_back(in.nu);
    }
    report.grid_points = points.size();
    report.kappa_prime = report.nu_per_level.empty() ? 0 : report.nu_per_level.back();
    report.within_bound = report.kappa_prime <= kappa;
    return report;
}

} // namespace pschur
