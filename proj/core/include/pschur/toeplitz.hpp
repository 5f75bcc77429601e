#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pschur/inertia.hpp"
#include "pschur/matrix.hpp"

namespace pschur {

/// Taylor coefficients a_0, ..., a_{n-1} of a candidate Schur-class function.
template <class S>
using CoeffSeq = std::vector<S>;

/// Moment sequence c_0, ..., c_m; c_0 real, and c_0 = 1 when produced from
/// coefficients.
template <class S>
using MomentSeq = std::vector<S>;

/// r x r lower-triangular Toeplitz T_r with first column a_0, ..., a_{r-1}.
template <class S>
Matrix<S> lower_toeplitz(const CoeffSeq<S>& a, std::size_t r) {
    if (r < 1 || r > a.size()) throw RangeError("lower_toeplitz: r out of range");
    Matrix<S> t(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j <= i; ++j) t(i, j) = a[i - j];
    return t;
}

/// T-tilde_r: the same built from conjugated coefficients.
template <class S>
Matrix<S> conj_toeplitz(const CoeffSeq<S>& a, std::size_t r) {
    if (r < 1 || r > a.size()) throw RangeError("conj_toeplitz: r out of range");
    Matrix<S> t(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j <= i; ++j) t(i, j) = conj(a[i - j]);
    return t;
}

/// Hankel block Q_r[i][j] = a_{i+j+1}; needs coefficients up to a_{2r-1}.
template <class S>
Matrix<S> hankel_Q(const CoeffSeq<S>& a, std::size_t r) {
    if (r < 1 || a.size() < 2 * r) throw RangeError("hankel_Q: r out of range");
    Matrix<S> q(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) q(i, j) = a[i + j + 1];
    return q;
}

enum class GramSide { Left, Right, ConjLeft, ConjRight };

/// One of I - T T*, I - T* T, I - T~ T~*, I - T~* T~.
template <class S>
HermitianMatrix<S> schur_gram(const CoeffSeq<S>& a, std::size_t r, GramSide side) {
    const bool tilde = (side == GramSide::ConjLeft || side == GramSide::ConjRight);
    Matrix<S> t = tilde ? conj_toeplitz(a, r) : lower_toeplitz(a, r);
    Matrix<S> prod = (side == GramSide::Left || side == GramSide::ConjLeft)
                         ? t * t.adjoint()
                         : t.adjoint() * t;
    return HermitianMatrix<S>(Matrix<S>::identity(r) - prod);
}

/// The 2r x 2r block [[I - T T*, Q], [Q*, I - T~ T~*]].
template <class S>
HermitianMatrix<S> d_block(const CoeffSeq<S>& a, std::size_t r) {
    if (r < 1 || a.size() < 2 * r) throw RangeError("d_block: r out of range");
    Matrix<S> q = hankel_Q(a, r);
    Matrix<S> out(2 * r, 2 * r);
    out.place(0, 0, schur_gram(a, r, GramSide::Left).matrix());
    out.place(0, r, q);
    out.place(r, 0, q.adjoint());
    out.place(r, r, schur_gram(a, r, GramSide::ConjLeft).matrix());
    return HermitianMatrix<S>(std::move(out));
}

/// c_0 = 1, c_k = sum_{i=0}^{k-1} c_i a_{k-1-i}. The output has length
/// len(a) + 1; the correspondence is one-to-one.
template <class S>
MomentSeq<S> coeffs_to_moments(const CoeffSeq<S>& a) {
    if (a.empty()) throw RangeError("coeffs_to_moments: need at least one coefficient");
    MomentSeq<S> c;
    c.reserve(a.size() + 1);
    c.push_back(scalar_traits<S>::one());
    for (std::size_t k = 1; k <= a.size(); ++k) {
        S v = scalar_traits<S>::zero();
        for (std::size_t i = 0; i < k; ++i) v += c[i] * a[k - 1 - i];
        c.push_back(v);
    }
    return c;
}

/// Inverse of coeffs_to_moments; requires c_0 = 1.
template <class S>
CoeffSeq<S> moments_to_coeffs(const MomentSeq<S>& c) {
    if (c.empty() || !(c[0] == scalar_traits<S>::one()))
        throw BadLeadingMoment("moments_to_coeffs: c_0 must be 1");
    if (c.size() < 2) throw RangeError("moments_to_coeffs: need c_1");
    CoeffSeq<S> a;
    a.reserve(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) {
        S v = c[k];
        for (std::size_t i = 1; i < k; ++i) v -= c[i] * a[k - 1 - i];
        a.push_back(v);
    }
    return a;
}

/// (r+1) x (r+1) Hermitian Toeplitz M_r with first column c_0, ..., c_r.
template <class S>
HermitianMatrix<S> moment_matrix(const MomentSeq<S>& c, std::size_t r) {
    if (c.empty() || r + 1 > c.size()) throw RangeError("moment_matrix: r out of range");
    if (!(scalar_traits<S>::imag(c[0]) == typename scalar_traits<S>::real_type(0)))
        throw InvariantViolation("moment_matrix: c_0 must be real");
    Matrix<S> m(r + 1, r + 1);
    for (std::size_t i = 0; i <= r; ++i)
        for (std::size_t j = 0; j <= r; ++j) m(i, j) = (i >= j) ? c[i - j] : conj(c[j - i]);
    return HermitianMatrix<S>(std::move(m));
}

/// The selfadjoint unitary flip J_n.
template <class S>
Matrix<S> flip_matrix(std::size_t n) {
    Matrix<S> j(n, n);
    for (std::size_t i = 0; i < n; ++i) j(i, n - 1 - i) = scalar_traits<S>::one();
    return j;
}

template <class S>
struct StructuralMatrices {
    Matrix<S> B; // (r+1) x (r+1) lower Toeplitz in the moments
    Matrix<S> J; // flip of order r+1
    Matrix<S> C; // (2r+1) x (2r+1) congruence factor of the big identity
};

/// B_r, J_{r+1} and C_r = [I_r (+) B_r] * [[0, B_r* J_{r+1}], [I_r, 0]].
template <class S>
StructuralMatrices<S> structural_matrices(const MomentSeq<S>& c, std::size_t r) {
    if (c.empty() || r + 1 > c.size()) throw RangeError("structural_matrices: r out of range");
    Matrix<S> b(r + 1, r + 1);
    for (std::size_t i = 0; i <= r; ++i)
        for (std::size_t j = 0; j <= i; ++j) b(i, j) = c[i - j];

    const std::size_t m = 2 * r + 1;
    Matrix<S> left(m, m);
    left.place(0, 0, Matrix<S>::identity(r));
    left.place(r, r, b);

    Matrix<S> right(m, m);
    right.place(0, r, b.adjoint() * flip_matrix<S>(r + 1));
    right.place(r + 1, 0, Matrix<S>::identity(r));

    return {b, flip_matrix<S>(r + 1), left * right};
}

struct IdentityCheck {
    std::string name;
    std::size_t r = 0;
    bool pass = false;
    double residual = 0.0; // max-abs entry of the difference (0 in exact mode when pass)
};

/// Verdicts for the three factorization identities tying M_r to the
/// coefficient matrices. A failure indicates an implementation bug,
/// never valid output.
struct IdentityReport {
    std::vector<IdentityCheck> checks;
    bool all_pass = true;
    double max_residual = 0.0;
    bool exact = false;

    void add(std::string name, std::size_t r, const bool pass, double residual) {
        checks.push_back({std::move(name), r, pass, residual});
        all_pass = all_pass && pass;
        max_residual = std::max(max_residual, residual);
    }
};

namespace detail {

template <class S>
std::pair<bool, double> matrices_agree(const Matrix<S>& x, const Matrix<S>& y) {
    if constexpr (scalar_traits<S>::is_exact) {
        if (x == y) return {true, 0.0};
        double res = max_abs_entry(x - y);
        return {false, res};
    } else {
        double scale = std::max({1.0, max_abs_entry(x), max_abs_entry(y)});
        double res = max_abs_entry(x - y);
        return {res <= 1e-10 * scale, res};
    }
}

// diag(head, M) or diag(M, tail) with a scalar 1 slot.
template <class S>
Matrix<S> one_plus(const Matrix<S>& m) {
    Matrix<S> out(m.rows() + 1, m.cols() + 1);
    out(0, 0) = scalar_traits<S>::one();
    out.place(1, 1, m);
    return out;
}

template <class S>
Matrix<S> plus_one(const Matrix<S>& m) {
    Matrix<S> out(m.rows() + 1, m.cols() + 1);
    out.place(0, 0, m);
    out(m.rows(), m.cols()) = scalar_traits<S>::one();
    return out;
}

} // namespace detail

/// Checks, with moments derived through the coefficient connection:
///   M_r  = B_r  diag(1, I - T_r T_r*)  B_r*          (1 <= r <= n)
///   M_r  = B_r* diag(I - T_r* T_r, 1)  B_r           (1 <= r <= n)
///   conj(M_r) = B~_r* diag(I - T~_r* T~_r, 1) B~_r   (1 <= r <= n)
///   M_2r = C_r [[I-TT*, 0, Q], [0,1,0], [Q*, 0, I-T~T~*]] C_r*  (1 <= r <= n/2)
template <class S>
IdentityReport verify_identities(const CoeffSeq<S>& a) {
    if (a.empty()) throw RangeError("verify_identities: need at least one coefficient");
    const std::size_t n = a.size();
    const MomentSeq<S> c = coeffs_to_moments(a);

    IdentityReport report;
    report.exact = scalar_traits<S>::is_exact;

    for (std::size_t r = 1; r <= n; ++r) {
        const Matrix<S> mr = moment_matrix(c, r).matrix();
        const auto sm = structural_matrices(c, r);

        Matrix<S> lhs = sm.B * detail::one_plus(schur_gram(a, r, GramSide::Left).matrix()) * sm.B.adjoint();
        auto [ok1, res1] = detail::matrices_agree(mr, lhs);
        report.add("stronger_left", r, ok1, res1);

        lhs = sm.B.adjoint() * detail::plus_one(schur_gram(a, r, GramSide::Right).matrix()) * sm.B;
        auto [ok2, res2] = detail::matrices_agree(mr, lhs);
        report.add("stronger_right", r, ok2, res2);

        const Matrix<S> b_tilde = sm.B.conjugate();
        lhs = b_tilde.adjoint() * detail::plus_one(schur_gram(a, r, GramSide::ConjRight).matrix()) * b_tilde;
        auto [ok3, res3] = detail::matrices_agree(mr.conjugate(), lhs);
        report.add("barmr", r, ok3, res3);
    }

    for (std::size_t r = 1; 2 * r <= n; ++r) {
        const Matrix<S> m2r = moment_matrix(c, 2 * r).matrix();
        const auto sm = structural_matrices(c, r);
        Matrix<S> mid(2 * r + 1, 2 * r + 1);
        mid.place(0, 0, schur_gram(a, r, GramSide::Left).matrix());
        mid.place(0, r + 1, hankel_Q(a, r));
        mid(r, r) = scalar_traits<S>::one();
        mid.place(r + 1, 0, hankel_Q(a, r).adjoint());
        mid.place(r + 1, r + 1, schur_gram(a, r, GramSide::ConjLeft).matrix());
        Matrix<S> lhs = sm.C * mid * sm.C.adjoint();
        auto [ok, res] = detail::matrices_agree(m2r, lhs);
        report.add("bigmatrix", r, ok, res);
    }

    return report;
}

} // namespace pschur
