#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "pschur/inertia.hpp"
#include "pschur/matrix.hpp"
#include "pschur/polynomial.hpp"
#include "pschur/toeplitz.hpp"

namespace pschur {

namespace detail {

template <class S>
void validate_disk_points(const std::vector<S>& points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        if constexpr (scalar_traits<S>::is_exact) {
            if (!(points[i].norm2() < Rational(1)))
                throw InvariantViolation("sample point outside the open disk");
        } else {
            if (!(std::abs(points[i]) < 1.0))
                throw InvariantViolation("sample point outside the open disk");
        }
        for (std::size_t j = 0; j < i; ++j)
            if (points[i] == points[j]) throw InvariantViolation("sample points must be distinct");
    }
}

} // namespace detail

/// Gram matrix of the Schur kernel on a finite sample:
/// G[i][j] = (1 - v_i conj(v_j)) / (1 - z_i conj(z_j)).
template <class S>
HermitianMatrix<S> gram_KS(const std::vector<S>& points, const std::vector<S>& values) {
    if (points.size() != values.size() || points.empty())
        throw RangeError("gram_KS: need matching nonempty points and values");
    detail::validate_disk_points(points);
    const S one = scalar_traits<S>::one();
    Matrix<S> g(points.size(), points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < points.size(); ++j)
            g(i, j) = (one - values[i] * conj(values[j])) / (one - points[i] * conj(points[j]));
    return HermitianMatrix<S>(std::move(g));
}

/// Gram of the 2x2-block kernel pairing S with S~(z) = conj(S(conj(z))):
/// [[K_S, (S(z)-S(conj w))/(z-conj w)], [(S~(z)-S~(conj w))/(z-conj w), K_S~]],
/// diagonal divided differences evaluated as derivatives.
template <class S>
HermitianMatrix<S> gram_D(const RationalFunction<S>& f, const std::vector<S>& points) {
    if (points.empty()) throw RangeError("gram_D: need at least one point");
    detail::validate_disk_points(points);
    const std::size_t n = points.size();
    const S one = scalar_traits<S>::one();
    const RationalFunction<S> ft = f.conj_function();

    std::vector<S> v(n), vt(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = f.eval(points[i]);
        vt[i] = ft.eval(points[i]);
    }

    Matrix<S> g(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const S denom = one - points[i] * conj(points[j]);
            g(i, j) = (one - v[i] * conj(v[j])) / denom;
            g(n + i, n + j) = (one - vt[i] * conj(vt[j])) / denom;
            g(i, n + j) = divided_difference(f, points[i], conj(points[j]));
            g(n + i, j) = divided_difference(ft, points[i], conj(points[j]));
        }
    return HermitianMatrix<S>(std::move(g));
}

/// Finite-prefix Blaschke diagnostic: the partial sum of 1 - |z|^2 over the
/// points. Finite sets are trivially Blaschke sequences; the value only
/// hints at the behavior of a longer tail.
inline double blaschke_sum(const std::vector<cdouble>& points) {
    double sum = 0.0;
    for (const cdouble& z : points) sum += 1.0 - std::norm(z);
    return sum;
}

/// Case study for the indicator-type function S = 1 at w0, 0 elsewhere:
/// its kernel always has exactly one negative square.
struct BlaschkeCaseStudy {
    FloatHermitian gram;
    Inertia gram_inertia;
    FloatMatrix witness; // the 2x2 principal block with negative determinant
    double witness_det = 0.0;
};

BlaschkeCaseStudy blaschke_case_study(const std::vector<cdouble>& points, std::size_t w0_index);

/// The interpolant realizing the case study when the zero set is a Blaschke
/// sequence: S1 = (inverse Blaschke factor) * (Blaschke product over the
/// zeros), normalized so S1(w0) = 1. With an empty zero set the same formula
/// is returned with B = 1; the unimodularity constraint is then vacuous.
RationalFunction<cdouble> blaschke_interpolant(const std::vector<cdouble>& zeros, cdouble w0);

/// Trace of nu(I_r - T_r T_r*) for r = 1..r_max and its stabilization status.
struct NegSqReport {
    std::vector<int> nu_trace;
    int kappa_estimate = 0;
    bool stabilized = false;
};

template <class S>
NegSqReport negsq_from_coeffs(const CoeffSeq<S>& a, std::size_t r_max, std::size_t stability_window) {
    if (stability_window < 2 || r_max < stability_window)
        throw RangeError("negsq_from_coeffs: need r_max >= stability_window >= 2");
    if (a.size() < r_max) throw RangeError("negsq_from_coeffs: need r_max coefficients");
    NegSqReport report;
    report.nu_trace.reserve(r_max);
    for (std::size_t r = 1; r <= r_max; ++r)
        report.nu_trace.push_back(inertia(schur_gram(a, r, GramSide::Left)).nu);
    report.kappa_estimate = report.nu_trace.back();
    report.stabilized = true;
    for (std::size_t i = r_max - stability_window; i < r_max; ++i)
        report.stabilized = report.stabilized && (report.nu_trace[i] == report.kappa_estimate);
    return report;
}

/// Same, with coefficients pulled from a generator.
template <class S>
NegSqReport negsq_from_generator(const std::function<S(std::size_t)>& gen, std::size_t r_max,
                                 std::size_t stability_window) {
    CoeffSeq<S> a(r_max);
    for (std::size_t j = 0; j < r_max; ++j) a[j] = gen(j);
    return negsq_from_coeffs(a, r_max, stability_window);
}

/// Minimal geometric envelope |a_j| <= K rho^j fitted on the tail j >= 1.
struct GrowthReport {
    double K = 0.0;
    double rho = 0.0;
    bool holds = false;
    bool unbounded_trend = false; // consecutive ratios still climbing at the end
};

template <class S>
GrowthReport coeff_growth_check(const CoeffSeq<S>& a) {
    if (a.size() < 4) throw RangeError("coeff_growth_check: need at least four coefficients");
    auto mag = [](const S& v) {
        if constexpr (scalar_traits<S>::is_exact)
            return std::abs(v.to_cdouble());
        else
            return std::abs(v);
    };
    GrowthReport report;
    std::vector<double> ratios;
    for (std::size_t j = 1; j < a.size(); ++j) {
        const double prev = mag(a[j - 1]);
        const double cur = mag(a[j]);
        if (prev > 0.0 && cur > 0.0) ratios.push_back(cur / prev);
    }
    for (double r : ratios) report.rho = std::max(report.rho, r);
    if (report.rho > 0.0) {
        double scale = 1.0;
        for (std::size_t j = 1; j < a.size(); ++j) {
            scale *= report.rho;
            report.K = std::max(report.K, mag(a[j]) / scale);
        }
    }
    report.holds = true; // a finite sequence always admits its fitted envelope
    if (ratios.size() >= 3) {
        const std::size_t m = ratios.size();
        report.unbounded_trend =
            ratios[m - 1] > ratios[m - 2] && ratios[m - 2] > ratios[m - 3];
    }
    return report;
}

} // namespace pschur
