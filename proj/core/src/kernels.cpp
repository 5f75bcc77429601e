#include "pschur/kernels.hpp"

#include <cmath>
#include <numbers>

namespace pschur {

BlaschkeCaseStudy blaschke_case_study(const std::vector<cdouble>& points, std::size_t w0_index) {
    if (points.size() < 2)
        throw RangeError("blaschke_case_study: need w0 and at least one other point");
    if (w0_index >= points.size()) throw RangeError("blaschke_case_study: w0 index out of range");
    detail::validate_disk_points(points);

    std::vector<cdouble> values(points.size(), cdouble(0.0, 0.0));
    values[w0_index] = cdouble(1.0, 0.0);

    BlaschkeCaseStudy out{gram_KS(points, values), Inertia{}, FloatMatrix(2, 2), 0.0};
    out.gram_inertia = inertia(out.gram);

    const cdouble w0 = points[w0_index];
    const cdouble z2 = points[w0_index == 0 ? 1 : 0];
    out.witness(0, 0) = cdouble(0.0, 0.0);
    out.witness(0, 1) = 1.0 / (1.0 - z2 * std::conj(w0));
    out.witness(1, 0) = 1.0 / (1.0 - w0 * std::conj(z2));
    out.witness(1, 1) = 1.0 / (1.0 - std::norm(z2));
    out.witness_det = -std::norm(out.witness(0, 1));
    return out;
}

RationalFunction<cdouble> blaschke_interpolant(const std::vector<cdouble>& zeros, cdouble w0) {
    for (const cdouble& z : zeros) {
        if (std::abs(z - w0) < 1e-14)
            throw InvariantViolation("blaschke_interpolant: w0 must not be a prescribed zero");
        if (!(std::abs(z) < 1.0))
            throw InvariantViolation("blaschke_interpolant: zeros must lie in the open disk");
    }
    if (!(std::abs(w0) < 1.0))
        throw InvariantViolation("blaschke_interpolant: w0 must lie in the open disk");

    RationalFunction<cdouble> b = blaschke_product(zeros, cdouble(1.0, 0.0));
    const cdouble b_at_w0 = b.eval(w0);

    // alpha at pseudo-hyperbolic distance |B(w0)| from w0 makes |gamma| = 1;
    // with no zeros |B(w0)| = 1 and no such alpha exists in the disk, so fall
    // back to distance 1/2 (the formula still normalizes S1(w0) to 1).
    const double t = zeros.empty() ? 0.5 : std::abs(b_at_w0);
    cdouble alpha;
    bool found = false;
    for (int k = 0; k < 64 && !found; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / 16.0 + 0.1234;
        const cdouble candidate_dir = t * std::polar(1.0, theta);
        const cdouble cand = (w0 - candidate_dir) / (1.0 - std::conj(w0) * candidate_dir);
        bool clashes = std::abs(cand - w0) < 1e-9;
        for (const cdouble& z : zeros) clashes = clashes || std::abs(cand - z) < 1e-9;
        if (!clashes && std::abs(cand) < 1.0) {
            alpha = cand;
            found = true;
        }
    }
    if (!found) throw Error("blaschke_interpolant: could not place the inverted factor");

    const cdouble gamma = (1.0 - w0 * std::conj(alpha)) / (w0 - alpha) * b_at_w0;

    RationalFunction<cdouble> s1;
    s1.num = b.num * Polynomial<cdouble>({cdouble(1.0, 0.0), -std::conj(alpha)});
    s1.den = b.den.scaled(gamma) * Polynomial<cdouble>({-alpha, cdouble(1.0, 0.0)});
    s1.form = RatFnForm::BlaschkeQuotient;
    s1.blaschke_zeros = zeros;
    s1.blaschke_poles = {alpha};
    s1.unimodular_constant = gamma;
    return s1;
}

} // namespace pschur
