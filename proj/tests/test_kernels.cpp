#include <doctest.h>

#include "pschur/kernels.hpp"
#include "test_support.hpp"

using namespace pschur;
using testsupport::gr;
using testsupport::Rng;

namespace {

RationalFunction<cdouble> one_over_b() {
    // 1/b for b(z) = (z + 1/2)/(1 + z/2): the standard kappa = 1 example.
    RationalFunction<cdouble> f;
    f.num = Polynomial<cdouble>({cdouble(2.0, 0.0), cdouble(1.0, 0.0)});
    f.den = Polynomial<cdouble>({cdouble(1.0, 0.0), cdouble(2.0, 0.0)});
    return f;
}

} // namespace

TEST_CASE("Schur-kernel Grams on reference data (exact backend)") {
    using GR = GaussianRational;
    const std::vector<GR> pts{gr(0), gr(1, 2)};

    const auto szego = gram_KS(pts, std::vector<GR>{gr(0), gr(0)});
    CHECK(szego(0, 0) == gr(1));
    CHECK(szego(0, 1) == gr(1));
    CHECK(szego(1, 1) == gr(4, 3));
    CHECK(inertia(szego) == Inertia{0, 0, 2});

    const auto flat = gram_KS(pts, std::vector<GR>{gr(0), gr(1, 2)}); // S(z) = z
    CHECK(flat(0, 0) == gr(1));
    CHECK(flat(0, 1) == gr(1));
    CHECK(flat(1, 1) == gr(1));
    CHECK(inertia(flat) == Inertia{0, 1, 1});

    const auto sq = gram_KS(pts, std::vector<GR>{gr(0), gr(1, 4)}); // S(z) = z^2
    CHECK(sq(1, 1) == gr(5, 4));
    CHECK(inertia(sq) == Inertia{0, 0, 2});

    CHECK_THROWS_AS(gram_KS(std::vector<GR>{gr(2)}, std::vector<GR>{gr(0)}), InvariantViolation);
    CHECK_THROWS_AS(gram_KS(pts, std::vector<GR>{gr(0)}), RangeError);
}

TEST_CASE("block kernel Gram") {
    RationalFunction<cdouble> ident; // S(z) = z
    ident.num = Polynomial<cdouble>({cdouble(0.0, 0.0), cdouble(1.0, 0.0)});

    const std::vector<cdouble> pts{cdouble(0.0, 0.0), cdouble(0.3, 0.2)};
    const auto d = gram_D(ident, pts);
    CHECK(d.size() == 4);
    // For S(z) = z every divided difference (including the confluent one) is 1.
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(std::abs(d(i, 2 + j) - cdouble(1.0, 0.0)) < 1e-14);
            CHECK(std::abs(d(2 + i, j) - cdouble(1.0, 0.0)) < 1e-14);
        }

    RationalFunction<cdouble> pole; // 1/(z - 1/2)
    pole.num = Polynomial<cdouble>::constant(cdouble(1.0, 0.0));
    pole.den = Polynomial<cdouble>({cdouble(-0.5, 0.0), cdouble(1.0, 0.0)});
    CHECK_THROWS_AS(gram_D(pole, std::vector<cdouble>{cdouble(0.5, 0.0)}), PoleAtSamplePoint);
}

TEST_CASE("block kernel Gram is exact on rational data") {
    using GR = GaussianRational;
    RationalFunction<GR> ident; // S(z) = z
    ident.num = Polynomial<GR>({gr(0), gr(1)});

    const std::vector<GR> pts{gr(0), gr(1, 2)};
    const auto d = gram_D(ident, pts);
    CHECK(d.size() == 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(d(i, 2 + j) == gr(1));
            CHECK(d(2 + i, j) == gr(1));
        }
    CHECK(d(1, 1) == gr(1)); // (1 - 1/4)/(1 - 1/4)
    // The coupled block for a classical inner function is singular PSD.
    CHECK(inertia(d).nu == 0);
}

TEST_CASE("gram inertia is invariant under point relabeling") {
    Rng rng(149);
    for (int t = 0; t < 10; ++t) {
        std::vector<cdouble> pts, vals;
        for (int k = 0; k < 5; ++k) {
            pts.push_back(rng.disk_point(0.8));
            vals.push_back(1.5 * rng.disk_point(1.0));
        }
        const Inertia base = inertia(gram_KS(pts, vals), 1e-8);
        std::vector<std::size_t> perm{4, 2, 0, 3, 1};
        std::vector<cdouble> ppts(5), pvals(5);
        for (std::size_t i = 0; i < 5; ++i) {
            ppts[i] = pts[perm[i]];
            pvals[i] = vals[perm[i]];
        }
        CHECK(inertia(gram_KS(ppts, pvals), 1e-8) == base);
    }
}

TEST_CASE("finite-prefix Blaschke diagnostic") {
    CHECK(blaschke_sum({cdouble(0.0, 0.0)}) == doctest::Approx(1.0));
    CHECK(blaschke_sum({cdouble(0.5, 0.0), cdouble(0.0, 0.5)}) == doctest::Approx(1.5));
}

TEST_CASE("indicator case study has exactly one negative square") {
    const auto study = blaschke_case_study({cdouble(0.0, 0.0), cdouble(0.5, 0.0)}, 0);
    CHECK(study.witness(0, 0) == cdouble(0.0, 0.0));
    CHECK(std::abs(study.witness(0, 1) - cdouble(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(study.witness(1, 1) - cdouble(4.0 / 3.0, 0.0)) < 1e-15);
    CHECK(study.witness_det == doctest::Approx(-1.0));
    CHECK(study.gram_inertia.nu == 1);

    const auto four = blaschke_case_study(
        {cdouble(0.0, 0.0), cdouble(0.25, 0.0), cdouble(0.5, 0.0), cdouble(0.75, 0.0)}, 0);
    CHECK(four.gram_inertia.nu == 1);

    CHECK_THROWS_AS(blaschke_case_study({cdouble(0.0, 0.0)}, 0), RangeError);
}

TEST_CASE("case-study interpolant matches the prescribed values") {
    const auto s1 = blaschke_interpolant({cdouble(0.5, 0.0)}, cdouble(0.0, 0.0));
    CHECK(std::abs(s1.eval(cdouble(0.0, 0.0)) - cdouble(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(s1.eval(cdouble(0.5, 0.0))) < 1e-12);

    const auto empty = blaschke_interpolant({}, cdouble(0.0, 0.0));
    CHECK(std::abs(empty.eval(cdouble(0.0, 0.0)) - cdouble(1.0, 0.0)) < 1e-12);

    const auto s2 = blaschke_interpolant({cdouble(1.0 / 3.0, 0.0), cdouble(-1.0 / 3.0, 0.0)},
                                         cdouble(0.0, 0.0));
    CHECK(std::abs(s2.eval(cdouble(0.0, 0.0)) - cdouble(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(s2.eval(cdouble(1.0 / 3.0, 0.0))) < 1e-12);
    CHECK(std::abs(s2.eval(cdouble(-1.0 / 3.0, 0.0))) < 1e-12);
    CHECK(std::abs(std::abs(s2.unimodular_constant) - 1.0) < 1e-12);

    // Sampled Gram of the interpolant has at most one negative square, and
    // exactly one on a grid containing the interpolation set.
    std::vector<cdouble> grid{cdouble(0.0, 0.0), cdouble(1.0 / 3.0, 0.0), cdouble(-1.0 / 3.0, 0.0),
                              cdouble(0.2, 0.3), cdouble(-0.4, 0.1), cdouble(0.6, 0.0)};
    std::vector<cdouble> values;
    for (const auto& z : grid) values.push_back(s2.eval(z));
    CHECK(inertia(gram_KS(grid, values), 1e-9).nu == 1);
}

TEST_CASE("negative-squares traces") {
    const std::vector<GaussianRational> zero(12, gr(0));
    const auto rz = negsq_from_coeffs(zero, 12, 3);
    CHECK(rz.stabilized);
    CHECK(rz.kappa_estimate == 0);

    // Taylor coefficients of 1/b via exact series division.
    RationalFunction<GaussianRational> f;
    f.num = Polynomial<GaussianRational>({gr(2), gr(1)});
    f.den = Polynomial<GaussianRational>({gr(1), gr(2)});
    const auto a = taylor_coefficients(f, 12);
    CHECK(a[0] == gr(2));
    CHECK(a[1] == gr(-3));
    CHECK(a[2] == gr(6));
    CHECK(a[3] == gr(-12));
    CHECK(a[4] == gr(24));
    const auto r1 = negsq_from_coeffs(a, 8, 3);
    CHECK(r1.stabilized);
    CHECK(r1.kappa_estimate == 1);

    std::vector<GaussianRational> constant(12, gr(0));
    constant[0] = gr(2);
    const auto rc = negsq_from_coeffs(constant, 12, 3);
    CHECK_FALSE(rc.stabilized);
    for (std::size_t r = 1; r <= 12; ++r) CHECK(rc.nu_trace[r - 1] == static_cast<int>(r));

    CHECK_THROWS_AS(negsq_from_coeffs(zero, 12, 1), RangeError);
}

TEST_CASE("negative squares from a generator") {
    const std::function<GaussianRational(std::size_t)> gen = [](std::size_t j) {
        if (j == 0) return gr(2);
        GaussianRational v = gr(-3);
        for (std::size_t k = 1; k < j; ++k) v *= gr(-2);
        return v;
    };
    const auto report = negsq_from_generator(gen, 8, 3);
    CHECK(report.stabilized);
    CHECK(report.kappa_estimate == 1);
}

TEST_CASE("coefficient growth envelopes") {
    const std::vector<GaussianRational> a{gr(2), gr(-3), gr(6), gr(-12), gr(24)};
    const auto g = coeff_growth_check(a);
    CHECK(g.rho == doctest::Approx(2.0));
    CHECK(g.K == doctest::Approx(1.5));
    CHECK(g.holds);
    CHECK_FALSE(g.unbounded_trend);
    for (std::size_t j = 1; j < a.size(); ++j)
        CHECK(std::abs(a[j].to_cdouble()) <= g.K * std::pow(g.rho, static_cast<double>(j)) + 1e-12);

    const auto flat = coeff_growth_check(std::vector<GaussianRational>{gr(1), gr(0), gr(0), gr(0)});
    CHECK(flat.rho == 0.0);
    CHECK(flat.holds);

    const auto factorial =
        coeff_growth_check(std::vector<GaussianRational>{gr(0), gr(1), gr(2), gr(6), gr(24)});
    CHECK(factorial.unbounded_trend);
}

TEST_CASE("reciprocal scaling identity on samples") {
    // K_S(w,z) = -S(z) K_{1/S}(w,z) conj(S(w)) wherever S is nonvanishing.
    const auto s = one_over_b();
    RationalFunction<cdouble> inv;
    inv.num = s.den;
    inv.den = s.num;

    const std::vector<cdouble> pts{cdouble(0.1, 0.0), cdouble(-0.3, 0.1), cdouble(0.2, -0.25),
                                   cdouble(0.45, 0.3)};
    std::vector<cdouble> vs, vi;
    for (const auto& z : pts) {
        vs.push_back(s.eval(z));
        vi.push_back(inv.eval(z));
    }
    const auto gs = gram_KS(pts, vs);
    const auto gi = gram_KS(pts, vi);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
            CHECK(std::abs(gs(i, j) + vs[i] * gi(i, j) * std::conj(vs[j])) < 1e-12);

    const Inertia is = inertia(gs, 1e-9);
    const Inertia ii = inertia(gi, 1e-9);
    CHECK(is.nu == ii.pi);
    CHECK(is.pi == ii.nu);
}
