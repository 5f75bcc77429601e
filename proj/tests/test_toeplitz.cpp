#include <doctest.h>

#include "pschur/toeplitz.hpp"
#include "test_support.hpp"

using namespace pschur;
using testsupport::exact_inverse;
using testsupport::gr;
using testsupport::Rng;

namespace {

using GR = GaussianRational;
using Seq = std::vector<GR>;

} // namespace

TEST_CASE("toeplitz and hankel builders") {
    CHECK(lower_toeplitz(Seq{gr(5)}, 1)(0, 0) == gr(5));
    const Seq zero4(4, gr(0));
    CHECK(lower_toeplitz(zero4, 3).is_zero());

    const auto t = lower_toeplitz(Seq{gr(2), gr(-3)}, 2);
    CHECK(t(0, 0) == gr(2));
    CHECK(t(0, 1) == gr(0));
    CHECK(t(1, 0) == gr(-3));
    CHECK(t(1, 1) == gr(2));

    const auto tt = conj_toeplitz(Seq{testsupport::gri(0, 1, 1, 1)}, 1);
    CHECK(tt(0, 0) == testsupport::gri(0, 1, -1, 1));

    const auto q = hankel_Q(Seq{gr(0), gr(1), gr(0), gr(0)}, 2);
    CHECK(q(0, 0) == gr(1));
    CHECK(q(0, 1) == gr(0));
    CHECK(q(1, 0) == gr(0));
    CHECK(q(1, 1) == gr(0));
    CHECK(hankel_Q(Seq{gr(7), gr(9)}, 1)(0, 0) == gr(9));
    const auto q2 = hankel_Q(Seq{gr(2), gr(-3), gr(6), gr(-12)}, 2);
    CHECK(q2(0, 0) == gr(-3));
    CHECK(q2(0, 1) == gr(6));
    CHECK(q2(1, 0) == gr(6));
    CHECK(q2(1, 1) == gr(-12));

    CHECK_THROWS_AS(lower_toeplitz(Seq{gr(1)}, 2), RangeError);
    CHECK_THROWS_AS(hankel_Q(Seq{gr(1), gr(2)}, 2), RangeError);
}

TEST_CASE("schur grams and the d block") {
    CHECK(schur_gram(Seq{gr(1, 2)}, 1, GramSide::Left)(0, 0) == gr(3, 4));
    CHECK(schur_gram(Seq{gr(0)}, 1, GramSide::Right)(0, 0) == gr(1));
    CHECK(schur_gram(Seq{gr(2)}, 1, GramSide::Left)(0, 0) == gr(-3));

    CHECK(d_block(Seq{gr(0), gr(0)}, 1).matrix() == ExactMatrix::identity(2));
    const auto d1 = d_block(Seq{gr(0), gr(1)}, 1);
    CHECK(d1(0, 0) == gr(1));
    CHECK(d1(0, 1) == gr(1));
    CHECK(d1(1, 0) == gr(1));
    CHECK(d1(1, 1) == gr(1));
    const auto d2 = d_block(Seq{gr(1, 2), gr(0)}, 1);
    CHECK(d2(0, 0) == gr(3, 4));
    CHECK(d2(0, 1) == gr(0));
    CHECK(d2(1, 1) == gr(3, 4));
}

TEST_CASE("coefficient/moment correspondence") {
    CHECK(coeffs_to_moments(Seq{gr(7)}) == Seq{gr(1), gr(7)});
    CHECK(coeffs_to_moments(Seq{gr(2), gr(-3)}) == Seq{gr(1), gr(2), gr(1)});

    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        const Seq a = rng.coeffs(1 + t % 7);
        CHECK(moments_to_coeffs(coeffs_to_moments(a)) == a);
    }
    CHECK_THROWS_AS(moments_to_coeffs(Seq{gr(2), gr(1)}), BadLeadingMoment);
}

TEST_CASE("moment matrices") {
    CHECK(moment_matrix(Seq{gr(1)}, 0)(0, 0) == gr(1));
    const auto m1 = moment_matrix(Seq{gr(1), gr(1, 2)}, 1);
    CHECK(m1(0, 1) == gr(1, 2));
    CHECK(m1(1, 0) == gr(1, 2));
    const auto m2 = moment_matrix(Seq{gr(1), gr(2)}, 1);
    CHECK(m2(0, 0) == gr(1));
    CHECK(m2(1, 0) == gr(2));
    CHECK_THROWS_AS(moment_matrix(Seq{testsupport::gri(1, 1, 1, 2)}, 0), InvariantViolation);
}

TEST_CASE("structural matrices") {
    const auto sm = structural_matrices(Seq{gr(1), gr(5)}, 1);
    CHECK(sm.B(0, 0) == gr(1));
    CHECK(sm.B(1, 0) == gr(5));
    CHECK(sm.B(0, 1) == gr(0));
    CHECK(sm.J * sm.J == ExactMatrix::identity(2));

    Rng rng(17);
    for (std::size_t r = 1; r <= 4; ++r) {
        Seq c = rng.coeffs(r + 1);
        c[0] = gr(1);
        const auto s = structural_matrices(c, r);
        CHECK(s.C * exact_inverse(s.C) == ExactMatrix::identity(2 * r + 1));
    }
}

TEST_CASE("factorization identities on reference inputs") {
    CHECK(verify_identities(Seq{gr(1, 2)}).all_pass);
    CHECK(verify_identities(Seq(5, gr(0))).all_pass);
    const auto report = verify_identities(Seq{gr(2), gr(-3)});
    CHECK(report.all_pass);
    CHECK(report.exact);
    CHECK(report.max_residual == 0.0);
    // r = 1..2 each contribute three checks; r = 1 adds the big-block one.
    CHECK(report.checks.size() == 7);
}

TEST_CASE("factorization identities hold bit-exactly on random rational data") {
    Rng rng(23);
    for (int t = 0; t < 25; ++t) {
        const Seq a = rng.coeffs(1 + t % 8);
        CHECK(verify_identities(a).all_pass);
    }
}

TEST_CASE("factorization identities hold in the float backend") {
    Rng rng(41);
    std::uniform_real_distribution<double> dist(-1.5, 1.5);
    for (int t = 0; t < 10; ++t) {
        std::vector<cdouble> a(6);
        for (auto& v : a) v = cdouble(dist(rng.gen), dist(rng.gen));
        const auto report = verify_identities(a);
        CHECK(report.all_pass);
        CHECK(!report.exact);
    }
}

TEST_CASE("gram variants share sign counts and grow monotonically") {
    Rng rng(59);
    for (int t = 0; t < 15; ++t) {
        const Seq a = rng.coeffs(2 + t % 7);
        const std::size_t n = a.size();
        Inertia prev{}, prev_blk{};
        for (std::size_t r = 1; r <= n; ++r) {
            const Inertia left = inertia(schur_gram(a, r, GramSide::Left));
            CHECK(left.nu == inertia(schur_gram(a, r, GramSide::Right)).nu);
            CHECK(left.nu == inertia(schur_gram(a, r, GramSide::ConjLeft)).nu);
            CHECK(left.nu == inertia(schur_gram(a, r, GramSide::ConjRight)).nu);
            CHECK(left.pi == inertia(schur_gram(a, r, GramSide::Right)).pi);
            CHECK(left.pi == inertia(schur_gram(a, r, GramSide::ConjLeft)).pi);
            CHECK(left.pi == inertia(schur_gram(a, r, GramSide::ConjRight)).pi);
            if (r > 1) {
                CHECK(left.nu >= prev.nu);
                CHECK(left.pi >= prev.pi);
            }
            prev = left;
            if (2 * r <= n) {
                const Inertia blk = inertia(d_block(a, r));
                if (r > 1) {
                    CHECK(blk.nu >= prev_blk.nu);
                    CHECK(blk.pi >= prev_blk.pi);
                }
                // With nu(I_n - T_n T_n*) = kappa, every d block stays <= kappa.
                CHECK(blk.nu <= inertia(schur_gram(a, n, GramSide::Left)).nu);
                prev_blk = blk;
            }
        }
    }
}
