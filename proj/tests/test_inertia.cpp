#include <doctest.h>

#include "pschur/inertia.hpp"
#include "test_support.hpp"

using namespace pschur;
using testsupport::cofactor_det;
using testsupport::gr;
using testsupport::Rng;

namespace {

ExactHermitian herm2(long a, long b, long c, long d) {
    ExactMatrix m(2, 2);
    m(0, 0) = gr(a);
    m(0, 1) = gr(b);
    m(1, 0) = gr(c);
    m(1, 1) = gr(d);
    return ExactHermitian(m);
}

} // namespace

TEST_CASE("inertia on reference matrices") {
    CHECK(inertia(ExactHermitian(ExactMatrix::identity(3))) == Inertia{0, 0, 3});
    CHECK(inertia(herm2(0, 1, 1, 0)) == Inertia{1, 0, 1});
    CHECK(inertia(herm2(1, 2, 2, 1)) == Inertia{1, 0, 1});
}

TEST_CASE("signature on reference matrices") {
    CHECK(signature(ExactHermitian(ExactMatrix::identity(2))) == 2);
    CHECK(signature(herm2(1, 2, 2, 1)) == 0);
    ExactMatrix m(1, 1);
    m(0, 0) = gr(-1);
    CHECK(signature(ExactHermitian(m)) == -1);
}

TEST_CASE("rank and determinant") {
    CHECK(rank_det(ExactHermitian(ExactMatrix(2, 2))) == std::pair<int, Rational>(0, 0));
    CHECK(rank_det(herm2(1, 1, 1, 1)) == std::pair<int, Rational>(1, 0));
    CHECK(rank_det(herm2(1, 2, 2, 1)) == std::pair<int, Rational>(2, -3));
    // 0x0 keeps the empty-determinant convention.
    CHECK(rank_det(ExactHermitian(ExactMatrix(0, 0))) == std::pair<int, Rational>(0, 1));
    CHECK(inertia(ExactHermitian(ExactMatrix(0, 0))) == Inertia{0, 0, 0});
}

TEST_CASE("signature from leading minors") {
    CHECK(signature_via_minors(std::vector<Rational>{1}) == 1);
    CHECK(signature_via_minors(std::vector<Rational>{1, -3}) == 0);
    CHECK(signature_via_minors(std::vector<Rational>{1, 0, -1}) == 1);
    CHECK(signature_via_minors(std::vector<double>{2.0, 0.5, -1.0}) == 1);
}

TEST_CASE("non-Hermitian input is rejected") {
    ExactMatrix m(2, 2);
    m(0, 1) = gr(1);
    m(1, 0) = gr(2);
    CHECK_THROWS_AS(ExactHermitian{m}, InvariantViolation);
}

TEST_CASE("exact inertia agrees with the float eigensolver oracle") {
    Rng rng(101);
    int compared = 0;
    for (int t = 0; t < 80; ++t) {
        const std::size_t n = 1 + t % 8;
        const ExactMatrix m = rng.hermitian(n, t % 5 == 0);
        const ExactHermitian h(m);
        const Inertia exact = inertia(h);
        try {
            const Inertia approx = inertia(FloatHermitian(to_float(m)), 1e-11);
            CHECK(exact == approx);
            ++compared;
        } catch (const DegenerateTolerance&) {
            // The oracle refuses to certify; exact mode is the authority here.
        }
    }
    CHECK(compared > 40);
}

TEST_CASE("exact determinant agrees with cofactor expansion") {
    Rng rng(57);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 1 + t % 4;
        const ExactMatrix m = rng.hermitian(n, t % 3 == 0);
        const GaussianRational det = cofactor_det(m);
        CHECK(det.is_real());
        CHECK(rank_det(ExactHermitian(m)).second == det.real());
    }
}

TEST_CASE("congruence invariance (Sylvester)") {
    Rng rng(13);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + t % 5;
        const ExactMatrix m = rng.hermitian(n);
        ExactMatrix x = ExactMatrix::identity(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) x(i, j) = rng.gaussian();
        CHECK(inertia(ExactHermitian(x * m * x.adjoint())) == inertia(ExactHermitian(m)));
    }
}

TEST_CASE("Jacobi rule matches when all leading minors are nonzero") {
    Rng rng(29);
    int checked = 0;
    while (checked < 20) {
        const std::size_t n = 2 + static_cast<std::size_t>(checked) % 5;
        const ExactMatrix m = rng.hermitian(n);
        std::vector<Rational> minors;
        bool all_nonzero = true;
        for (std::size_t k = 1; k <= n; ++k) {
            const Rational d = rank_det(ExactHermitian(m.submatrix(0, 0, k, k))).second;
            all_nonzero = all_nonzero && d != 0;
            minors.push_back(d);
        }
        if (!all_nonzero) continue;
        CHECK(signature(ExactHermitian(m)) == signature_via_minors(minors));
        ++checked;
    }
}

TEST_CASE("negation swaps the sign counts") {
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
        const ExactMatrix m = rng.hermitian(1 + t % 6, t % 4 == 0);
        const Inertia in = inertia(ExactHermitian(m));
        const Inertia neg = inertia(ExactHermitian(-m));
        CHECK(neg.nu == in.pi);
        CHECK(neg.pi == in.nu);
        CHECK(neg.zeta == in.zeta);
    }
}

TEST_CASE("tolerance policy dispatch") {
    const ExactHermitian h(ExactMatrix::identity(2));
    CHECK(inertia(h, TolerancePolicy::exact_mode()) == Inertia{0, 0, 2});
    CHECK_THROWS_AS(inertia(h, TolerancePolicy::float_mode()), InvariantViolation);

    FloatMatrix f = to_float(ExactMatrix::identity(2));
    const FloatHermitian hf(f);
    CHECK(inertia(hf, TolerancePolicy::float_mode(1e-9)) == Inertia{0, 0, 2});
    CHECK(signature(hf, TolerancePolicy::float_mode()) == 2);
    CHECK_THROWS_AS(inertia(hf, TolerancePolicy::exact_mode()), InvariantViolation);
}

TEST_CASE("float backend thresholds") {
    FloatMatrix tiny(2, 2);
    tiny(0, 0) = 1.0;
    tiny(1, 1) = 1e-12;
    CHECK(inertia(FloatHermitian(tiny)) == Inertia{0, 1, 1});

    FloatMatrix band(2, 2);
    band(0, 0) = 1.0;
    band(1, 1) = 5e-9; // inside (tau, 10*tau]
    CHECK_THROWS_AS(inertia(FloatHermitian(band)), DegenerateTolerance);

    FloatMatrix nan_mat(1, 1);
    nan_mat(0, 0) = cdouble(std::numeric_limits<double>::quiet_NaN(), 0.0);
    CHECK_THROWS_AS(FloatHermitian{nan_mat}, InvariantViolation);
}
