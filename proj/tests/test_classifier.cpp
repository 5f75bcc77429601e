#include <doctest.h>

#include "pschur/classifier.hpp"
#include "test_support.hpp"

using namespace pschur;
using testsupport::gr;
using testsupport::Rng;

namespace {

using GR = GaussianRational;
using Seq = std::vector<GR>;

} // namespace

TEST_CASE("moment-side classification reference cases") {
    const Classification c_unique = classify_trig(Seq{gr(1), gr(1)});
    CHECK(c_unique.label == CaseLabel::C_UniqueDegenerate);
    CHECK(c_unique.base_nu == 0);
    CHECK(c_unique.base_pi == 1);
    CHECK(c_unique.kernel_dim == 1);
    CHECK(c_unique.threshold_nu == 1);
    CHECK(c_unique.threshold_pi == 2);

    const Classification c_inv = classify_trig(Seq{gr(1), gr(2)});
    CHECK(c_inv.label == CaseLabel::A_Invertible);
    CHECK(c_inv.base_nu == 1);
    CHECK(c_inv.base_pi == 1);
    CHECK(c_inv.kernel_dim == 0);

    const Classification c_hard = classify_trig(Seq{gr(1), gr(1), gr(1), gr(0)});
    CHECK(c_hard.label == CaseLabel::F_NoMinimal);
    CHECK(c_hard.base_nu == 1);
    CHECK(c_hard.base_pi == 2);
    CHECK(c_hard.kernel_dim == 1);
    CHECK(c_hard.rank == 3);
    CHECK(c_hard.threshold_nu == 2);
    CHECK(c_hard.threshold_pi == 3);
    CHECK_FALSE(c_hard.sub_det_nonzero);
}

TEST_CASE("moment-side solvability queries") {
    const Seq degenerate{gr(1), gr(1)};
    CHECK(trig_solvable_in(degenerate, 0, PiTarget(1)) == SolvabilityVerdict::Unique);
    CHECK(trig_solvable_in(degenerate, 0, PiTarget(2)) == SolvabilityVerdict::NoSolution);
    CHECK(trig_solvable_in(degenerate, 0) == SolvabilityVerdict::Unique);
    CHECK(trig_solvable_in(degenerate, 1, PiTarget(2)) == SolvabilityVerdict::InfinitelyMany);

    const Seq hard{gr(1), gr(1), gr(1), gr(0)};
    CHECK(trig_solvable_in(hard, 2, PiTarget(3)) == SolvabilityVerdict::InfinitelyMany);
    CHECK(trig_solvable_in(hard, 1) == SolvabilityVerdict::NoSolution);
    CHECK(trig_solvable_in(hard, 2, PiTarget(2)) == SolvabilityVerdict::NoSolution);

    const Seq invertible{gr(1), gr(2)};
    CHECK(trig_solvable_in(invertible, 1, PiTarget(1)) == SolvabilityVerdict::InfinitelyMany);
    CHECK(trig_solvable_in(invertible, 0) == SolvabilityVerdict::NoSolution);
    CHECK(trig_solvable_in(invertible, 2, PiTarget(5)) == SolvabilityVerdict::InfinitelyMany);
}

TEST_CASE("theorem part letters") {
    const Classification inv = classify_trig(Seq{gr(1), gr(2)});
    CHECK(applied_part(inv, 1, PiTarget(1)) == CaseLabel::A_Invertible);
    CHECK(applied_part(inv, 2, PiTarget(1)) == CaseLabel::B_InvertibleHigher);
    CHECK_FALSE(applied_part(inv, 0, std::nullopt).has_value());

    const Classification deg = classify_trig(Seq{gr(1), gr(1)});
    CHECK(applied_part(deg, 0, PiTarget(1)) == CaseLabel::C_UniqueDegenerate);
    CHECK(applied_part(deg, 0, PiTarget(2)) == CaseLabel::D_ForbiddenGap);
    CHECK(applied_part(deg, 1, PiTarget(2)) == CaseLabel::E_DegenerateInfinite);

    const Classification hard = classify_trig(Seq{gr(1), gr(1), gr(1), gr(0)});
    CHECK(applied_part(hard, 1, PiTarget(2)) == CaseLabel::F_NoMinimal);
    CHECK(applied_part(hard, 1, PiTarget(3)) == CaseLabel::G_ForbiddenGapHard);
    CHECK(applied_part(hard, 2, PiTarget(3)) == CaseLabel::H_HardInfinite);
}

TEST_CASE("a two-dimensional kernel opens a real forbidden gap") {
    const Seq c{gr(1), gr(1), gr(1)}; // all-ones 3x3, rank 1, kernel 2
    const Classification cls = classify_trig(c);
    CHECK(cls.label == CaseLabel::C_UniqueDegenerate);
    CHECK(cls.base_nu == 0);
    CHECK(cls.base_pi == 1);
    CHECK(cls.kernel_dim == 2);
    CHECK(cls.threshold_nu == 2);
    CHECK(cls.threshold_pi == 3);

    CHECK(trig_solvable_in(c, 0, PiTarget(1)) == SolvabilityVerdict::Unique);
    for (int pi = 0; pi <= 5; ++pi) // nu = 1 lies strictly inside the gap
        CHECK(trig_solvable_in(c, 1, PiTarget(pi)) == SolvabilityVerdict::NoSolution);
    CHECK(trig_solvable_in(c, 1) == SolvabilityVerdict::NoSolution);
    CHECK(applied_part(cls, 1, std::nullopt) == CaseLabel::D_ForbiddenGap);
    CHECK(trig_solvable_in(c, 2, PiTarget(2)) == SolvabilityVerdict::NoSolution); // pi gap
    CHECK(trig_solvable_in(c, 2, PiTarget(3)) == SolvabilityVerdict::InfinitelyMany);
}

TEST_CASE("coefficient-side classification reference cases") {
    const Classification c1 = classify_cf(Seq{gr(1)});
    CHECK(c1.label == CaseLabel::C_UniqueDegenerate);
    CHECK(c1.rank == 0);
    CHECK(c1.sub_det_nonzero); // empty determinant convention
    CHECK(cf_solvable_in(Seq{gr(1)}, 0) == SolvabilityVerdict::Unique);

    const Classification chalf = classify_cf(Seq{gr(1, 2)});
    CHECK(chalf.label == CaseLabel::A_Invertible);
    CHECK(cf_solvable_in(Seq{gr(1, 2)}, 0) == SolvabilityVerdict::InfinitelyMany);

    const Classification c2 = classify_cf(Seq{gr(2)});
    CHECK(c2.base_nu == 1);
    CHECK(c2.base_pi == 0);
    CHECK(cf_solvable_in(Seq{gr(2)}, 1) == SolvabilityVerdict::InfinitelyMany);
    CHECK(cf_solvable_in(Seq{gr(2)}, 0) == SolvabilityVerdict::NoSolution);
}

TEST_CASE("coefficient and moment classifications are equivalent") {
    CHECK(equiv_check(Seq{gr(1)}));
    CHECK(equiv_check(Seq{gr(2)}));
    Rng rng(43);
    for (int t = 0; t < 40; ++t) CHECK(equiv_check(rng.coeffs(1 + t % 6)));
}

TEST_CASE("negating the moments swaps the counts") {
    Rng rng(47);
    for (int t = 0; t < 25; ++t) {
        Seq c = rng.coeffs(1 + t % 6);
        c[0] = GR(rng.rational());
        Seq negated = c;
        for (auto& v : negated) v = -v;
        const Classification orig = classify_trig(c);
        const Classification neg = classify_trig(negated);
        CHECK(neg.base_nu == orig.base_pi);
        CHECK(neg.base_pi == orig.base_nu);
        CHECK(neg.threshold_nu == orig.threshold_pi);
        CHECK(neg.threshold_pi == orig.threshold_nu);
        CHECK(neg.kernel_dim == orig.kernel_dim);
    }
}

TEST_CASE("monotone exclusion below the base") {
    Rng rng(53);
    for (int t = 0; t < 25; ++t) {
        Seq c = rng.coeffs(2 + t % 5);
        c[0] = GR(rng.rational());
        const Classification cls = classify_trig(c);
        if (cls.base_nu == 0) continue;
        for (int pi = 0; pi <= cls.threshold_pi + 1; ++pi)
            CHECK(resolve_class_query(cls, cls.base_nu - 1, PiTarget(pi)) ==
                  SolvabilityVerdict::NoSolution);
        CHECK(resolve_class_query(cls, cls.base_nu - 1, std::nullopt) ==
              SolvabilityVerdict::NoSolution);
    }
}

TEST_CASE("float classification works away from the zero band") {
    const std::vector<cdouble> c{cdouble(1.0, 0.0), cdouble(2.0, 0.0)};
    const Classification cls = classify_trig(c);
    CHECK(cls.label == CaseLabel::A_Invertible);
    CHECK(cls.base_nu == 1);

    // Exactly singular in floating arithmetic still certifies.
    const std::vector<cdouble> deg{cdouble(1.0, 0.0), cdouble(1.0, 0.0)};
    CHECK(classify_trig(deg).label == CaseLabel::C_UniqueDegenerate);

    // A determinant inside the uncertainty band must refuse.
    const std::vector<cdouble> band{cdouble(1.0, 0.0), cdouble(1.0 + 5e-9, 0.0)};
    CHECK_THROWS_AS(classify_trig(band), InexactDegenerate);
}
