#include "pschur/classifier.hpp"

namespace pschur {

std::string to_string(CaseLabel label) {
    switch (label) {
        case CaseLabel::A_Invertible: return "A_Invertible";
        case CaseLabel::B_InvertibleHigher: return "B_InvertibleHigher";
        case CaseLabel::C_UniqueDegenerate: return "C_UniqueDegenerate";
        case CaseLabel::D_ForbiddenGap: return "D_ForbiddenGap";
        case CaseLabel::E_DegenerateInfinite: return "E_DegenerateInfinite";
        case CaseLabel::F_NoMinimal: return "F_NoMinimal";
        case CaseLabel::G_ForbiddenGapHard: return "G_ForbiddenGapHard";
        case CaseLabel::H_HardInfinite: return "H_HardInfinite";
    }
    return "?";
}

std::string to_string(SolvabilityVerdict v) {
    switch (v) {
        case SolvabilityVerdict::NoSolution: return "NoSolution";
        case SolvabilityVerdict::Unique: return "Unique";
        case SolvabilityVerdict::InfinitelyMany: return "InfinitelyMany";
    }
    return "?";
}

SolvabilityVerdict resolve_class_query(const Classification& cls, int nu, PiTarget pi) {
    if (nu < 0 || (pi && *pi < 0)) throw RangeError("class indices must be nonnegative");

    const bool pi_at_least = !pi || *pi >= cls.base_pi;
    const bool pi_at_thresholds = !pi || *pi >= cls.threshold_pi;
    const bool pi_at_base = !pi || *pi == cls.base_pi;

    if (cls.head_det_nonzero) {
        // Invertible regime: everything at or above the base pair.
        return (nu >= cls.base_nu && pi_at_least) ? SolvabilityVerdict::InfinitelyMany
                                                  : SolvabilityVerdict::NoSolution;
    }
    if (cls.sub_det_nonzero) {
        // Degenerate with an invertible leading section: one extension at the
        // base pair, a forbidden gap, then infinitely many at the thresholds.
        if (nu == cls.base_nu && pi_at_base) return SolvabilityVerdict::Unique;
        if (nu >= cls.threshold_nu && pi_at_thresholds) return SolvabilityVerdict::InfinitelyMany;
        return SolvabilityVerdict::NoSolution;
    }
    // Hard-degenerate regime: nothing below the thresholds.
    if (nu >= cls.threshold_nu && pi_at_thresholds) return SolvabilityVerdict::InfinitelyMany;
    return SolvabilityVerdict::NoSolution;
}

std::optional<CaseLabel> applied_part(const Classification& cls, int nu, PiTarget pi) {
    const SolvabilityVerdict verdict = resolve_class_query(cls, nu, pi);
    const bool pi_below_base = pi && *pi < cls.base_pi;

    if (cls.head_det_nonzero) {
        if (verdict == SolvabilityVerdict::NoSolution) return std::nullopt; // monotonicity preface
        const bool at_base = (nu == cls.base_nu) && (!pi || *pi == cls.base_pi);
        return at_base ? CaseLabel::A_Invertible : CaseLabel::B_InvertibleHigher;
    }
    if (cls.sub_det_nonzero) {
        if (verdict == SolvabilityVerdict::Unique) return CaseLabel::C_UniqueDegenerate;
        if (verdict == SolvabilityVerdict::InfinitelyMany) return CaseLabel::E_DegenerateInfinite;
        if (nu < cls.base_nu || pi_below_base) return std::nullopt;
        return CaseLabel::D_ForbiddenGap;
    }
    if (verdict == SolvabilityVerdict::InfinitelyMany) return CaseLabel::H_HardInfinite;
    if (nu < cls.base_nu || pi_below_base) return std::nullopt;
    if (nu == cls.base_nu && (!pi || *pi == cls.base_pi)) return CaseLabel::F_NoMinimal;
    return CaseLabel::G_ForbiddenGapHard;
}

} // namespace pschur
