#pragma once

#include <optional>
#include <string>

#include "pschur/inertia.hpp"
#include "pschur/toeplitz.hpp"

namespace pschur {

/// Case letters of the trigonometric-moment / Caratheodory-Fejer solvability
/// theorems. Classification assigns the regime representative (A, C or F);
/// the remaining letters name which part of the theorem a class query hits.
enum class CaseLabel {
    A_Invertible,
    B_InvertibleHigher,
    C_UniqueDegenerate,
    D_ForbiddenGap,
    E_DegenerateInfinite,
    F_NoMinimal,
    G_ForbiddenGapHard,
    H_HardInfinite,
};

std::string to_string(CaseLabel label);

enum class Governing { MomentSide, CoeffSide };

/// Inertia data of the governing matrix (M_{n-1} on the moment side,
/// I_n - T_n T_n* on the coefficient side) and the derived case regime.
struct Classification {
    int base_nu = 0;
    int base_pi = 0;
    int kernel_dim = 0;
    int threshold_nu = 0; // base_nu + kernel_dim
    int threshold_pi = 0; // base_pi + kernel_dim
    int rank = 0;
    bool head_det_nonzero = false; // |governing| != 0
    bool sub_det_nonzero = false;  // |governing truncated to order rank| != 0
    CaseLabel label = CaseLabel::A_Invertible;
    Governing governing = Governing::MomentSide;
};

enum class SolvabilityVerdict { NoSolution, Unique, InfinitelyMany };

std::string to_string(SolvabilityVerdict v);

/// pi target; std::nullopt queries the class with unconstrained pi.
using PiTarget = std::optional<int>;

namespace detail {

template <class S>
bool certified_nonsingular(const HermitianMatrix<S>& h) {
    if (h.size() == 0) return true; // empty determinant is 1 by convention
    if constexpr (scalar_traits<S>::is_exact) {
        return inertia(h).zeta == 0;
    } else {
        try {
            return inertia(h).zeta == 0;
        } catch (const DegenerateTolerance& e) {
            throw InexactDegenerate(std::string("cannot certify determinant: ") + e.what());
        }
    }
}

template <class S>
Inertia certified_inertia(const HermitianMatrix<S>& h) {
    if constexpr (scalar_traits<S>::is_exact) {
        return inertia(h);
    } else {
        try {
            return inertia(h);
        } catch (const DegenerateTolerance& e) {
            throw InexactDegenerate(std::string("cannot certify inertia: ") + e.what());
        }
    }
}

inline Classification finish_classification(const Inertia& in, bool sub_nonzero, Governing side) {
    Classification cls;
    cls.base_nu = in.nu;
    cls.base_pi = in.pi;
    cls.kernel_dim = in.zeta;
    cls.threshold_nu = in.nu + in.zeta;
    cls.threshold_pi = in.pi + in.zeta;
    cls.rank = in.rank();
    cls.head_det_nonzero = (in.zeta == 0);
    cls.sub_det_nonzero = sub_nonzero;
    cls.governing = side;
    if (cls.head_det_nonzero)
        cls.label = CaseLabel::A_Invertible;
    else if (sub_nonzero)
        cls.label = CaseLabel::C_UniqueDegenerate;
    else
        cls.label = CaseLabel::F_NoMinimal;
    return cls;
}

} // namespace detail

/// Classify the moment data c_0, ..., c_{n-1} (c_0 real) by the inertia of
/// M_{n-1} and the two determinant tests of the solvability theorem.
template <class S>
Classification classify_trig(const MomentSeq<S>& c) {
    if (c.empty()) throw RangeError("classify_trig: need at least one moment");
    const std::size_t n = c.size();
    const auto head = moment_matrix(c, n - 1);
    const Inertia in = detail::certified_inertia(head);
    const std::size_t rho = static_cast<std::size_t>(in.rank());
    bool sub_nonzero = true;
    if (in.zeta != 0 && rho > 0)
        sub_nonzero = detail::certified_nonsingular(moment_matrix(c, rho - 1));
    // rho == 0 keeps |M_{-1}| = 1 by definition.
    return detail::finish_classification(in, sub_nonzero, Governing::MomentSide);
}

/// Classify coefficient data a_0, ..., a_{n-1} by the inertia of I_n - T_n T_n*.
template <class S>
Classification classify_cf(const CoeffSeq<S>& a) {
    if (a.empty()) throw RangeError("classify_cf: need at least one coefficient");
    const std::size_t n = a.size();
    const auto head = schur_gram(a, n, GramSide::Left);
    const Inertia in = detail::certified_inertia(head);
    const std::size_t rho = static_cast<std::size_t>(in.rank());
    bool sub_nonzero = true;
    if (in.zeta != 0 && rho > 0)
        sub_nonzero = detail::certified_nonsingular(schur_gram(a, rho, GramSide::Left));
    return detail::finish_classification(in, sub_nonzero, Governing::CoeffSide);
}

/// Applies the solvability theorem to a target class. On the moment side the
/// pair is (nu, pi) of the classes P_{nu,pi}; on the coefficient side it is
/// (nu, pi') of S_{nu,pi'}, which the theorem handles with identical logic.
SolvabilityVerdict resolve_class_query(const Classification& cls, int nu, PiTarget pi);

/// Theorem part letter a query lands on, when one applies (the below-base
/// exclusions come from the monotonicity preface, not a lettered part).
std::optional<CaseLabel> applied_part(const Classification& cls, int nu, PiTarget pi);

template <class S>
SolvabilityVerdict trig_solvable_in(const MomentSeq<S>& c, int nu, PiTarget pi = std::nullopt) {
    return resolve_class_query(classify_trig(c), nu, pi);
}

template <class S>
SolvabilityVerdict cf_solvable_in(const CoeffSeq<S>& a, int nu, PiTarget pi_prime = std::nullopt) {
    return resolve_class_query(classify_cf(a), nu, pi_prime);
}

/// Cross-check of the coefficient/moment equivalence: identical case label,
/// nu and kernel dimension; pi and rank shifted by one on the moment side.
template <class S>
bool equiv_check(const CoeffSeq<S>& a) {
    const Classification cf = classify_cf(a);
    const Classification tr = classify_trig(coeffs_to_moments(a));
    return cf.label == tr.label && cf.base_nu == tr.base_nu && cf.base_pi == tr.base_pi - 1 &&
           cf.kernel_dim == tr.kernel_dim && cf.rank == tr.rank - 1;
}

} // namespace pschur
