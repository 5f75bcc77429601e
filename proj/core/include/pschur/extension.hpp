#pragma once

#include <cstddef>
#include <vector>

#include "pschur/classifier.hpp"
#include "pschur/toeplitz.hpp"

namespace pschur {

using ExactMomentSeq = MomentSeq<GaussianRational>;

/// det M_n(x) = alpha*|x|^2 + 2*Re(conj(beta)*x) + gamma as a function of the
/// trial moment x = c_n. Recovered by evaluation at x in {0, 1, i, -1};
/// alpha and gamma are real because M_n(x) is Hermitian.
struct DetQuadratic {
    Rational alpha;
    GaussianRational beta;
    Rational gamma;

    Rational eval(const GaussianRational& x) const;
};

DetQuadratic det_as_function_of_cn(const ExactMomentSeq& c);

enum class PlanKind {
    RankPreservingCircle, // det-zero locus is a circle; infinitely many choices
    RankPreservingLine,   // degenerate locus (alpha = 0); still infinitely many
    UniqueRecurrence,     // exactly one rank-preserving choice
    InertiaBump,          // choices that increment one sign count
};

/// A constructive extension step together with verified sample terms.
/// Every produced term has been re-checked against its defining
/// rank/inertia predicate by the exact inertia instrument.
struct ExtensionPlan {
    PlanKind kind = PlanKind::RankPreservingCircle;
    GaussianRational center;                  // circle center / line base point
    Rational radius = 0;                      // circle radius (exact; see notes)
    GaussianRational direction;               // line direction (alpha = 0 case)
    std::vector<GaussianRational> recurrence; // kernel vector, last entry 1
    int det_sign_target = 0;                  // InertiaBump: required sign of det M_n
    std::vector<GaussianRational> produced_terms;
};

/// One-step rank-preserving extension: the full solution locus plus at least
/// three verified members when it is infinite, or the unique member.
/// Throws NoRankPreservingExtension when no such step exists.
ExtensionPlan rank_preserving_step(const ExactMomentSeq& c);

/// The unique rank-rho extension stream (degenerate head, invertible leading
/// rho x rho section): returns c_n, ..., c_{n+k-1} from the kernel recurrence,
/// post-verified to keep rank and inertia constant.
std::vector<GaussianRational> unique_extension_stream(const ExactMomentSeq& c, std::size_t k);

enum class BumpDirection { Nu, Pi };

/// One-step extension incrementing nu (resp. pi) by exactly one while keeping
/// the top matrix invertible; at least three distinct verified candidates.
ExtensionPlan inertia_bump_step(const ExactMomentSeq& c, BumpDirection dir);

/// Composes bump steps to reach inertia (nu, pi), then a rank-preserving step
/// and the unique recurrence out to the horizon. Returns exactly `horizon`
/// further moments whose matrices have inertia (nu, pi) from the
/// stabilization index on. `variant` deterministically selects among the
/// infinitely many admissible constructions.
std::vector<GaussianRational> extend_to_class(const ExactMomentSeq& c, int nu, int pi,
                                              std::size_t horizon, unsigned variant = 0);

/// Rank/inertia step laws along an extension: rank increment in {0,1,2};
/// increment 0 leaves inertia unchanged, increment 2 bumps both counts.
bool step_laws_hold(const Inertia& prev, const Inertia& next);

} // namespace pschur
