#include "pschur/extension.hpp"

#include <algorithm>
#include <cassert>
#include <optional>

namespace pschur {

namespace {

using GR = GaussianRational;

ExactHermitian moment_matrix_with(const ExactMomentSeq& c, const GR& x) {
    ExactMomentSeq ext = c;
    ext.push_back(x);
    return moment_matrix(ext, ext.size() - 1);
}

Rational det_with(const ExactMomentSeq& c, const GR& x) {
    return rank_det(moment_matrix_with(c, x)).second;
}

// Exact nullspace vector of a singular matrix with one-dimensional kernel,
// by Gaussian elimination over Q(i).
std::vector<GR> kernel_vector(const ExactMatrix& m_in) {
    ExactMatrix m = m_in;
    const std::size_t n = m.rows();
    std::vector<std::size_t> pivot_col_of_row;
    std::size_t row = 0;
    std::vector<bool> is_pivot_col(n, false);
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t p = row;
        while (p < n && m(p, col).is_zero()) ++p;
        if (p == n) continue;
        if (p != row)
            for (std::size_t j = 0; j < n; ++j) std::swap(m(row, j), m(p, j));
        const GR piv = m(row, col);
        for (std::size_t i = row + 1; i < n; ++i) {
            if (m(i, col).is_zero()) continue;
            const GR f = m(i, col) / piv;
            for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(row, j);
        }
        pivot_col_of_row.push_back(col);
        is_pivot_col[col] = true;
        ++row;
    }
    std::optional<std::size_t> free_col;
    for (std::size_t col = 0; col < n; ++col)
        if (!is_pivot_col[col]) {
            free_col = col;
            break;
        }
    if (!free_col) throw Error("kernel_vector: matrix is nonsingular");

    std::vector<GR> u(n);
    u[*free_col] = GR(1);
    for (std::size_t r = pivot_col_of_row.size(); r-- > 0;) {
        const std::size_t pc = pivot_col_of_row[r];
        GR s;
        for (std::size_t j = pc + 1; j < n; ++j) s += m(r, j) * u[j];
        u[pc] = -s / m(r, pc);
    }
    return u;
}

// Kernel vector of M_rho normalized so the last entry is 1. Exists and is
// unique when the leading rho x rho section is invertible.
std::vector<GR> recurrence_vector(const ExactMomentSeq& c, std::size_t rho) {
    const auto m_rho = moment_matrix(c, rho);
    std::vector<GR> u = kernel_vector(m_rho.matrix());
    if (u.back().is_zero()) throw Error("recurrence_vector: kernel vector has zero last entry");
    const GR last = u.back();
    for (auto& v : u) v = v / last;
    return u;
}

GR next_by_recurrence(const ExactMomentSeq& c, const std::vector<GR>& u) {
    // sum_{j=0}^{rho} c_{m-rho+j} conj(u_j) = 0 solved for the new c_m.
    const std::size_t rho = u.size() - 1;
    const std::size_t m = c.size();
    GR s;
    for (std::size_t j = 0; j < rho; ++j) s += c[m - rho + j] * conj(u[j]);
    return -s;
}

struct HeadState {
    Inertia in;
    Rational det;
};

HeadState head_state(const ExactMomentSeq& c) {
    const auto h = moment_matrix(c, c.size() - 1);
    auto [rank, det] = rank_det(h);
    (void)rank;
    return {inertia(h), det};
}

// Sampling ladder for the free rational parameter of a one-parameter family.
Rational ladder(unsigned k) {
    static const int numerators[] = {0, 1, -1, 2, -2, 3, -3, 5, -5, 7};
    if (k < 10) return Rational(numerators[k]);
    return Rational(static_cast<long>(k) - 5);
}

} // namespace

Rational DetQuadratic::eval(const GaussianRational& x) const {
    return alpha * x.norm2() + 2 * (beta.real() * x.real() + beta.imag() * x.imag()) + gamma;
}

DetQuadratic det_as_function_of_cn(const ExactMomentSeq& c) {
    if (c.empty()) throw RangeError("det_as_function_of_cn: need at least one moment");
    const Rational d0 = det_with(c, GR(0));
    const Rational d1 = det_with(c, GR(1));
    const Rational dm1 = det_with(c, GR(-1));
    const Rational di = det_with(c, GR(Rational(0), Rational(1)));

    DetQuadratic q;
    q.gamma = d0;
    Rational re_beta = (d1 - dm1) / 4;
    q.alpha = (d1 + dm1) / 2 - d0;
    Rational im_beta = (di - d0 - q.alpha) / 2;
    q.beta = GR(re_beta, im_beta);

    // The form is exact, not a fit; cross-check at an off-axis point.
    const GR probe(Rational(2), Rational(1));
    if (q.eval(probe) != det_with(c, probe))
        throw Error("det_as_function_of_cn: determinant is not the expected Hermitian quadratic");
    return q;
}

ExtensionPlan rank_preserving_step(const ExactMomentSeq& c) {
    if (c.empty()) throw RangeError("rank_preserving_step: need at least one moment");
    const HeadState head = head_state(c);
    const std::size_t n = c.size();

    ExtensionPlan plan;

    if (head.in.zeta > 0) {
        // Degenerate head: a rank-preserving choice exists iff the leading
        // rho x rho section is invertible, and then it is unique.
        const std::size_t rho = static_cast<std::size_t>(head.in.rank());
        const bool sub_nonzero =
            rho == 0 || rank_det(moment_matrix(c, rho - 1)).second != 0;
        if (!sub_nonzero)
            throw NoRankPreservingExtension("no c_n preserves the rank of M_{n-1}");
        plan.kind = PlanKind::UniqueRecurrence;
        plan.recurrence = rho == 0 ? std::vector<GR>{GR(1)} : recurrence_vector(c, rho);
        plan.produced_terms.push_back(next_by_recurrence(c, plan.recurrence));
    } else {
        const DetQuadratic q = det_as_function_of_cn(c);
        if (q.alpha != 0) {
            // Zero locus of det M_n is a circle. Its radius is the exact
            // rational |det M_{n-1} / det M_{n-2}|: det M_n(x) relates to the
            // two central minors through the Desnanot-Jacobi identity, which
            // makes |M_{n-1}|^2 - |p + q x|^2 proportional to det M_n(x) with
            // |q| = |M_{n-2}|.
            plan.kind = PlanKind::RankPreservingCircle;
            plan.center = -q.beta / GR(q.alpha);
            const Rational sub_det =
                n >= 2 ? rank_det(moment_matrix(c, n - 2)).second : Rational(1);
            if (sub_det == 0) throw Error("rank_preserving_step: alpha != 0 requires |M_{n-2}| != 0");
            plan.radius = abs(head.det / sub_det);
            const Rational radius2 = plan.radius * plan.radius;
            if (radius2 != q.beta.norm2() / (q.alpha * q.alpha) - q.gamma / q.alpha)
                throw Error("rank_preserving_step: radius identity failed");
            for (unsigned k = 0; plan.produced_terms.size() < 3; ++k) {
                const Rational t = ladder(k);
                const Rational denom = 1 + t * t;
                const GR point = plan.center +
                                 GR(plan.radius * (1 - t * t) / denom, plan.radius * 2 * t / denom);
                if (q.eval(point) != 0) throw Error("rank_preserving_step: sampled point off the circle");
                plan.produced_terms.push_back(point);
            }
        } else {
            // alpha = 0: the locus is the line 2 Re(conj(beta) x) + gamma = 0.
            // beta = 0 cannot happen here: det M_n would be constant, while an
            // invertible head admits both singular and nonsingular extensions.
            if (q.beta.is_zero()) throw Error("rank_preserving_step: degenerate constant determinant");
            plan.kind = PlanKind::RankPreservingLine;
            plan.center = -GR(q.gamma) * q.beta / GR(2 * q.beta.norm2());
            plan.direction = GR(Rational(0), Rational(1)) * q.beta; // i*beta: Re(conj(beta)*i*beta) = 0
            for (unsigned k = 0; plan.produced_terms.size() < 3; ++k) {
                const GR point = plan.center + GR(ladder(k)) * plan.direction;
                if (q.eval(point) != 0) throw Error("rank_preserving_step: sampled point off the line");
                plan.produced_terms.push_back(point);
            }
        }
    }

    // Post-verify: every produced term keeps rank and sign counts.
    for (const GR& x : plan.produced_terms) {
        const Inertia after = inertia(moment_matrix_with(c, x));
        if (after.nu != head.in.nu || after.pi != head.in.pi)
            throw Error("rank_preserving_step: post-verification failed");
    }
    return plan;
}

std::vector<GaussianRational> unique_extension_stream(const ExactMomentSeq& c, std::size_t k) {
    if (c.empty()) throw RangeError("unique_extension_stream: need at least one moment");
    const HeadState head = head_state(c);
    if (head.in.zeta == 0)
        throw PreconditionViolated("unique_extension_stream: M_{n-1} must be singular");
    const std::size_t rho = static_cast<std::size_t>(head.in.rank());
    if (rho > 0 && rank_det(moment_matrix(c, rho - 1)).second == 0)
        throw PreconditionViolated("unique_extension_stream: |M_{rho-1}| must be nonzero");

    const std::vector<GR> u = rho == 0 ? std::vector<GR>{GR(1)} : recurrence_vector(c, rho);
    ExactMomentSeq work = c;
    std::vector<GR> out;
    out.reserve(k);
    for (std::size_t step = 0; step < k; ++step) {
        const GR next = next_by_recurrence(work, u);
        work.push_back(next);
        out.push_back(next);
        const Inertia after = inertia(moment_matrix(work, work.size() - 1));
        if (after.nu != head.in.nu || after.pi != head.in.pi ||
            after.rank() != head.in.rank())
            throw Error("unique_extension_stream: recurrence broke rank/inertia invariance");
    }
    return out;
}

ExtensionPlan inertia_bump_step(const ExactMomentSeq& c, BumpDirection dir) {
    if (c.empty()) throw RangeError("inertia_bump_step: need at least one moment");
    const HeadState head = head_state(c);
    if (head.in.zeta != 0)
        throw PreconditionViolated("inertia_bump_step: M_{n-1} must be invertible");

    // Appending with det M_n != 0 raises the rank by one; the sign of
    // |M_{n-1}||M_n| then decides which count increments.
    const int target = dir == BumpDirection::Pi ? sign(head.det) : -sign(head.det);
    const DetQuadratic q = det_as_function_of_cn(c);

    ExtensionPlan plan;
    plan.kind = PlanKind::InertiaBump;
    plan.det_sign_target = target;

    std::vector<GR> candidates;
    if (q.alpha == 0) {
        if (q.beta.is_zero()) throw Error("inertia_bump_step: degenerate constant determinant");
        // det(t*beta) = 2 t |beta|^2 + gamma is onto the reals.
        const Rational span = abs(q.gamma) + 1;
        for (unsigned k = 0; candidates.size() < 3; ++k) {
            const Rational value = target * (span + ladder(k) * ladder(k) + k);
            const Rational t = (value - q.gamma) / (2 * q.beta.norm2());
            candidates.push_back(GR(t) * q.beta);
        }
    } else if (sign(q.alpha) == target) {
        // Dominant |x|^2 term: walk outward along the real axis.
        Rational t = 1;
        while (candidates.size() < 3) {
            if (sign(q.eval(GR(t))) == target) candidates.push_back(GR(t));
            if (sign(q.eval(GR(-t))) == target && candidates.size() < 3) candidates.push_back(GR(-t));
            t *= 2;
        }
    } else {
        // Opposite sign is attained near the center of the circle.
        const GR center = -q.beta / GR(q.alpha);
        const Rational center_value = q.eval(center);
        if (sign(center_value) != target)
            throw Error("inertia_bump_step: determinant range does not reach the target sign");
        const Rational radius2 = center_value / -q.alpha; // = radius^2 > 0
        // |delta|^2 < radius^2 keeps the sign; use shrinking rational offsets.
        Rational step = 1;
        while (4 * step * step >= radius2) step /= 2;
        candidates.push_back(center);
        candidates.push_back(center + GR(step));
        candidates.push_back(center + GR(Rational(0), step));
        candidates.push_back(center - GR(step));
    }

    for (const GR& x : candidates) {
        const Rational d = det_with(c, x);
        if (sign(d) != target) continue;
        const Inertia after = inertia(moment_matrix_with(c, x));
        const bool ok = dir == BumpDirection::Nu
                            ? (after.nu == head.in.nu + 1 && after.pi == head.in.pi)
                            : (after.pi == head.in.pi + 1 && after.nu == head.in.nu);
        if (!ok) throw Error("inertia_bump_step: verified determinant sign but wrong inertia step");
        plan.produced_terms.push_back(x);
    }
    if (plan.produced_terms.size() < 3)
        throw Error("inertia_bump_step: could not assemble three verified candidates");
    return plan;
}

bool step_laws_hold(const Inertia& prev, const Inertia& next) {
    const int jump = next.rank() - prev.rank();
    switch (jump) {
        case 0: return next.nu == prev.nu && next.pi == prev.pi;
        case 1:
            return (next.nu == prev.nu + 1 && next.pi == prev.pi) ||
                   (next.nu == prev.nu && next.pi == prev.pi + 1);
        case 2: return next.nu == prev.nu + 1 && next.pi == prev.pi + 1;
        default: return false;
    }
}

std::vector<GaussianRational> extend_to_class(const ExactMomentSeq& c, int nu, int pi,
                                              std::size_t horizon, unsigned variant) {
    if (trig_solvable_in(c, nu, PiTarget(pi)) == SolvabilityVerdict::NoSolution)
        throw NotSolvable("extend_to_class: target class is empty for this data");

    ExactMomentSeq work = c;
    std::vector<GR> produced;
    produced.reserve(horizon);
    Inertia prev = head_state(work).in;

    auto append = [&](const GR& x) {
        if (produced.size() >= horizon)
            throw HorizonTooSmall("extend_to_class: construction needs more terms than the horizon");
        work.push_back(x);
        produced.push_back(x);
        const Inertia now = inertia(moment_matrix(work, work.size() - 1));
        if (!step_laws_hold(prev, now)) throw Error("extend_to_class: step laws violated");
        prev = now;
    };

    auto pick = [&](const std::vector<GR>& terms) {
        return terms[std::min<std::size_t>(variant, terms.size() - 1)];
    };

    bool finished = false;
    while (!finished) {
        const HeadState head = head_state(work);
        if (head.in.nu > nu || head.in.pi > pi)
            throw Error("extend_to_class: overshot the target inertia");

        if (head.in.zeta == 0) {
            if (head.in.nu == nu && head.in.pi == pi) {
                if (produced.size() < horizon) {
                    append(pick(rank_preserving_step(work).produced_terms));
                    const std::size_t remaining = horizon - produced.size();
                    if (remaining > 0) {
                        for (const GR& x : unique_extension_stream(work, remaining)) {
                            work.push_back(x);
                            produced.push_back(x);
                        }
                    }
                }
                finished = true;
            } else if (head.in.nu < nu) {
                append(pick(inertia_bump_step(work, BumpDirection::Nu).produced_terms));
            } else {
                append(pick(inertia_bump_step(work, BumpDirection::Pi).produced_terms));
            }
        } else {
            const std::size_t rho = static_cast<std::size_t>(head.in.rank());
            const bool sub_nonzero =
                rho == 0 || rank_det(moment_matrix(work, rho - 1)).second != 0;
            if (head.in.nu == nu && head.in.pi == pi && sub_nonzero) {
                // The unique rank-preserving stream realizes the target.
                for (const GR& x : unique_extension_stream(work, horizon - produced.size())) {
                    work.push_back(x);
                    produced.push_back(x);
                }
                finished = true;
            } else {
                // Grow the rank: any value other than the unique rank
                // preserver (when one exists) forces an increase.
                GR x(static_cast<long>(variant));
                if (sub_nonzero) {
                    const auto u = rho == 0 ? std::vector<GR>{GR(1)} : recurrence_vector(work, rho);
                    x = next_by_recurrence(work, u) + GR(1 + static_cast<long>(variant));
                }
                append(x);
            }
        }
    }

    // Stabilization audit: the tail inertia must equal the target.
    const Inertia final_in = head_state(work).in;
    if (final_in.nu != nu || final_in.pi != pi)
        throw HorizonTooSmall("extend_to_class: horizon ended before inertia stabilized");
    return produced;
}

} // namespace pschur
