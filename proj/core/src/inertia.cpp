#include "pschur/inertia.hpp"

#include <algorithm>
#include <optional>

#include <Eigen/Dense>

namespace pschur {

namespace {

struct ExactDecomposition {
    Inertia in;
    Rational det = 1; // product of pivot block determinants; 0 if singular
};

// Symmetric block elimination with 1x1/2x2 pivoting, all over Q(i).
// Congruence transforms preserve inertia (Sylvester), so counting pivot
// block signs gives the exact eigenvalue sign counts.
ExactDecomposition decompose(ExactMatrix w) {
    const std::size_t n = w.rows();
    ExactDecomposition out;
    std::size_t k = 0;

    auto symmetric_swap = [&w, n](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < n; ++j) std::swap(w(a, j), w(b, j));
        for (std::size_t i = 0; i < n; ++i) std::swap(w(i, a), w(i, b));
    };

    while (k < n) {
        // 1x1 pivot: first nonzero trailing diagonal entry.
        std::optional<std::size_t> p;
        for (std::size_t i = k; i < n; ++i)
            if (!w(i, i).is_zero()) {
                p = i;
                break;
            }

        if (p) {
            symmetric_swap(k, *p);
            const Rational d = w(k, k).real(); // diagonal of Hermitian is real
            if (d > 0)
                ++out.in.pi;
            else
                ++out.in.nu;
            out.det *= d;
            const GaussianRational piv = w(k, k);
            for (std::size_t i = k + 1; i < n; ++i) {
                if (w(i, k).is_zero()) continue;
                const GaussianRational f = w(i, k) / piv;
                for (std::size_t j = k + 1; j < n; ++j) w(i, j) -= f * conj(w(j, k));
            }
            ++k;
            continue;
        }

        // Trailing diagonal is identically zero: find any nonzero off-diagonal.
        std::optional<std::pair<std::size_t, std::size_t>> od;
        for (std::size_t j = k; j < n && !od; ++j)
            for (std::size_t i = j + 1; i < n; ++i)
                if (!w(i, j).is_zero()) {
                    od = {i, j};
                    break;
                }
        if (!od) {
            out.in.zeta += static_cast<int>(n - k); // trailing block is zero
            break;
        }

        symmetric_swap(k, od->second); // od->first > od->second >= k, untouched by this swap
        symmetric_swap(k + 1, od->first);
        // 2x2 pivot [[0, conj(a)], [a, 0]] has eigenvalues +-|a|.
        const GaussianRational a = w(k + 1, k);
        ++out.in.nu;
        ++out.in.pi;
        out.det *= -a.norm2();
        for (std::size_t i = k + 2; i < n; ++i) {
            const GaussianRational x = w(i, k + 1) / conj(a); // coefficient on row k
            const GaussianRational y = w(i, k) / a;           // coefficient on row k+1
            if (x.is_zero() && y.is_zero()) continue;
            for (std::size_t j = k + 2; j < n; ++j)
                w(i, j) -= x * conj(w(j, k)) + y * conj(w(j, k + 1));
        }
        k += 2;
    }

    if (out.in.zeta > 0) out.det = 0;
    return out;
}

std::vector<double> hermitian_eigenvalues(const FloatHermitian& H) {
    const std::size_t n = H.size();
    Eigen::MatrixXcd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = H(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver failed");
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    return ev;
}

double inf_norm(const FloatHermitian& H) {
    double best = 0.0;
    for (std::size_t i = 0; i < H.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < H.size(); ++j) row += std::abs(H(i, j));
        best = std::max(best, row);
    }
    return best;
}

struct FloatCounts {
    Inertia in;
    double det = 1.0;
};

FloatCounts float_counts(const FloatHermitian& H, double eps_rel) {
    if (eps_rel <= 0.0) throw InvariantViolation("eps_rel must be positive");
    FloatCounts out;
    const double tau = eps_rel * std::max(1.0, inf_norm(H));
    for (double ev : hermitian_eigenvalues(H)) {
        const double mag = std::abs(ev);
        if (mag <= tau) {
            ++out.in.zeta;
        } else if (mag <= 10.0 * tau) {
            throw DegenerateTolerance("eigenvalue within 10x of zero threshold; retry exact");
        } else if (ev < 0) {
            ++out.in.nu;
        } else {
            ++out.in.pi;
        }
        out.det *= ev;
    }
    if (out.in.zeta > 0) out.det = 0.0;
    return out;
}

} // namespace

Inertia inertia(const ExactHermitian& H) {
    return decompose(H.matrix()).in;
}

Inertia inertia(const FloatHermitian& H, double eps_rel) {
    return float_counts(H, eps_rel).in;
}

int signature(const ExactHermitian& H) {
    return inertia(H).signature();
}

int signature(const FloatHermitian& H, double eps_rel) {
    return inertia(H, eps_rel).signature();
}

std::pair<int, Rational> rank_det(const ExactHermitian& H) {
    auto d = decompose(H.matrix());
    return {d.in.rank(), d.det};
}

std::pair<int, double> rank_det(const FloatHermitian& H, double eps_rel) {
    auto c = float_counts(H, eps_rel);
    return {c.in.rank(), c.det};
}

} // namespace pschur
