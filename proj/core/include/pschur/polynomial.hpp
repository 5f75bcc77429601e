#pragma once

#include <cstddef>
#include <vector>

#include "pschur/errors.hpp"
#include "pschur/scalar.hpp"

namespace pschur {

/// Dense polynomial, coefficients ordered low degree first.
template <class S>
class Polynomial {
public:
    Polynomial() : coeffs_{scalar_traits<S>::zero()} {}
    explicit Polynomial(std::vector<S> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.push_back(scalar_traits<S>::zero());
        trim();
    }
    static Polynomial constant(const S& v) { return Polynomial(std::vector<S>{v}); }

    const std::vector<S>& coeffs() const { return coeffs_; }
    std::size_t degree() const { return coeffs_.size() - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && scalar_traits<S>::is_zero(coeffs_[0]); }

    S eval(const S& z) const {
        S acc = scalar_traits<S>::zero();
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
        return acc;
    }

    Polynomial derivative() const {
        if (coeffs_.size() == 1) return Polynomial();
        std::vector<S> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * S(static_cast<long>(i));
        return Polynomial(std::move(d));
    }

    /// Coefficients conjugated: this realizes f~(z) = conj(f(conj(z))).
    Polynomial conj_coeffs() const {
        std::vector<S> c(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] = conj(coeffs_[i]);
        return Polynomial(std::move(c));
    }

    Polynomial operator*(const Polynomial& o) const {
        std::vector<S> p(coeffs_.size() + o.coeffs_.size() - 1, scalar_traits<S>::zero());
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j) p[i + j] += coeffs_[i] * o.coeffs_[j];
        return Polynomial(std::move(p));
    }

    Polynomial operator+(const Polynomial& o) const {
        std::vector<S> p(std::max(coeffs_.size(), o.coeffs_.size()), scalar_traits<S>::zero());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) p[i] += coeffs_[i];
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) p[i] += o.coeffs_[i];
        return Polynomial(std::move(p));
    }

    Polynomial operator-(const Polynomial& o) const {
        std::vector<S> p(std::max(coeffs_.size(), o.coeffs_.size()), scalar_traits<S>::zero());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) p[i] += coeffs_[i];
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) p[i] -= o.coeffs_[i];
        return Polynomial(std::move(p));
    }

    Polynomial scaled(const S& v) const {
        std::vector<S> p = coeffs_;
        for (auto& x : p) x *= v;
        return Polynomial(std::move(p));
    }

private:
    void trim() {
        while (coeffs_.size() > 1 && scalar_traits<S>::is_zero(coeffs_.back())) coeffs_.pop_back();
    }

    std::vector<S> coeffs_;
};

enum class RatFnForm { General, BlaschkeProduct, BlaschkeQuotient };

/// Quotient of polynomials with an optional Blaschke-structure tag.
template <class S>
struct RationalFunction {
    Polynomial<S> num;
    Polynomial<S> den = Polynomial<S>::constant(scalar_traits<S>::one());
    RatFnForm form = RatFnForm::General;
    std::vector<S> blaschke_zeros; // product forms: zeros inside the open disk
    std::vector<S> blaschke_poles; // quotient form: inverted-factor zeros
    S unimodular_constant = scalar_traits<S>::one();

    S eval(const S& z) const {
        const S d = den.eval(z);
        if (scalar_traits<S>::is_zero(d)) throw PoleAtSamplePoint("denominator vanishes at sample");
        if constexpr (!scalar_traits<S>::is_exact) {
            if (std::abs(d) < 1e-13 * (1.0 + std::abs(num.eval(z))))
                throw PoleAtSamplePoint("denominator numerically vanishes at sample");
        }
        return num.eval(z) / d;
    }

    S derivative_at(const S& z) const {
        const S d = den.eval(z);
        if (scalar_traits<S>::is_zero(d)) throw PoleAtSamplePoint("denominator vanishes at sample");
        return (num.derivative().eval(z) * d - num.eval(z) * den.derivative().eval(z)) / (d * d);
    }

    /// f~(z) = conj(f(conj(z))).
    RationalFunction conj_function() const {
        RationalFunction out = *this;
        out.num = num.conj_coeffs();
        out.den = den.conj_coeffs();
        for (auto& z : out.blaschke_zeros) z = conj(z);
        for (auto& z : out.blaschke_poles) z = conj(z);
        out.unimodular_constant = conj(unimodular_constant);
        return out;
    }
};

/// Single Blaschke factor (z - alpha) / (1 - conj(alpha) z).
template <class S>
RationalFunction<S> blaschke_factor(const S& alpha) {
    RationalFunction<S> f;
    f.num = Polynomial<S>({-alpha, scalar_traits<S>::one()});
    f.den = Polynomial<S>({scalar_traits<S>::one(), -conj(alpha)});
    f.form = RatFnForm::BlaschkeProduct;
    f.blaschke_zeros = {alpha};
    return f;
}

/// gamma * prod (z - z_k)/(1 - conj(z_k) z); zeros must lie in the open disk
/// and |gamma| = 1 (checked exactly or to 1e-12).
template <class S>
RationalFunction<S> blaschke_product(const std::vector<S>& zeros, const S& gamma) {
    if constexpr (scalar_traits<S>::is_exact) {
        if (!(gamma.norm2() == Rational(1)))
            throw InvariantViolation("blaschke_product: |gamma| must be exactly 1");
        for (const auto& z : zeros)
            if (!(z.norm2() < Rational(1)))
                throw InvariantViolation("blaschke_product: zero outside the open disk");
    } else {
        if (std::abs(std::abs(gamma) - 1.0) > 1e-12)
            throw InvariantViolation("blaschke_product: |gamma| must be 1");
        for (const auto& z : zeros)
            if (!(std::abs(z) < 1.0)) throw InvariantViolation("blaschke_product: zero outside the open disk");
    }
    RationalFunction<S> f;
    f.num = Polynomial<S>::constant(gamma);
    f.den = Polynomial<S>::constant(scalar_traits<S>::one());
    for (const auto& z : zeros) {
        f.num = f.num * Polynomial<S>({-z, scalar_traits<S>::one()});
        f.den = f.den * Polynomial<S>({scalar_traits<S>::one(), -conj(z)});
    }
    f.form = RatFnForm::BlaschkeProduct;
    f.blaschke_zeros = zeros;
    f.unimodular_constant = gamma;
    return f;
}

/// (f(z) - f(w)) / (z - w), with the confluent case evaluated as f'(z).
template <class S>
S divided_difference(const RationalFunction<S>& f, const S& z, const S& w) {
    bool confluent;
    if constexpr (scalar_traits<S>::is_exact)
        confluent = (z == w);
    else
        confluent = std::abs(z - w) < 1e-13;
    if (confluent) return f.derivative_at(z);
    return (f.eval(z) - f.eval(w)) / (z - w);
}

/// First `count` Taylor coefficients of num/den at the origin; requires
/// den(0) != 0.
template <class S>
std::vector<S> taylor_coefficients(const RationalFunction<S>& f, std::size_t count) {
    const auto& num = f.num.coeffs();
    const auto& den = f.den.coeffs();
    if (scalar_traits<S>::is_zero(den[0]))
        throw PoleAtSamplePoint("taylor_coefficients: pole at the origin");
    std::vector<S> s(count, scalar_traits<S>::zero());
    for (std::size_t k = 0; k < count; ++k) {
        S v = k < num.size() ? num[k] : scalar_traits<S>::zero();
        for (std::size_t i = 1; i <= k && i < den.size(); ++i) v -= den[i] * s[k - i];
        s[k] = v / den[0];
    }
    return s;
}

} // namespace pschur
