#pragma once

#include <complex>
#include <string>
#include <type_traits>

#include <gmpxx.h>

#include "pschur/errors.hpp"

namespace pschur {

using Rational = mpq_class;
using cdouble = std::complex<double>;

/// Exact Gaussian rational: re + im*i with both parts in Q.
/// All arithmetic is closed; no rounding ever occurs.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long v) : re_(v), im_(0) {} // NOLINT: implicit by design
    GaussianRational(const Rational& re) : re_(re), im_(0) { re_.canonicalize(); } // NOLINT
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational conj() const { return {re_, -im_}; }

    /// |z|^2, exact.
    Rational norm2() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw Error("GaussianRational: division by zero");
        Rational d = o.norm2();
        Rational r = (re_ * o.re_ + im_ * o.im_) / d;
        Rational i = (im_ * o.re_ - re_ * o.im_) / d;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    cdouble to_cdouble() const { return {re_.get_d(), im_.get_d()}; }

    /// Canonical form: "p/q", "p", "p/q+r/si", "r/si", ...; see parse_gaussian_rational.
    std::string str() const;

private:
    Rational re_, im_;
};

/// Parse "p/q", "-3", "1/2+2/3i", "-i", "2i", "1-i", ... Exact; throws ParseError.
GaussianRational parse_gaussian_rational(const std::string& text);

/// Parse a float complex literal: "0.5", "-1.25e-3+0.5i", "i", ... Throws ParseError.
cdouble parse_cdouble(const std::string& text);

/// Canonical float formatting (round-trip exact, deterministic).
std::string format_cdouble(const cdouble& z);

inline GaussianRational conj(const GaussianRational& z) { return z.conj(); }
inline cdouble conj(const cdouble& z) { return std::conj(z); }

/// -1 / 0 / +1 of an exact rational.
inline int sign(const Rational& r) { return sgn(r); }
inline int sign(double r) { return (r > 0) - (r < 0); }

// Uniform accessors so generic matrix code works on both backends.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<GaussianRational> {
    static constexpr bool is_exact = true;
    using real_type = Rational;
    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return GaussianRational(1); }
    static bool is_zero(const GaussianRational& z) { return z.is_zero(); }
    static real_type real(const GaussianRational& z) { return z.real(); }
    static real_type imag(const GaussianRational& z) { return z.imag(); }
    static double to_double(const real_type& r) { return r.get_d(); }
};

template <>
struct scalar_traits<cdouble> {
    static constexpr bool is_exact = false;
    using real_type = double;
    static cdouble zero() { return {0.0, 0.0}; }
    static cdouble one() { return {1.0, 0.0}; }
    static bool is_zero(const cdouble& z) { return z == cdouble{0.0, 0.0}; }
    static real_type real(const cdouble& z) { return z.real(); }
    static real_type imag(const cdouble& z) { return z.imag(); }
    static double to_double(real_type r) { return r; }
};

} // namespace pschur
