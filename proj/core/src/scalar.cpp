#include "pschur/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>

namespace pschur {

namespace {

std::string rational_str(const Rational& r) {
    return r.get_str();
}

// Scans one signed rational "[-+]?digits[/digits]" starting at pos.
// Returns the value; advances pos past it.
Rational scan_rational(const std::string& s, size_t& pos) {
    bool negative = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        negative = (s[pos] == '-');
        ++pos;
    }
    size_t digits_begin = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits_begin) throw ParseError("expected digits in rational at '" + s + "'");
    size_t body_begin = digits_begin;
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        size_t den_begin = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == den_begin) throw ParseError("expected denominator digits in '" + s + "'");
    }
    Rational r;
    if (r.set_str(s.substr(body_begin, pos - body_begin), 10) != 0)
        throw ParseError("bad rational literal '" + s + "'");
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

} // namespace

std::string GaussianRational::str() const {
    if (im_ == 0) return rational_str(re_);
    std::string imag_part = rational_str(im_) + "i";
    if (re_ == 0) return imag_part;
    if (im_ > 0) return rational_str(re_) + "+" + imag_part;
    return rational_str(re_) + imag_part; // sign carried by im_
}

GaussianRational parse_gaussian_rational(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("empty number literal");

    // Bare imaginary unit forms: "i", "-i", "+i".
    auto is_unit_imag = [](const std::string& t) {
        return t == "i" || t == "+i" || t == "-i";
    };
    if (is_unit_imag(s)) return {Rational(0), Rational(s[0] == '-' ? -1 : 1)};

    size_t pos = 0;
    Rational first = scan_rational(s, pos);
    if (pos == s.size()) return {first, Rational(0)};
    if (s[pos] == 'i') {
        if (pos + 1 != s.size()) throw ParseError("trailing characters in '" + text + "'");
        return {Rational(0), first};
    }
    if (s[pos] != '+' && s[pos] != '-')
        throw ParseError("expected '+', '-' or 'i' in '" + text + "'");
    if (s.compare(pos, std::string::npos, "+i") == 0) return {first, Rational(1)};
    if (s.compare(pos, std::string::npos, "-i") == 0) return {first, Rational(-1)};
    Rational second = scan_rational(s, pos);
    if (pos >= s.size() || s[pos] != 'i' || pos + 1 != s.size())
        throw ParseError("expected imaginary part 'ri' in '" + text + "'");
    return {first, second};
}

namespace {

double scan_double(const std::string& s, size_t& pos) {
    const char* begin = s.c_str() + pos;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw ParseError("expected decimal literal in '" + s + "'");
    pos += static_cast<size_t>(end - begin);
    return v;
}

} // namespace

cdouble parse_cdouble(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("empty number literal");
    if (s == "i" || s == "+i") return {0.0, 1.0};
    if (s == "-i") return {0.0, -1.0};

    size_t pos = 0;
    double first = scan_double(s, pos);
    if (pos == s.size()) return {first, 0.0};
    if (s[pos] == 'i') {
        if (pos + 1 != s.size()) throw ParseError("trailing characters in '" + text + "'");
        return {0.0, first};
    }
    if (s.compare(pos, std::string::npos, "+i") == 0) return {first, 1.0};
    if (s.compare(pos, std::string::npos, "-i") == 0) return {first, -1.0};
    double second = scan_double(s, pos);
    if (pos >= s.size() || s[pos] != 'i' || pos + 1 != s.size())
        throw ParseError("expected imaginary part in '" + text + "'");
    return {first, second};
}

std::string format_cdouble(const cdouble& z) {
    char buf[64];
    auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    if (z.imag() == 0.0) return fmt(z.real());
    std::string im = fmt(z.imag()) + "i";
    if (z.real() == 0.0) return im;
    if (z.imag() > 0.0) return fmt(z.real()) + "+" + im;
    return fmt(z.real()) + im;
}

} // namespace pschur
