////////////////////////////////////////////////////////////////////////////////
// scalars.hpp
////////////////////////////////////////////////////////////////////////////////
/*! @file
//  Scalar backends for the library: an exact Gaussian-rational type (complex
//  numbers with rational real/imaginary parts, built on Boost.Multiprecision)
//  and plain std::complex<double>.  All algebra/geometry code is templated on
//  the scalar; scalar_traits provides the few operations that differ.
*/
////////////////////////////////////////////////////////////////////////////////
#ifndef SPINFORM_SCALARS_HPP
#define SPINFORM_SCALARS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Core>

namespace spinform {

using rational = boost::multiprecision::cpp_rational;

//! Complex number with exact rational real and imaginary parts.
//! Forms a field; division is exact.  Gamma-matrix entries, pairing matrices,
//! twistor constants and all identity suites stay inside this field.
struct GaussianRational {
    rational re, im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(int v) : re(v), im(0) {}
    GaussianRational(long long v) : re(v), im(0) {}
    GaussianRational(rational r) : re(std::move(r)), im(0) {}
    GaussianRational(rational r, rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational unit_i() { return {rational(0), rational(1)}; }
    static GaussianRational ratio(long long n, long long d) {
        return {rational(n) / rational(d), rational(0)};
    }

    bool is_zero() const { return re == 0 && im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational &operator+=(const GaussianRational &o) { re += o.re; im += o.im; return *this; }
    GaussianRational &operator-=(const GaussianRational &o) { re -= o.re; im -= o.im; return *this; }
    GaussianRational &operator*=(const GaussianRational &o) {
        rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    GaussianRational &operator/=(const GaussianRational &o) {
        // (a+bi)/(c+di) = (a+bi)(c-di)/(c^2+d^2)
        rational n = o.re * o.re + o.im * o.im;
        rational r = (re * o.re + im * o.im) / n;
        im = (im * o.re - re * o.im) / n;
        re = std::move(r);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational &b) { a += b; return a; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational &b) { a -= b; return a; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational &b) { a *= b; return a; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational &b) { a /= b; return a; }
    friend bool operator==(const GaussianRational &a, const GaussianRational &b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational &a, const GaussianRational &b) { return !(a == b); }

    std::complex<double> to_complex() const {
        return {re.convert_to<double>(), im.convert_to<double>()};
    }
};

using complexd = std::complex<double>;

//! The handful of scalar operations that differ between backends.
template <class S> struct scalar_traits;

template <> struct scalar_traits<GaussianRational> {
    static constexpr bool exact = true;
    static GaussianRational zero() { return GaussianRational(0); }
    static GaussianRational one() { return GaussianRational(1); }
    static GaussianRational unit_i() { return GaussianRational::unit_i(); }
    static GaussianRational from_ratio(long long n, long long d) { return GaussianRational::ratio(n, d); }
    static GaussianRational conj(const GaussianRational &s) { return s.conj(); }
    static bool is_zero(const GaussianRational &s) { return s.is_zero(); }
    static double abs_approx(const GaussianRational &s) { return std::abs(s.to_complex()); }
    static std::complex<double> to_complex(const GaussianRational &s) { return s.to_complex(); }
};

template <> struct scalar_traits<complexd> {
    static constexpr bool exact = false;
    static complexd zero() { return {0.0, 0.0}; }
    static complexd one() { return {1.0, 0.0}; }
    static complexd unit_i() { return {0.0, 1.0}; }
    static complexd from_ratio(long long n, long long d) {
        return {double(n) / double(d), 0.0};
    }
    static complexd conj(const complexd &s) { return std::conj(s); }
    static bool is_zero(const complexd &s) { return s == complexd(0.0, 0.0); }
    static double abs_approx(const complexd &s) { return std::abs(s); }
    static std::complex<double> to_complex(const complexd &s) { return s; }
};

template <class S> using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S> using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

} // namespace spinform

namespace Eigen {
// Minimal traits so dense storage and plain products work over the exact field.
// (No norms/decompositions are ever invoked on exact matrices; the library uses
// its own pivoting elimination there.)
template <> struct NumTraits<spinform::GaussianRational> {
    typedef spinform::GaussianRational Real;
    typedef spinform::GaussianRational NonInteger;
    typedef spinform::GaussianRational Nested;
    typedef spinform::GaussianRational Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 30,
        MulCost = 60
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};
} // namespace Eigen

#endif // SPINFORM_SCALARS_HPP
