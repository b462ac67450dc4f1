#pragma once

#include "jetclass/scalar.hpp"

namespace jetclass {

/// Complex numbers over an arbitrary coefficient field. std::complex is
/// specified for floating point only, and the focus-value computation needs
/// complex arithmetic over exact rationals as well.
template <class T> struct Complex {
    T re{};
    T im{};

    Complex() : re(scalar_traits<T>::zero()), im(scalar_traits<T>::zero()) {}
    Complex(T r) : re(std::move(r)), im(scalar_traits<T>::zero()) {}
    Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return scalar_traits<T>::is_zero(re) && scalar_traits<T>::is_zero(im); }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return Complex(T(a.re + b.re), T(a.im + b.im));
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return Complex(T(a.re - b.re), T(a.im - b.im));
    }
    friend Complex operator-(const Complex& a) { return Complex(T(-a.re), T(-a.im)); }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return Complex(T(a.re * b.re - a.im * b.im), T(a.re * b.im + a.im * b.re));
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        T d = T(b.re * b.re + b.im * b.im);
        if (scalar_traits<T>::is_zero(d)) throw Error("complex division by zero");
        return Complex(T((a.re * b.re + a.im * b.im) / d), T((a.im * b.re - a.re * b.im) / d));
    }
    Complex& operator+=(const Complex& b) { *this = *this + b; return *this; }
    Complex& operator-=(const Complex& b) { *this = *this - b; return *this; }
    Complex& operator*=(const Complex& b) { *this = *this * b; return *this; }

    friend bool operator==(const Complex& a, const Complex& b) {
        return scalar_traits<T>::is_zero(T(a.re - b.re)) && scalar_traits<T>::is_zero(T(a.im - b.im));
    }

    friend Complex conj(const Complex& a) { return Complex(a.re, T(-a.im)); }
};

template <class T> struct scalar_traits<Complex<T>> {
    static constexpr bool is_exact = scalar_traits<T>::is_exact;
    static const char* name() { return "complex"; }
    static Complex<T> zero() { return Complex<T>(); }
    static Complex<T> one() { return Complex<T>(scalar_traits<T>::one()); }
    static Complex<T> from_int(long n) { return Complex<T>(scalar_traits<T>::from_int(n)); }
    static bool is_zero(const Complex<T>& z) { return z.is_zero(); }
};

} // namespace jetclass
