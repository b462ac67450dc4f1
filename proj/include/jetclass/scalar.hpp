#pragma once

#include <gmpxx.h>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace jetclass {

/// Exact-rational coefficient backend. Values are kept canonical (lowest
/// terms, positive denominator) by gmpxx arithmetic.
using Rational = mpq_class;

/// Error type for all precondition / input violations in the library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

template <class T> struct scalar_traits;

template <> struct scalar_traits<Rational> {
    static constexpr bool is_exact = true;
    static const char* name() { return "rational"; }
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_int(long n) { return Rational(n); }
    static double to_double(const Rational& q) { return q.get_d(); }
    static bool is_zero(const Rational& q) { return sgn(q) == 0; }
};

template <> struct scalar_traits<double> {
    static constexpr bool is_exact = false;
    static const char* name() { return "float"; }
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from_int(long n) { return static_cast<double>(n); }
    static double to_double(double x) { return x; }
    static bool is_zero(double x) { return x == 0.0; }
};

inline int sign_of(const Rational& q) { return sgn(q); }
inline int sign_of(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

inline Rational abs_of(const Rational& q) { return abs(q); }
inline double abs_of(double x) { return std::fabs(x); }

/// Parses "p/q" or "p" (arbitrary precision, base 10). Throws on anything else.
inline Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw Error("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw Error("malformed rational literal: '" + s + "'");
    if (q.get_den() == 0) throw Error("zero denominator in rational literal: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Exact square root of a nonnegative rational, when one exists.
inline bool exact_sqrt(const Rational& q, Rational& root) {
    if (sgn(q) < 0) return false;
    const mpz_class num = q.get_num(), den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    root = Rational(rn, rd);
    root.canonicalize();
    return true;
}

} // namespace jetclass
