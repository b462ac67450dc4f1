#pragma once

// Test-only brute-force polynomial arithmetic, deliberately independent of
// the library's Poly2 code path. Used as the oracle for bracket/pushforward
// and the reduction routines.

#include "jetclass/scalar.hpp"

#include <array>
#include <map>

namespace oracle {

using jetclass::Rational;
using Term = std::array<int, 2>;
using Poly = std::map<Term, Rational>;

inline void add_to(Poly& p, Term t, const Rational& c) {
    p[t] += c;
    if (sgn(p[t]) == 0) p.erase(t);
}

inline Poly add(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [t, c] : b) add_to(r, t, c);
    return r;
}

inline Poly neg(const Poly& a) {
    Poly r;
    for (const auto& [t, c] : a) r[t] = -c;
    return r;
}

inline Poly mul(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ta, ca] : a)
        for (const auto& [tb, cb] : b) add_to(r, Term{ta[0] + tb[0], ta[1] + tb[1]}, Rational(ca * cb));
    return r;
}

inline Poly diff(const Poly& a, int var) {
    Poly r;
    for (const auto& [t, c] : a) {
        if (t[var] == 0) continue;
        Term s = t;
        s[var] -= 1;
        add_to(r, s, Rational(t[var]) * c);
    }
    return r;
}

inline Poly truncate(const Poly& a, int m) {
    Poly r;
    for (const auto& [t, c] : a)
        if (t[0] + t[1] <= m) r[t] = c;
    return r;
}

/// p(u, v) by direct expansion.
inline Poly subst(const Poly& p, const Poly& u, const Poly& v) {
    Poly r;
    for (const auto& [t, c] : p) {
        Poly acc;
        acc[Term{0, 0}] = c;
        for (int k = 0; k < t[0]; ++k) acc = mul(acc, u);
        for (int k = 0; k < t[1]; ++k) acc = mul(acc, v);
        r = add(r, acc);
    }
    return r;
}

struct Field {
    Poly fx, fy;
};

/// [v,w] = Dw·v - Dv·w, no truncation.
inline Field lie_bracket(const Field& v, const Field& w) {
    Field r;
    r.fx = add(add(mul(diff(w.fx, 0), v.fx), mul(diff(w.fx, 1), v.fy)),
               neg(add(mul(diff(v.fx, 0), w.fx), mul(diff(v.fx, 1), w.fy))));
    r.fy = add(add(mul(diff(w.fy, 0), v.fx), mul(diff(w.fy, 1), v.fy)),
               neg(add(mul(diff(v.fy, 0), w.fx), mul(diff(v.fy, 1), w.fy))));
    return r;
}

} // namespace oracle
