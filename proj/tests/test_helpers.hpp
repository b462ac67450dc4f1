#pragma once

#include "jetclass/prng.hpp"
#include "jetclass/vector_field.hpp"

#include "oracle_poly.hpp"

namespace testutil {

using namespace jetclass;

inline VectorFieldJet<Rational> field_from(int m,
                                           std::initializer_list<std::tuple<int, int, int, long, long>> terms) {
    // tuples: (component, i, j, num, den)
    VectorFieldJet<Rational> v(m);
    for (const auto& [c, i, j, p, q] : terms) {
        Rational r(p, q);
        r.canonicalize();
        if (c == 0)
            v.dx.add_term(i, j, r);
        else
            v.dy.add_term(i, j, r);
    }
    return v;
}

inline VectorFieldJet<Rational> random_field(Prng& rng, int m, bool vanishing, long num_max = 2,
                                             long den_max = 3, int fill_percent = 60) {
    VectorFieldJet<Rational> v(m);
    for (int c = 0; c < 2; ++c) {
        for (int d = vanishing ? 1 : 0; d <= m; ++d) {
            for (int i = 0; i <= d; ++i) {
                if (rng.next_int(0, 99) >= fill_percent) continue;
                Rational q = rng.next_rational(num_max, den_max);
                if (c == 0)
                    v.dx.add_term(i, d - i, q);
                else
                    v.dy.add_term(i, d - i, q);
            }
        }
    }
    return v;
}

inline DiffeoJet<Rational> random_diffeo(Prng& rng, int m, long num_max = 2, long den_max = 3) {
    for (;;) {
        Poly2<Rational> c1(m), c2(m);
        for (int d = 1; d <= m; ++d) {
            for (int i = 0; i <= d; ++i) {
                c1.add_term(i, d - i, rng.next_rational(num_max, den_max));
                c2.add_term(i, d - i, rng.next_rational(num_max, den_max));
            }
        }
        Rational det = c1.coeff(1, 0) * c2.coeff(0, 1) - c1.coeff(0, 1) * c2.coeff(1, 0);
        if (sgn(det) == 0) continue;
        return DiffeoJet<Rational>(m, c1, c2);
    }
}

inline oracle::Poly to_oracle(const Poly2<Rational>& p) {
    oracle::Poly r;
    for (const auto& [mono, c] : p.terms()) r[oracle::Term{mono.i, mono.j}] = c;
    return r;
}

inline oracle::Field to_oracle(const VectorFieldJet<Rational>& v) {
    return oracle::Field{to_oracle(v.dx), to_oracle(v.dy)};
}

inline bool matches_oracle(const VectorFieldJet<Rational>& got, const oracle::Field& expect, int m) {
    oracle::Poly ex = oracle::truncate(expect.fx, m);
    oracle::Poly ey = oracle::truncate(expect.fy, m);
    return to_oracle(got.dx) == ex && to_oracle(got.dy) == ey;
}

} // namespace testutil
