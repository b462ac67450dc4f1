#pragma once

#include "jetclass/complex_scalar.hpp"
#include "jetclass/vector_field.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace jetclass {

// ---------------------------------------------------------------------------
// Tolerances and numeric zero decisions
// ---------------------------------------------------------------------------

/// Numeric decisions in the float backend use a dead zone: values below
/// tol_zero (times a context scale) count as zero, values above tol_nonzero
/// count as nonzero, anything in between is reported Unresolved rather than
/// guessed. The rational backend decides exactly and ignores these.
struct ToleranceSet {
    double tol_linear = 1e-7;
    double tol_zero = 1e-9;
    double tol_nonzero = 1e-6;

    void validate() const {
        if (tol_linear <= 0 || tol_zero <= 0 || tol_nonzero <= 0)
            throw Error("tolerances must be positive");
        if (tol_zero >= tol_nonzero) throw Error("tol_zero must be smaller than tol_nonzero");
    }
};

enum class ZeroDecision { Zero, NonZero, DeadZone };

inline ZeroDecision decide_zero(double value, double scale, const ToleranceSet& tol) {
    double a = std::fabs(value);
    if (a <= tol.tol_zero * scale) return ZeroDecision::Zero;
    if (a >= tol.tol_nonzero * scale) return ZeroDecision::NonZero;
    return ZeroDecision::DeadZone;
}

// ---------------------------------------------------------------------------
// Linear-part partition
// ---------------------------------------------------------------------------

enum class LinearClass { Hyperbolic, AndronovHopf, SaddleNode, BogdanovTakens, Zero };

inline const char* to_string(LinearClass c) {
    switch (c) {
        case LinearClass::Hyperbolic: return "Hstar";
        case LinearClass::AndronovHopf: return "AHstar";
        case LinearClass::SaddleNode: return "SNstar";
        case LinearClass::BogdanovTakens: return "BTstar";
        case LinearClass::Zero: return "Zero";
    }
    return "?";
}

inline LinearClass classify_linear(const std::array<Rational, 4>& A, const ToleranceSet& = {}) {
    Rational det = A[0] * A[3] - A[1] * A[2];
    Rational tr = A[0] + A[3];
    bool zero = sgn(A[0]) == 0 && sgn(A[1]) == 0 && sgn(A[2]) == 0 && sgn(A[3]) == 0;
    if (zero) return LinearClass::Zero;
    if (sgn(det) == 0) return sgn(tr) == 0 ? LinearClass::BogdanovTakens : LinearClass::SaddleNode;
    if (sgn(tr) == 0 && sgn(det) > 0) return LinearClass::AndronovHopf;
    return LinearClass::Hyperbolic;
}

inline LinearClass classify_linear(const std::array<double, 4>& A, const ToleranceSet& tol = {}) {
    double s = std::max({std::fabs(A[0]), std::fabs(A[1]), std::fabs(A[2]), std::fabs(A[3])});
    if (s == 0.0) return LinearClass::Zero;
    double det = (A[0] * A[3] - A[1] * A[2]) / (s * s);
    double tr = (A[0] + A[3]) / s;
    bool det0 = std::fabs(det) < tol.tol_linear;
    bool tr0 = std::fabs(tr) < tol.tol_linear;
    if (det0 && tr0) return LinearClass::BogdanovTakens;
    if (det0) return LinearClass::SaddleNode;
    if (tr0 && det > 0) return LinearClass::AndronovHopf;
    return LinearClass::Hyperbolic;
}

// ---------------------------------------------------------------------------
// Rotation normalization (linear preparation for the focus-value step)
// ---------------------------------------------------------------------------

/// Raised on the exact path when sqrt(det) is irrational; callers fall back
/// to the float path instead of working in a quadratic extension.
class IrrationalFrequency : public Error {
  public:
    IrrationalFrequency() : Error("rotation frequency is irrational in the rational backend") {}
};

template <class T> struct RotationPrep {
    VectorFieldJet<T> field; // linear part exactly (-w y, w x)
    DiffeoJet<T> change;     // the linear jet h with field = h_* v
    T omega{};
};

namespace detail {

inline Rational rotation_frequency(const Rational& det) {
    Rational w;
    if (!exact_sqrt(det, w)) throw IrrationalFrequency();
    return w;
}
inline double rotation_frequency(double det) { return std::sqrt(det); }

template <class T> void set_coeff(Poly2<T>& p, int i, int j, const T& value) {
    p.add_term(i, j, T(value - p.coeff(i, j)));
}

/// Float paths project the linear part onto the decided normal shape before
/// the nonlinear reduction: the tolerance decision already treated the
/// residue as zero, and the reductions test the linear coefficients exactly.
inline void force_linear_part(VectorFieldJet<double>& v, const std::array<double, 4>& M) {
    set_coeff(v.dx, 1, 0, M[0]);
    set_coeff(v.dx, 0, 1, M[1]);
    set_coeff(v.dy, 1, 0, M[2]);
    set_coeff(v.dy, 0, 1, M[3]);
}

} // namespace detail

/// Brings an AH-star linear part to (-w y, w x) with w = sqrt(det) > 0.
/// Uses u and A u / w as the new basis: with tr = 0, Cayley-Hamilton gives
/// A^2 = -det I, so the pair is a rotation frame for any u that is not an
/// eigenvector, and real u are never eigenvectors here.
template <class T> RotationPrep<T> rotation_normalize(const VectorFieldJet<T>& v) {
    auto A = v.linear_part();
    T det = T(A[0] * A[3] - A[1] * A[2]);
    if (sign_of(T(A[0] + A[3])) != 0 && scalar_traits<T>::is_exact)
        throw Error("rotation_normalize: trace must vanish");
    T w = detail::rotation_frequency(det);
    if (scalar_traits<T>::is_zero(w)) throw Error("rotation_normalize: zero frequency");

    // pick e1 or e2 as u, whichever makes [u | Au/w] better conditioned
    bool use_e1 = true;
    if constexpr (!scalar_traits<T>::is_exact) {
        use_e1 = std::fabs(scalar_traits<T>::to_double(A[2])) >=
                 std::fabs(scalar_traits<T>::to_double(A[1]));
    } else {
        use_e1 = sign_of(A[2]) != 0;
    }
    // P = [u | Au/w], new coords xi = P^{-1} x
    std::array<T, 4> P;
    if (use_e1) {
        P = {scalar_traits<T>::one(), T(A[0] / w), scalar_traits<T>::zero(), T(A[2] / w)};
    } else {
        P = {scalar_traits<T>::zero(), T(A[1] / w), scalar_traits<T>::one(), T(A[3] / w)};
    }
    T dP = T(P[0] * P[3] - P[1] * P[2]);
    if (scalar_traits<T>::is_zero(dP)) throw Error("rotation_normalize: degenerate frame");
    std::array<T, 4> Pinv = {T(P[3] / dP), T(-P[1] / dP), T(-P[2] / dP), T(P[0] / dP)};
    DiffeoJet<T> h = DiffeoJet<T>::linear(v.order, Pinv);
    RotationPrep<T> prep{pushforward(h, v, v.order), h, w};
    return prep;
}

// ---------------------------------------------------------------------------
// Focus values (resonant normal form of a rotational jet)
// ---------------------------------------------------------------------------

template <class T> struct FocusValues {
    T omega{};
    std::vector<Complex<T>> a; // a_1 .. a_k_max of z(iw + sum a_k r^{2k}) d/dz
};

namespace detail {

/// Mirror under complex conjugation combined with swapping z and conj z:
/// the second component of a complexified real field is the mirror of the
/// first, and stays so under every symmetric change of variables.
template <class T> Poly2<Complex<T>> conj_swap(const Poly2<Complex<T>>& p) {
    Poly2<Complex<T>> r(p.order());
    for (const auto& [mono, c] : p.terms()) r.add_term(mono.j, mono.i, conj(c));
    return r;
}

/// Complexifies a real planar field with rotational linear part: returns the
/// single component F with dz/dt = F(z, conj z), F = i w z + higher.
template <class T> Poly2<Complex<T>> complexify(const VectorFieldJet<T>& v, int m) {
    using C = Complex<T>;
    T half = T(scalar_traits<T>::one() / scalar_traits<T>::from_int(2));
    Poly2<C> xz(m), yz(m);
    xz.add_term(1, 0, C(half));
    xz.add_term(0, 1, C(half));
    yz.add_term(1, 0, C(scalar_traits<T>::zero(), T(-half)));
    yz.add_term(0, 1, C(scalar_traits<T>::zero(), half));
    auto embed = [](const T& c) { return C(c); };
    Poly2<C> P = v.dx.truncated(m).map_coeffs(embed);
    Poly2<C> Q = v.dy.truncated(m).map_coeffs(embed);
    Poly2<C> F = P.compose(xz, yz, m);
    Poly2<C> iQ = Q.compose(xz, yz, m).map_coeffs([](const C& c) { return C(T(-c.im), c.re); });
    return F + iQ;
}

} // namespace detail

/// Computes a_1..a_k_max of the resonant normal form by removing all
/// non-resonant monomials degree by degree. Requires the linear part to be
/// exactly (-w y, w x); callers normalize first.
template <class T> FocusValues<T> focus_values(const VectorFieldJet<T>& v, int k_max) {
    using C = Complex<T>;
    if (k_max < 1) throw Error("focus_values: k_max must be >= 1");
    int m = 2 * k_max + 1;
    if (v.order < m) throw Error("focus_values: jet order too small for requested depth");
    auto A = v.linear_part();
    if (!scalar_traits<T>::is_zero(A[0]) || !scalar_traits<T>::is_zero(A[3]) ||
        !scalar_traits<T>::is_zero(T(A[1] + A[2])))
        throw Error("focus_values: linear part must be rotation-normalized first");
    T w = A[2];
    if (sign_of(w) <= 0) throw Error("focus_values: frequency must be positive");

    Poly2<C> F = detail::complexify(v.truncated(m), m);
    VectorFieldJet<C> W(m, F, detail::conj_swap(F));

    for (int d = 2; d <= m; ++d) {
        Poly2<C> h(m);
        const Poly2<C> part = W.dx.homogeneous_part(d);
        for (const auto& [mono, c] : part.terms()) {
            int res = mono.i - mono.j - 1;
            if (res == 0) continue; // resonant, stays
            C denom(scalar_traits<T>::zero(), T(w * scalar_traits<T>::from_int(res)));
            h.add_term(mono.i, mono.j, c / denom);
        }
        if (h.empty()) continue;
        Poly2<C> p1 = Poly2<C>::monomial(m, 1, 0, scalar_traits<C>::one()) + h;
        Poly2<C> p2 = Poly2<C>::monomial(m, 0, 1, scalar_traits<C>::one()) + detail::conj_swap(h);
        DiffeoJet<C> phi(m, p1, p2);
        W = pushforward(invert_jet(phi), W, m);
        W.dy = detail::conj_swap(W.dx); // keep the mirror symmetry exact
    }

    FocusValues<T> out;
    out.omega = w;
    for (int k = 1; k <= k_max; ++k) out.a.push_back(W.dx.coeff(k + 1, k));
    return out;
}

// ---------------------------------------------------------------------------
// Saddle-node reduction (center manifold restriction)
// ---------------------------------------------------------------------------

template <class T> struct SNReduction {
    T lambda{};
    std::vector<T> cm;       // h_2 .. h_m of the invariant graph y = h(x)
    std::vector<T> a;        // a_1 .. a_m of the reduced equation (a_1 = 0)
    DiffeoJet<T> change;     // linear diagonalizing jet used
    VectorFieldJet<T> prepared; // field in eigencoordinates
};

/// Diagonalizes to eigendirections (0, lambda), solves the invariance
/// equation h'(x)·f(x,h(x)) = g(x,h(x)) order by order, and returns the
/// reduced equation on the center manifold.
template <class T> SNReduction<T> saddle_node_reduce(const VectorFieldJet<T>& v, int m) {
    if (m < 2) throw Error("saddle_node_reduce: order must be >= 2");
    if (v.order < m) throw Error("saddle_node_reduce: jet order below requested order");
    auto A = v.linear_part();
    T det = T(A[0] * A[3] - A[1] * A[2]);
    T lambda = T(A[0] + A[3]);
    if constexpr (scalar_traits<T>::is_exact) {
        if (sgn(det) != 0 || sgn(lambda) == 0)
            throw Error("saddle_node_reduce: linear part is not saddle-node");
    } else {
        if (scalar_traits<T>::is_zero(lambda))
            throw Error("saddle_node_reduce: zero trace in float saddle-node reduction");
    }

    // kernel direction from the larger row of A, lambda-eigendirection from A - lambda I
    auto row_null = [](const T& r1, const T& r2, const T& s1, const T& s2) {
        // null vector of a rank-one matrix with rows (r1 r2), (s1 s2)
        double n1 = std::fabs(scalar_traits<T>::to_double(r1)) + std::fabs(scalar_traits<T>::to_double(r2));
        double n2 = std::fabs(scalar_traits<T>::to_double(s1)) + std::fabs(scalar_traits<T>::to_double(s2));
        if (n1 >= n2) return std::array<T, 2>{T(-r2), r1};
        return std::array<T, 2>{T(-s2), s1};
    };
    std::array<T, 2> u0 = row_null(A[0], A[1], A[2], A[3]);
    std::array<T, 2> u1 = row_null(T(A[0] - lambda), A[1], A[2], T(A[3] - lambda));
    std::array<T, 4> P = {u0[0], u1[0], u0[1], u1[1]};
    T dP = T(P[0] * P[3] - P[1] * P[2]);
    if (scalar_traits<T>::is_zero(dP)) throw Error("saddle_node_reduce: failed to diagonalize");
    std::array<T, 4> Pinv = {T(P[3] / dP), T(-P[1] / dP), T(-P[2] / dP), T(P[0] / dP)};
    DiffeoJet<T> h = DiffeoJet<T>::linear(m, Pinv);
    VectorFieldJet<T> prep = pushforward(h, v.truncated(m), m);
    if constexpr (!scalar_traits<T>::is_exact)
        detail::force_linear_part(prep, {0.0, 0.0, 0.0, scalar_traits<T>::to_double(lambda)});

    Poly2<T> f = prep.dx; // no linear part
    Poly2<T> g = prep.dy; // lambda y + higher

    Poly2<T> xpoly = Poly2<T>::monomial(m, 1, 0, scalar_traits<T>::one());
    std::vector<T> hc(static_cast<size_t>(m + 1), scalar_traits<T>::zero()); // hc[k] = h_k
    for (int k = 2; k <= m; ++k) {
        Poly2<T> hpoly(m);
        for (int j = 2; j < k; ++j) hpoly.add_term(j, 0, hc[static_cast<size_t>(j)]);
        Poly2<T> hprime(m);
        for (int j = 2; j < k; ++j)
            hprime.add_term(j - 1, 0, T(scalar_traits<T>::from_int(j) * hc[static_cast<size_t>(j)]));
        Poly2<T> resid = hprime * f.compose(xpoly, hpoly, m) - g.compose(xpoly, hpoly, m);
        hc[static_cast<size_t>(k)] = T(resid.coeff(k, 0) / lambda);
    }

    SNReduction<T> out;
    out.lambda = lambda;
    out.change = h;
    out.prepared = prep;
    Poly2<T> hpoly(m);
    for (int j = 2; j <= m; ++j) hpoly.add_term(j, 0, hc[static_cast<size_t>(j)]);
    Poly2<T> reduced = f.compose(xpoly, hpoly, m);
    for (int j = 2; j <= m; ++j) out.cm.push_back(hc[static_cast<size_t>(j)]);
    for (int j = 1; j <= m; ++j) out.a.push_back(reduced.coeff(j, 0));
    return out;
}

// ---------------------------------------------------------------------------
// Bogdanov-Takens 2-jet reduction
// ---------------------------------------------------------------------------

template <class T> struct BTReduction {
    T b11{}, b12{}, b22{};
    VectorFieldJet<T> reduced; // (y, b11 x^2 + b12 x y + b22 y^2) through order 2
    DiffeoJet<T> change;       // combined change of coordinates used
};

/// Brings the linear part to y d/dx, then substitutes the first component as
/// the new y so dx/dt = y holds exactly through order 2.
template <class T> BTReduction<T> bogdanov_takens_reduce(const VectorFieldJet<T>& v) {
    if (v.order < 2) throw Error("bogdanov_takens_reduce: jet order must be >= 2");
    auto A = v.linear_part();
    bool zero = scalar_traits<T>::is_zero(A[0]) && scalar_traits<T>::is_zero(A[1]) &&
                scalar_traits<T>::is_zero(A[2]) && scalar_traits<T>::is_zero(A[3]);
    if (zero) throw Error("bogdanov_takens_reduce: zero linear part");

    // u with A u != 0; basis (A u, u) carries A to [[0,1],[0,0]]
    double c1 = std::fabs(scalar_traits<T>::to_double(A[0])) + std::fabs(scalar_traits<T>::to_double(A[2]));
    double c2 = std::fabs(scalar_traits<T>::to_double(A[1])) + std::fabs(scalar_traits<T>::to_double(A[3]));
    std::array<T, 4> P;
    if (c1 >= c2) {
        P = {A[0], scalar_traits<T>::one(), A[2], scalar_traits<T>::zero()};
    } else {
        P = {A[1], scalar_traits<T>::zero(), A[3], scalar_traits<T>::one()};
    }
    T dP = T(P[0] * P[3] - P[1] * P[2]);
    if (scalar_traits<T>::is_zero(dP))
        throw Error("bogdanov_takens_reduce: linear part is not nilpotent of rank one");
    std::array<T, 4> Pinv = {T(P[3] / dP), T(-P[1] / dP), T(-P[2] / dP), T(P[0] / dP)};
    DiffeoJet<T> lin = DiffeoJet<T>::linear(2, Pinv);
    VectorFieldJet<T> w = pushforward(lin, v.truncated(2), 2);
    if constexpr (!scalar_traits<T>::is_exact)
        detail::force_linear_part(w, {0.0, 1.0, 0.0, 0.0});

    // shear: new y = first component of the field
    Poly2<T> q1 = w.dx - Poly2<T>::monomial(2, 0, 1, scalar_traits<T>::one());
    Poly2<T> s1 = Poly2<T>::monomial(2, 1, 0, scalar_traits<T>::one());
    Poly2<T> s2 = Poly2<T>::monomial(2, 0, 1, scalar_traits<T>::one()) + q1;
    DiffeoJet<T> shear(2, s1, s2);
    VectorFieldJet<T> red = pushforward(shear, w, 2);

    BTReduction<T> out;
    out.b11 = red.dy.coeff(2, 0);
    out.b12 = red.dy.coeff(1, 1);
    out.b22 = red.dy.coeff(0, 2);
    out.reduced = red;
    out.change = compose(shear, lin);
    return out;
}

// ---------------------------------------------------------------------------
// Full germ classification
// ---------------------------------------------------------------------------

enum class Kind { H, AH, SN, BT0, BT1, ZL, Unresolved };

inline const char* to_string(Kind k) {
    switch (k) {
        case Kind::H: return "H";
        case Kind::AH: return "AH";
        case Kind::SN: return "SN";
        case Kind::BT0: return "BT0";
        case Kind::BT1: return "BT1";
        case Kind::ZL: return "ZL";
        case Kind::Unresolved: return "Unresolved";
    }
    return "?";
}

/// Classification outcome plus the diagnostic payload that justified it.
/// Float diagnostics are always filled; exact ones when the exact path ran.
struct GermReport {
    Kind kind = Kind::Unresolved;
    int k = -1; // depth for AH(k) / SN(k)
    LinearClass linear = LinearClass::Zero;
    int order = 0;
    std::string backend;
    std::string unresolved_reason;

    double det = 0, tr = 0;
    double omega = 0;
    std::vector<double> focus_re, focus_im;
    double sn_lambda = 0;
    std::vector<double> sn_a, sn_cm;
    std::array<double, 3> bt{0, 0, 0};

    bool exact_payload = false;
    Rational omega_q{0};
    std::vector<Rational> focus_re_q, focus_im_q;
    Rational sn_lambda_q{0};
    std::vector<Rational> sn_a_q, sn_cm_q;
    std::array<Rational, 3> bt_q{Rational(0), Rational(0), Rational(0)};
};

GermReport classify_germ(const VectorFieldJet<Rational>& v, const ToleranceSet& tol = {});
GermReport classify_germ(const VectorFieldJet<double>& v, const ToleranceSet& tol = {});

} // namespace jetclass
