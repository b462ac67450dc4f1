#pragma once

#include "jetclass/poly.hpp"

#include <array>
#include <vector>

namespace jetclass {

/// An m-jet of a planar vector field at the origin: two truncated
/// polynomials (the dx and dy components).
template <class T> struct VectorFieldJet {
    int order = 1;
    Poly2<T> dx;
    Poly2<T> dy;

    VectorFieldJet() : order(1), dx(1), dy(1) {}
    explicit VectorFieldJet(int m) : order(m), dx(m), dy(m) {
        if (m < 1) throw Error("jet order must be >= 1");
    }
    VectorFieldJet(int m, Poly2<T> fx, Poly2<T> fy) : order(m), dx(std::move(fx)), dy(std::move(fy)) {
        if (m < 1) throw Error("jet order must be >= 1");
        dx = dx.truncated(m);
        dy = dy.truncated(m);
    }

    static VectorFieldJet zero(int m) { return VectorFieldJet(m); }

    bool is_zero() const { return dx.empty() && dy.empty(); }
    bool vanishes_at_origin() const {
        return scalar_traits<T>::is_zero(dx.coeff(0, 0)) && scalar_traits<T>::is_zero(dy.coeff(0, 0));
    }

    /// 2x2 matrix of degree-1 coefficients, row-major [a11 a12 a21 a22].
    std::array<T, 4> linear_part() const {
        return {dx.coeff(1, 0), dx.coeff(0, 1), dy.coeff(1, 0), dy.coeff(0, 1)};
    }

    VectorFieldJet truncated(int m) const { return VectorFieldJet(m, dx.truncated(m), dy.truncated(m)); }

    friend VectorFieldJet operator+(const VectorFieldJet& a, const VectorFieldJet& b) {
        int m = std::min(a.order, b.order);
        return VectorFieldJet(m, a.dx.truncated(m) + b.dx.truncated(m), a.dy.truncated(m) + b.dy.truncated(m));
    }
    friend VectorFieldJet operator-(const VectorFieldJet& a, const VectorFieldJet& b) {
        int m = std::min(a.order, b.order);
        return VectorFieldJet(m, a.dx.truncated(m) - b.dx.truncated(m), a.dy.truncated(m) - b.dy.truncated(m));
    }
    friend VectorFieldJet operator*(const T& s, const VectorFieldJet& a) {
        return VectorFieldJet(a.order, s * a.dx, s * a.dy);
    }
    friend bool operator==(const VectorFieldJet& a, const VectorFieldJet& b) {
        return a.order == b.order && a.dx == b.dx && a.dy == b.dy;
    }
};

/// Lie bracket [v,w] = Dw·v - Dv·w of the canonical polynomial
/// representatives, truncated to order m. For jets vanishing at the origin
/// the result is independent of the representatives through order m.
template <class T>
VectorFieldJet<T> bracket(const VectorFieldJet<T>& v, const VectorFieldJet<T>& w, int m) {
    if (m < 1) throw Error("bracket: order must be >= 1");
    if (m > std::min(v.order, w.order))
        throw Error("bracket: requested order exceeds operand orders");
    Poly2<T> rx = w.dx.deriv_x().truncated(m) * v.dx.truncated(m) + w.dx.deriv_y().truncated(m) * v.dy.truncated(m)
                - (v.dx.deriv_x().truncated(m) * w.dx.truncated(m) + v.dx.deriv_y().truncated(m) * w.dy.truncated(m));
    Poly2<T> ry = w.dy.deriv_x().truncated(m) * v.dx.truncated(m) + w.dy.deriv_y().truncated(m) * v.dy.truncated(m)
                - (v.dy.deriv_x().truncated(m) * w.dx.truncated(m) + v.dy.deriv_y().truncated(m) * w.dy.truncated(m));
    return VectorFieldJet<T>(m, rx.truncated(m), ry.truncated(m));
}

/// An m-jet of a diffeomorphism fixing the origin: two component
/// polynomials with zero constant term and invertible linear part.
template <class T> struct DiffeoJet {
    int order = 1;
    Poly2<T> c1;
    Poly2<T> c2;

    DiffeoJet() : order(1), c1(1), c2(1) {}
    DiffeoJet(int m, Poly2<T> f1, Poly2<T> f2) : order(m), c1(std::move(f1)), c2(std::move(f2)) {
        if (m < 1) throw Error("diffeo jet order must be >= 1");
        c1 = c1.truncated(m);
        c2 = c2.truncated(m);
        validate();
    }

    static DiffeoJet identity(int m) {
        DiffeoJet h;
        h.order = m;
        h.c1 = Poly2<T>::monomial(m, 1, 0, scalar_traits<T>::one());
        h.c2 = Poly2<T>::monomial(m, 0, 1, scalar_traits<T>::one());
        return h;
    }

    /// Linear jet x -> M x, row-major M = [a b; c d].
    static DiffeoJet linear(int m, const std::array<T, 4>& M) {
        Poly2<T> f1(m), f2(m);
        f1.add_term(1, 0, M[0]);
        f1.add_term(0, 1, M[1]);
        f2.add_term(1, 0, M[2]);
        f2.add_term(0, 1, M[3]);
        return DiffeoJet(m, f1, f2);
    }

    std::array<T, 4> linear_part() const {
        return {c1.coeff(1, 0), c1.coeff(0, 1), c2.coeff(1, 0), c2.coeff(0, 1)};
    }

    T linear_det() const {
        auto M = linear_part();
        return T(M[0] * M[3] - M[1] * M[2]);
    }

    void validate() const {
        if (!scalar_traits<T>::is_zero(c1.coeff(0, 0)) || !scalar_traits<T>::is_zero(c2.coeff(0, 0)))
            throw Error("diffeo jet must fix the origin");
        if (scalar_traits<T>::is_zero(linear_det()))
            throw Error("diffeo jet has singular linear part");
    }

    friend bool operator==(const DiffeoJet& a, const DiffeoJet& b) {
        return a.order == b.order && a.c1 == b.c1 && a.c2 == b.c2;
    }
};

/// Jet of g∘h at the common order.
template <class T> DiffeoJet<T> compose(const DiffeoJet<T>& g, const DiffeoJet<T>& h) {
    if (g.order != h.order) throw Error("compose: jets must have equal orders");
    int m = g.order;
    return DiffeoJet<T>(m, g.c1.compose(h.c1, h.c2, m), g.c2.compose(h.c1, h.c2, m));
}

/// Compositional inverse jet: compose(h, invert_jet(h)) is the identity
/// through order h.order. Fixed-point iteration gains one order per pass.
template <class T> DiffeoJet<T> invert_jet(const DiffeoJet<T>& h) {
    int m = h.order;
    auto M = h.linear_part();
    T det = h.linear_det();
    if (scalar_traits<T>::is_zero(det)) throw Error("invert_jet: singular linear part");
    std::array<T, 4> Minv = {T(M[3] / det), T(-M[1] / det), T(-M[2] / det), T(M[0] / det)};
    DiffeoJet<T> linv = DiffeoJet<T>::linear(m, Minv);
    if (m == 1) return linv;

    // higher part H of h: h = L + H
    Poly2<T> H1 = h.c1, H2 = h.c2;
    {
        Poly2<T> L1(m), L2(m);
        L1.add_term(1, 0, M[0]);
        L1.add_term(0, 1, M[1]);
        L2.add_term(1, 0, M[2]);
        L2.add_term(0, 1, M[3]);
        H1 = h.c1 - L1;
        H2 = h.c2 - L2;
    }

    Poly2<T> p1 = linv.c1, p2 = linv.c2; // current inverse candidate
    for (int pass = 2; pass <= m; ++pass) {
        // phi <- L^{-1} (id - H(phi))
        Poly2<T> hp1 = H1.compose(p1, p2, m);
        Poly2<T> hp2 = H2.compose(p1, p2, m);
        Poly2<T> q1 = Poly2<T>::monomial(m, 1, 0, scalar_traits<T>::one()) - hp1;
        Poly2<T> q2 = Poly2<T>::monomial(m, 0, 1, scalar_traits<T>::one()) - hp2;
        p1 = Minv[0] * q1 + Minv[1] * q2;
        p2 = Minv[2] * q1 + Minv[3] * q2;
    }
    return DiffeoJet<T>(m, p1, p2);
}

/// Pushforward h_* v = (Dh·v)∘h^{-1}, truncated to order m.
template <class T>
VectorFieldJet<T> pushforward(const DiffeoJet<T>& h, const VectorFieldJet<T>& v, int m) {
    if (h.order < m || v.order < m) throw Error("pushforward: operand orders below requested order");
    DiffeoJet<T> hw = h.order == m ? h : DiffeoJet<T>(m, h.c1.truncated(m), h.c2.truncated(m));
    DiffeoJet<T> hinv = invert_jet(hw);
    Poly2<T> w1 = hw.c1.deriv_x().truncated(m) * v.dx.truncated(m) + hw.c1.deriv_y().truncated(m) * v.dy.truncated(m);
    Poly2<T> w2 = hw.c2.deriv_x().truncated(m) * v.dx.truncated(m) + hw.c2.deriv_y().truncated(m) * v.dy.truncated(m);
    return VectorFieldJet<T>(m, w1.compose(hinv.c1, hinv.c2, m), w2.compose(hinv.c1, hinv.c2, m));
}

/// Canonical enumeration of the monomial vector fields x^i y^j ∂_c spanning
/// J^m, ordered by (component, total degree, exponent i). The tail past the
/// two constant fields spans the vanishing-at-origin subspace, i.e. the Lie
/// algebra of D^m.
struct JetBasis {
    int order;

    explicit JetBasis(int m) : order(m) {
        if (m < 1) throw Error("jet basis order must be >= 1");
    }

    struct Element {
        int component; // 0 = dx, 1 = dy
        int i;
        int j;
    };

    int per_component() const { return (order + 1) * (order + 2) / 2; }
    int size() const { return (order + 1) * (order + 2); }
    int vanishing_size() const { return size() - 2; }

    Element element(int idx) const {
        int half = per_component();
        int component = idx / half;
        int r = idx % half;
        int d = 0;
        while ((d + 1) * (d + 2) / 2 <= r) ++d;
        int i = r - d * (d + 1) / 2;
        return Element{component, i, d - i};
    }

    int index_of(int component, int i, int j) const {
        int d = i + j;
        return component * per_component() + d * (d + 1) / 2 + i;
    }

    /// Indices of the basis fields vanishing at the origin (degree >= 1).
    std::vector<int> vanishing_indices() const {
        std::vector<int> v;
        v.reserve(static_cast<size_t>(vanishing_size()));
        for (int idx = 0; idx < size(); ++idx) {
            Element e = element(idx);
            if (e.i + e.j >= 1) v.push_back(idx);
        }
        return v;
    }

    template <class T> VectorFieldJet<T> field(int idx) const {
        Element e = element(idx);
        VectorFieldJet<T> v(order);
        if (e.component == 0)
            v.dx.add_term(e.i, e.j, scalar_traits<T>::one());
        else
            v.dy.add_term(e.i, e.j, scalar_traits<T>::one());
        return v;
    }

    template <class T> std::vector<T> coords(const VectorFieldJet<T>& v) const {
        std::vector<T> c(static_cast<size_t>(size()), scalar_traits<T>::zero());
        for (const auto& [mono, val] : v.dx.terms()) {
            if (mono.deg() <= order) c[static_cast<size_t>(index_of(0, mono.i, mono.j))] = val;
        }
        for (const auto& [mono, val] : v.dy.terms()) {
            if (mono.deg() <= order) c[static_cast<size_t>(index_of(1, mono.i, mono.j))] = val;
        }
        return c;
    }

    template <class T> VectorFieldJet<T> from_coords(const std::vector<T>& c) const {
        if (c.size() != static_cast<size_t>(size())) throw Error("coordinate vector has wrong length");
        VectorFieldJet<T> v(order);
        for (int idx = 0; idx < size(); ++idx) {
            Element e = element(idx);
            if (e.component == 0)
                v.dx.add_term(e.i, e.j, c[static_cast<size_t>(idx)]);
            else
                v.dy.add_term(e.i, e.j, c[static_cast<size_t>(idx)]);
        }
        return v;
    }
};

template <class T> VectorFieldJet<double> to_double_field(const VectorFieldJet<T>& v) {
    return VectorFieldJet<double>(v.order, to_double_poly(v.dx), to_double_poly(v.dy));
}

} // namespace jetclass
