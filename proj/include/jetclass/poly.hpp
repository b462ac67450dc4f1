#pragma once

#include "jetclass/scalar.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

namespace jetclass {

/// Monomial exponent pair x^i y^j, ordered by (total degree, i). This is the
/// canonical term order used everywhere, including the jet basis enumeration.
struct Mono {
    int i = 0;
    int j = 0;
    int deg() const { return i + j; }
    friend bool operator<(const Mono& a, const Mono& b) {
        if (a.deg() != b.deg()) return a.deg() < b.deg();
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
    friend bool operator==(const Mono& a, const Mono& b) { return a.i == b.i && a.j == b.j; }
};

/// Sparse bivariate polynomial truncated at a fixed total degree. Stored
/// coefficients are never zero, so equal jets have equal term maps.
template <class T> class Poly2 {
  public:
    using Terms = std::map<Mono, T>;

    Poly2() = default;
    explicit Poly2(int order) : order_(order) {
        if (order < 0) throw Error("polynomial truncation order must be >= 0");
    }

    int order() const { return order_; }
    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    static Poly2 constant(int order, const T& c) {
        Poly2 p(order);
        p.add_term(0, 0, c);
        return p;
    }
    static Poly2 monomial(int order, int i, int j, const T& c) {
        Poly2 p(order);
        p.add_term(i, j, c);
        return p;
    }

    /// Adds c·x^i y^j; silently drops terms beyond the truncation order.
    void add_term(int i, int j, const T& c) {
        if (i < 0 || j < 0) throw Error("negative exponent");
        if (i + j > order_) return;
        if (scalar_traits<T>::is_zero(c)) return;
        auto it = terms_.find(Mono{i, j});
        if (it == terms_.end()) {
            terms_.emplace(Mono{i, j}, c);
        } else {
            it->second = T(it->second + c);
            if (scalar_traits<T>::is_zero(it->second)) terms_.erase(it);
        }
    }

    T coeff(int i, int j) const {
        auto it = terms_.find(Mono{i, j});
        return it == terms_.end() ? scalar_traits<T>::zero() : it->second;
    }

    /// Lowest total degree with a nonzero term; order()+1 for the zero polynomial.
    int valuation() const {
        return terms_.empty() ? order_ + 1 : terms_.begin()->first.deg();
    }
    int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.deg(); }

    Poly2 truncated(int m) const {
        Poly2 r(m);
        for (const auto& [mono, c] : terms_) {
            if (mono.deg() <= m) r.terms_.emplace(mono, c);
        }
        return r;
    }

    Poly2 homogeneous_part(int d) const {
        Poly2 r(order_);
        for (const auto& [mono, c] : terms_)
            if (mono.deg() == d) r.terms_.emplace(mono, c);
        return r;
    }

    friend Poly2 operator+(const Poly2& a, const Poly2& b) {
        Poly2 r(std::min(a.order_, b.order_));
        r.terms_ = a.truncated(r.order_).terms_;
        for (const auto& [mono, c] : b.terms_) r.add_term(mono.i, mono.j, c);
        return r;
    }
    friend Poly2 operator-(const Poly2& a, const Poly2& b) { return a + (-b); }
    friend Poly2 operator-(const Poly2& a) {
        Poly2 r(a.order_);
        for (const auto& [mono, c] : a.terms_) r.terms_.emplace(mono, T(-c));
        return r;
    }
    friend Poly2 operator*(const T& s, const Poly2& a) {
        Poly2 r(a.order_);
        for (const auto& [mono, c] : a.terms_) r.add_term(mono.i, mono.j, T(s * c));
        return r;
    }

    /// Product truncated at min(order a, order b).
    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        Poly2 r(std::min(a.order_, b.order_));
        for (const auto& [ma, ca] : a.terms_) {
            if (ma.deg() > r.order_) break;
            for (const auto& [mb, cb] : b.terms_) {
                if (ma.deg() + mb.deg() > r.order_) break;
                r.add_term(ma.i + mb.i, ma.j + mb.j, T(ca * cb));
            }
        }
        return r;
    }

    friend bool operator==(const Poly2& a, const Poly2& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }

    /// Partial derivative; the truncation order drops by one (a degree-m jet
    /// determines its derivative through degree m-1 only).
    Poly2 deriv_x() const {
        Poly2 r(order_ > 0 ? order_ - 1 : 0);
        for (const auto& [mono, c] : terms_)
            if (mono.i > 0) r.add_term(mono.i - 1, mono.j, T(scalar_traits<T>::from_int(mono.i) * c));
        return r;
    }
    Poly2 deriv_y() const {
        Poly2 r(order_ > 0 ? order_ - 1 : 0);
        for (const auto& [mono, c] : terms_)
            if (mono.j > 0) r.add_term(mono.i, mono.j - 1, T(scalar_traits<T>::from_int(mono.j) * c));
        return r;
    }

    /// Substitution p(u(x,y), v(x,y)) truncated at `m`. Requires u, v with no
    /// constant term whenever p has terms of high degree (the usual jet
    /// composition setting); constant terms in u, v are handled but make the
    /// truncation order of the result only as good as min(u.order, v.order).
    Poly2 compose(const Poly2& u, const Poly2& v, int m) const {
        Poly2 r(m);
        if (terms_.empty()) return r;
        int max_i = 0, max_j = 0;
        for (const auto& [mono, c] : terms_) {
            max_i = std::max(max_i, mono.i);
            max_j = std::max(max_j, mono.j);
        }
        std::vector<Poly2> pu, pv;
        pu.reserve(max_i + 1);
        pv.reserve(max_j + 1);
        pu.push_back(Poly2::constant(m, scalar_traits<T>::one()));
        pv.push_back(Poly2::constant(m, scalar_traits<T>::one()));
        Poly2 ut = u.truncated(m), vt = v.truncated(m);
        for (int i = 1; i <= max_i; ++i) pu.push_back(pu.back() * ut);
        for (int j = 1; j <= max_j; ++j) pv.push_back(pv.back() * vt);
        for (const auto& [mono, c] : terms_) {
            Poly2 t = pu[static_cast<size_t>(mono.i)] * pv[static_cast<size_t>(mono.j)];
            r = r + c * t;
        }
        return r;
    }

    /// Recentering p(x + a, y + b), exact binomial expansion, same order.
    Poly2 shifted(const T& a, const T& b) const {
        Poly2 x_plus_a(order_);
        x_plus_a.add_term(1, 0, scalar_traits<T>::one());
        x_plus_a.add_term(0, 0, a);
        Poly2 y_plus_b(order_);
        y_plus_b.add_term(0, 1, scalar_traits<T>::one());
        y_plus_b.add_term(0, 0, b);
        return compose(x_plus_a, y_plus_b, order_);
    }

    template <class U> U eval(const U& x, const U& y) const {
        U acc{};
        for (const auto& [mono, c] : terms_) {
            U t = static_cast<U>(scalar_traits<T>::to_double(c));
            for (int p = 0; p < mono.i; ++p) t *= x;
            for (int p = 0; p < mono.j; ++p) t *= y;
            acc += t;
        }
        return acc;
    }

    /// Exact evaluation in the coefficient field itself.
    T eval_exact(const T& x, const T& y) const {
        T acc = scalar_traits<T>::zero();
        for (const auto& [mono, c] : terms_) {
            T t = c;
            for (int p = 0; p < mono.i; ++p) t = T(t * x);
            for (int p = 0; p < mono.j; ++p) t = T(t * y);
            acc = T(acc + t);
        }
        return acc;
    }

    template <class F> auto map_coeffs(F&& f) const {
        using U = decltype(f(std::declval<const T&>()));
        Poly2<U> r(order_);
        for (const auto& [mono, c] : terms_) r.add_term(mono.i, mono.j, f(c));
        return r;
    }

  private:
    template <class U> friend class Poly2;
    int order_ = 0;
    Terms terms_;
};

template <class T> Poly2<double> to_double_poly(const Poly2<T>& p) {
    return p.map_coeffs([](const T& c) { return scalar_traits<T>::to_double(c); });
}

} // namespace jetclass
