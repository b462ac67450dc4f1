#pragma once

#include "jetclass/classify.hpp"
#include "jetclass/linalg.hpp"
#include "jetclass/vector_field.hpp"

#include <cmath>
#include <vector>

namespace jetclass {

// ---------------------------------------------------------------------------
// Pointwise degeneracy predicate
// ---------------------------------------------------------------------------

/// det(J)·tr(J) = 0 test. Note this is necessary but not sufficient for a
/// genuinely non-hyperbolic point (tr = 0 with det < 0 is a saddle); the
/// scanner reports both this verbatim count and the genuine one.
inline bool nonhyperbolic_test(const std::array<Rational, 4>& J, const ToleranceSet& = {}) {
    Rational det = J[0] * J[3] - J[1] * J[2];
    Rational tr = J[0] + J[3];
    return sgn(det) == 0 || sgn(tr) == 0;
}

inline bool nonhyperbolic_test(const std::array<double, 4>& J, const ToleranceSet& tol = {}) {
    double s = std::max({std::fabs(J[0]), std::fabs(J[1]), std::fabs(J[2]), std::fabs(J[3])});
    if (s == 0.0) return true;
    double det = (J[0] * J[3] - J[1] * J[2]) / (s * s);
    double tr = (J[0] + J[3]) / s;
    return std::fabs(det * tr) < tol.tol_linear;
}

// ---------------------------------------------------------------------------
// Characteristic polynomial and the imaginary-eigenvalue resultant
// ---------------------------------------------------------------------------

template <class T> struct SquareMatrix {
    int n = 0;
    std::vector<T> a; // row-major
    SquareMatrix() = default;
    explicit SquareMatrix(int size) : n(size), a(static_cast<size_t>(size) * size, scalar_traits<T>::zero()) {}
    T& operator()(int r, int c) { return a[static_cast<size_t>(r) * n + c]; }
    const T& operator()(int r, int c) const { return a[static_cast<size_t>(r) * n + c]; }
};

/// Monic characteristic polynomial det(lambda I - A), coefficients in
/// ascending degree order (size n+1). Faddeev-LeVerrier recursion.
template <class T> std::vector<T> characteristic_polynomial(const SquareMatrix<T>& A) {
    const int n = A.n;
    std::vector<T> c(static_cast<size_t>(n + 1), scalar_traits<T>::zero());
    c[static_cast<size_t>(n)] = scalar_traits<T>::one();
    SquareMatrix<T> M = A;
    for (int k = 1; k <= n; ++k) {
        if (k > 1) {
            // M <- A (M + c_{n-k+1} I)
            SquareMatrix<T> W = M;
            for (int i = 0; i < n; ++i) W(i, i) = T(W(i, i) + c[static_cast<size_t>(n - k + 1)]);
            SquareMatrix<T> P(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    T acc = scalar_traits<T>::zero();
                    for (int t = 0; t < n; ++t) acc = T(acc + A(i, t) * W(t, j));
                    P(i, j) = acc;
                }
            M = P;
        }
        T trace = scalar_traits<T>::zero();
        for (int i = 0; i < n; ++i) trace = T(trace + M(i, i));
        c[static_cast<size_t>(n - k)] = T(T(-trace) / scalar_traits<T>::from_int(k));
    }
    return c;
}

namespace detail {

inline Rational poly_det(const std::vector<std::vector<Rational>>& rows) {
    const int n = static_cast<int>(rows.size());
    MatQ M(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) M(r, c) = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
    return det(M);
}

inline double poly_det(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<std::vector<double>> a = rows;
    double d = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int r = k + 1; r < n; ++r)
            if (std::fabs(a[static_cast<size_t>(r)][static_cast<size_t>(k)]) >
                std::fabs(a[static_cast<size_t>(piv)][static_cast<size_t>(k)]))
                piv = r;
        if (a[static_cast<size_t>(piv)][static_cast<size_t>(k)] == 0.0) return 0.0;
        if (piv != k) {
            std::swap(a[static_cast<size_t>(piv)], a[static_cast<size_t>(k)]);
            d = -d;
        }
        d *= a[static_cast<size_t>(k)][static_cast<size_t>(k)];
        for (int r = k + 1; r < n; ++r) {
            double f = a[static_cast<size_t>(r)][static_cast<size_t>(k)] /
                       a[static_cast<size_t>(k)][static_cast<size_t>(k)];
            for (int c = k; c < n; ++c)
                a[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                    f * a[static_cast<size_t>(k)][static_cast<size_t>(c)];
        }
    }
    return d;
}

} // namespace detail

/// Sylvester resultant with the degenerate-case convention: leading zero
/// coefficients are stripped; an identically zero polynomial gives 0; two
/// nonzero constants give 1.
template <class T> T sylvester_resultant(std::vector<T> p, std::vector<T> q) {
    auto strip = [](std::vector<T>& f) {
        while (!f.empty() && scalar_traits<T>::is_zero(f.back())) f.pop_back();
    };
    strip(p);
    strip(q);
    if (p.empty() || q.empty()) return scalar_traits<T>::zero();
    const int dp = static_cast<int>(p.size()) - 1;
    const int dq = static_cast<int>(q.size()) - 1;
    if (dp == 0 && dq == 0) return scalar_traits<T>::one();
    if (dp == 0) {
        T r = scalar_traits<T>::one();
        for (int i = 0; i < dq; ++i) r = T(r * p[0]);
        return r;
    }
    if (dq == 0) {
        T r = scalar_traits<T>::one();
        for (int i = 0; i < dp; ++i) r = T(r * q[0]);
        return r;
    }
    const int n = dp + dq;
    std::vector<std::vector<T>> rows(static_cast<size_t>(n),
                                     std::vector<T>(static_cast<size_t>(n), scalar_traits<T>::zero()));
    for (int r = 0; r < dq; ++r)
        for (int i = 0; i <= dp; ++i)
            rows[static_cast<size_t>(r)][static_cast<size_t>(r + i)] = p[static_cast<size_t>(dp - i)];
    for (int r = 0; r < dp; ++r)
        for (int i = 0; i <= dq; ++i)
            rows[static_cast<size_t>(dq + r)][static_cast<size_t>(r + i)] = q[static_cast<size_t>(dq - i)];
    return detail::poly_det(rows);
}

/// R(A): resultant of the real and imaginary parts of P(i mu), where P is
/// the characteristic polynomial. Vanishes whenever A has an eigenvalue
/// i mu with real mu (mu = 0 included). For 2x2, R(A) = det(A)·tr(A)^2.
template <class T> T imaginary_eigenvalue_resultant(const SquareMatrix<T>& A) {
    if (A.n < 2) throw Error("imaginary_eigenvalue_resultant: matrix must be at least 2x2");
    std::vector<T> c = characteristic_polynomial(A);
    std::vector<T> p1, p2; // real and imaginary parts of P(i mu)
    for (size_t k = 0; k < c.size(); ++k) {
        switch (k % 4) {
            case 0: p1.push_back(c[k]); p2.push_back(scalar_traits<T>::zero()); break;
            case 1: p1.push_back(scalar_traits<T>::zero()); p2.push_back(c[k]); break;
            case 2: p1.push_back(T(-c[k])); p2.push_back(scalar_traits<T>::zero()); break;
            case 3: p1.push_back(scalar_traits<T>::zero()); p2.push_back(T(-c[k])); break;
        }
    }
    return sylvester_resultant(p1, p2);
}

// ---------------------------------------------------------------------------
// Local multiplicity via Macaulay dual spaces
// ---------------------------------------------------------------------------

struct MultiplicityResult {
    bool stabilized = false;
    int multiplicity = 0; // meaningful only when stabilized
    std::vector<int> dual_dims;
    int cutoff = 0;
};

/// Dimension of the local dual space of (v_x, v_y) at the origin: kernels of
/// Macaulay matrices degree by degree until two consecutive dimensions
/// agree. Exact backend only, so the dimensions are certified.
inline MultiplicityResult local_multiplicity(const VectorFieldJet<Rational>& v, int cutoff = 12) {
    if (!v.vanishes_at_origin()) throw Error("local_multiplicity: field must vanish at the origin");
    if (cutoff < 1) throw Error("local_multiplicity: cutoff must be >= 1");
    MultiplicityResult out;
    out.cutoff = cutoff;
    if (v.is_zero()) {
        out.dual_dims = {};
        return out; // infinite local algebra, reported as not stabilized
    }

    auto mono_count = [](int d) { return (d + 1) * (d + 2) / 2; };
    auto mono_index = [](int i, int j) {
        int d = i + j;
        return d * (d + 1) / 2 + i;
    };

    int prev = -1;
    for (int d = 0; d <= cutoff; ++d) {
        const int cols = mono_count(d);
        // rows: multiples x^beta * component, |beta| <= d
        std::vector<std::vector<Rational>> rows;
        for (int bi = 0; bi + 0 <= d; ++bi) {
            for (int bj = 0; bi + bj <= d; ++bj) {
                for (int comp = 0; comp < 2; ++comp) {
                    const Poly2<Rational>& f = comp == 0 ? v.dx : v.dy;
                    std::vector<Rational> row(static_cast<size_t>(cols), Rational(0));
                    bool nonzero = false;
                    for (const auto& [mono, c] : f.terms()) {
                        int gi = mono.i + bi, gj = mono.j + bj;
                        if (gi + gj > d) continue;
                        row[static_cast<size_t>(mono_index(gi, gj))] = c;
                        nonzero = true;
                    }
                    if (nonzero) rows.push_back(std::move(row));
                }
            }
        }
        MatQ M(static_cast<int>(rows.size()), cols);
        for (size_t r = 0; r < rows.size(); ++r)
            for (int c = 0; c < cols; ++c) M(static_cast<int>(r), c) = rows[r][static_cast<size_t>(c)];
        int dim = cols - rank(M);
        out.dual_dims.push_back(dim);
        if (dim == prev) {
            out.stabilized = true;
            out.multiplicity = dim;
            return out;
        }
        prev = dim;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Multiplicity bounds for generic k-parameter families
// ---------------------------------------------------------------------------

/// Strict upper bound on the multiplicity of a single point:
/// (2/(3 sqrt 3)) (k+2)^{3/2}. Written so the k = 1 value is exactly 2.
inline double gk_point_bound(int k) {
    if (k < 0) throw Error("gk_point_bound: k must be >= 0");
    return (2.0 * (k + 2) / 3.0) * std::sqrt((k + 2) / 3.0);
}

/// Non-strict bound on the sum of multiplicities: k times the point bound.
inline double gk_sum_bound(int k) {
    if (k < 0) throw Error("gk_sum_bound: k must be >= 0");
    return k * gk_point_bound(k);
}

inline bool near_integer(double x) { return std::fabs(x - std::round(x)) < 1e-9; }

/// Largest integer allowed by a strict "< bound". When the bound is an
/// exact integer (k = 1 gives exactly 2) the strictness bites; that tension
/// is surfaced by near_integer in the reports rather than resolved here.
inline int strict_floor(double bound) {
    if (near_integer(bound)) return static_cast<int>(std::llround(bound)) - 1;
    return static_cast<int>(std::floor(bound));
}

/// Largest integer allowed by a non-strict "<= bound".
inline int loose_floor(double bound) {
    if (near_integer(bound)) return static_cast<int>(std::llround(bound));
    return static_cast<int>(std::floor(bound));
}

} // namespace jetclass
