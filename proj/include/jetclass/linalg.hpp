#pragma once

#include "jetclass/scalar.hpp"

#include <vector>

namespace jetclass {

/// Dense matrix over exact rationals. All rank/kernel/determinant queries
/// below are certified: fraction-free (Bareiss) elimination over integers
/// after per-row denominator clearing, no tolerances anywhere.
class MatQ {
  public:
    MatQ() = default;
    MatQ(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Rational(0)) {
        if (rows < 0 || cols < 0) throw Error("matrix dimensions must be nonnegative");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Rational& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    std::vector<Rational> matvec(const std::vector<Rational>& x) const {
        if (x.size() != static_cast<size_t>(cols_)) throw Error("matvec: size mismatch");
        std::vector<Rational> y(static_cast<size_t>(rows_), Rational(0));
        for (int r = 0; r < rows_; ++r) {
            Rational acc(0);
            for (int c = 0; c < cols_; ++c) {
                if (sgn((*this)(r, c)) != 0 && sgn(x[static_cast<size_t>(c)]) != 0)
                    acc += (*this)(r, c) * x[static_cast<size_t>(c)];
            }
            y[static_cast<size_t>(r)] = acc;
        }
        return y;
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

namespace detail {

struct IntEchelon {
    std::vector<mpz_class> a; // row-major, rows x cols
    int rows = 0, cols = 0;
    int rank = 0;
    std::vector<int> pivot_col; // per pivot row 0..rank-1
    int swap_sign = 1;
    mpz_class& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const mpz_class& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

/// Clears denominators row by row and runs fraction-free elimination.
/// Row scaling preserves rank and kernel.
inline IntEchelon bareiss_echelon(const MatQ& M) {
    IntEchelon E;
    E.rows = M.rows();
    E.cols = M.cols();
    E.a.assign(static_cast<size_t>(E.rows) * E.cols, mpz_class(0));
    for (int r = 0; r < E.rows; ++r) {
        mpz_class lcm(1);
        for (int c = 0; c < E.cols; ++c) {
            const mpz_class& den = M(r, c).get_den();
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        }
        for (int c = 0; c < E.cols; ++c) {
            const Rational& q = M(r, c);
            E.at(r, c) = q.get_num() * (lcm / q.get_den());
        }
    }

    mpz_class prev(1);
    int row = 0;
    for (int col = 0; col < E.cols && row < E.rows; ++col) {
        // pivot: nonzero entry of minimal limb size, to limit growth
        int pr = -1;
        size_t best = 0;
        for (int r = row; r < E.rows; ++r) {
            if (sgn(E.at(r, col)) == 0) continue;
            size_t sz = mpz_size(E.at(r, col).get_mpz_t());
            if (pr < 0 || sz < best) {
                pr = r;
                best = sz;
            }
        }
        if (pr < 0) continue;
        if (pr != row) {
            for (int c = 0; c < E.cols; ++c) std::swap(E.at(pr, c), E.at(row, c));
            E.swap_sign = -E.swap_sign;
        }
        const mpz_class pivot = E.at(row, col);
        for (int r = row + 1; r < E.rows; ++r) {
            const mpz_class head = E.at(r, col);
            for (int c = col + 1; c < E.cols; ++c) {
                mpz_class t = E.at(r, c) * pivot - head * E.at(row, c);
                mpz_divexact(E.at(r, c).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            E.at(r, col) = 0;
        }
        prev = pivot;
        E.pivot_col.push_back(col);
        ++row;
    }
    E.rank = row;
    return E;
}

} // namespace detail

inline int rank(const MatQ& M) { return detail::bareiss_echelon(M).rank; }

struct KernelBasis {
    int rank = 0;
    std::vector<std::vector<Rational>> basis; // each of length cols
};

/// Exact kernel basis, one vector per free column, entries scaled to a
/// primitive integer vector with positive first nonzero entry.
inline KernelBasis kernel(const MatQ& M) {
    detail::IntEchelon E = detail::bareiss_echelon(M);
    KernelBasis K;
    K.rank = E.rank;

    std::vector<bool> is_pivot(static_cast<size_t>(E.cols), false);
    for (int c : E.pivot_col) is_pivot[static_cast<size_t>(c)] = true;

    for (int f = 0; f < E.cols; ++f) {
        if (is_pivot[static_cast<size_t>(f)]) continue;
        std::vector<Rational> x(static_cast<size_t>(E.cols), Rational(0));
        x[static_cast<size_t>(f)] = 1;
        for (int r = E.rank - 1; r >= 0; --r) {
            int p = E.pivot_col[static_cast<size_t>(r)];
            Rational acc(0);
            for (int c = p + 1; c < E.cols; ++c) {
                if (sgn(x[static_cast<size_t>(c)]) != 0 && sgn(E.at(r, c)) != 0)
                    acc += Rational(E.at(r, c)) * x[static_cast<size_t>(c)];
            }
            x[static_cast<size_t>(p)] = -acc / Rational(E.at(r, p));
        }
        // primitive integer normalization
        mpz_class lcm(1), gcd(0);
        for (const Rational& q : x) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
        for (Rational& q : x) q *= Rational(lcm);
        for (const Rational& q : x) mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), q.get_num().get_mpz_t());
        if (sgn(gcd) != 0)
            for (Rational& q : x) q /= Rational(gcd);
        for (const Rational& q : x) {
            if (sgn(q) != 0) {
                if (sgn(q) < 0)
                    for (Rational& e : x) e = -e;
                break;
            }
        }
        K.basis.push_back(std::move(x));
    }
    return K;
}

/// Exact determinant of a square matrix (Bareiss; last pivot, with the row
/// swap sign and the row-clearing scale divided back out).
inline Rational det(const MatQ& M) {
    if (M.rows() != M.cols()) throw Error("det: matrix must be square");
    const int n = M.rows();
    if (n == 0) return Rational(1);

    Rational scale(1);
    MatQ W = M;
    std::vector<mpz_class> a(static_cast<size_t>(n) * n);
    for (int r = 0; r < n; ++r) {
        mpz_class lcm(1);
        for (int c = 0; c < n; ++c)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), W(r, c).get_den().get_mpz_t());
        scale *= Rational(lcm);
        for (int c = 0; c < n; ++c)
            a[static_cast<size_t>(r) * n + c] = W(r, c).get_num() * (lcm / W(r, c).get_den());
    }
    auto at = [&](int r, int c) -> mpz_class& { return a[static_cast<size_t>(r) * n + c]; };

    int sign = 1;
    mpz_class prev(1);
    for (int k = 0; k < n - 1; ++k) {
        int pr = -1;
        size_t best = 0;
        for (int r = k; r < n; ++r) {
            if (sgn(at(r, k)) == 0) continue;
            size_t sz = mpz_size(at(r, k).get_mpz_t());
            if (pr < 0 || sz < best) {
                pr = r;
                best = sz;
            }
        }
        if (pr < 0) return Rational(0);
        if (pr != k) {
            for (int c = 0; c < n; ++c) std::swap(at(pr, c), at(k, c));
            sign = -sign;
        }
        const mpz_class pivot = at(k, k);
        for (int r = k + 1; r < n; ++r) {
            const mpz_class head = at(r, k);
            for (int c = k + 1; c < n; ++c) {
                mpz_class t = at(r, c) * pivot - head * at(k, c);
                mpz_divexact(at(r, c).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            at(r, k) = 0;
        }
        prev = pivot;
    }
    Rational d(at(n - 1, n - 1));
    if (sign < 0) d = -d;
    return d / scale;
}

} // namespace jetclass
