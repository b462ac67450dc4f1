#pragma once

#include "jetclass/complex_scalar.hpp"
#include "jetclass/linalg.hpp"
#include "jetclass/prng.hpp"
#include "jetclass/vector_field.hpp"

#include <string>
#include <vector>

namespace jetclass {

// ---------------------------------------------------------------------------
// Normal-form jet builders (shared by the centralizer suite and the CLI)
// ---------------------------------------------------------------------------

/// Realification of dz/dt = z(i w + sum_j a_j r^{2j}) as a jet of the given
/// order; a_j are supplied as complex rationals, a.size() terms.
inline VectorFieldJet<Rational> rotational_jet(int order, const Rational& omega,
                                               const std::vector<Complex<Rational>>& a) {
    VectorFieldJet<Rational> v(order);
    v.dx.add_term(0, 1, -omega);
    v.dy.add_term(1, 0, omega);
    for (size_t k = 1; k <= a.size(); ++k) {
        Poly2<Rational> r2k(order);
        for (size_t t = 0; t <= k; ++t) {
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k),
                         static_cast<unsigned long>(t));
            r2k.add_term(static_cast<int>(2 * (k - t)), static_cast<int>(2 * t), Rational(binom));
        }
        Poly2<Rational> xr = Poly2<Rational>::monomial(order, 1, 0, Rational(1)) * r2k;
        Poly2<Rational> yr = Poly2<Rational>::monomial(order, 0, 1, Rational(1)) * r2k;
        const Rational& re = a[k - 1].re;
        const Rational& im = a[k - 1].im;
        v.dx = v.dx + re * xr - im * yr;
        v.dy = v.dy + re * yr + im * xr;
    }
    return v;
}

/// (sum_j a_j x^j) d/dx + y (lambda + sum_j b_j x^j) d/dy; a indexed from
/// x^2 (a[0] = a_2), b from x (b[0] = b_1).
inline VectorFieldJet<Rational> saddle_node_jet(int order, const Rational& lambda,
                                                const std::vector<Rational>& a,
                                                const std::vector<Rational>& b) {
    VectorFieldJet<Rational> v(order);
    v.dy.add_term(0, 1, lambda);
    for (size_t j = 0; j < a.size(); ++j) v.dx.add_term(static_cast<int>(j + 2), 0, a[j]);
    for (size_t j = 0; j < b.size(); ++j) v.dy.add_term(static_cast<int>(j + 1), 1, b[j]);
    return v;
}

/// y d/dx + (b11 x^2 + b12 x y + b22 y^2) d/dy as a jet of the given order.
inline VectorFieldJet<Rational> bogdanov_takens_jet(int order, const Rational& b11,
                                                    const Rational& b12, const Rational& b22) {
    VectorFieldJet<Rational> v(order);
    v.dx.add_term(0, 1, Rational(1));
    v.dy.add_term(2, 0, b11);
    v.dy.add_term(1, 1, b12);
    v.dy.add_term(0, 2, b22);
    return v;
}

// ---------------------------------------------------------------------------
// Adjoint operator and centralizer
// ---------------------------------------------------------------------------

/// Matrix of w -> [v, w] on J^m in the canonical basis. Exact backend only:
/// the kernel dimensions feed certified statements.
inline MatQ ad_matrix(const VectorFieldJet<Rational>& v, int m) {
    if (!v.vanishes_at_origin())
        throw Error("ad_matrix: field must vanish at the origin");
    if (v.order < m) throw Error("ad_matrix: jet order below requested order");
    JetBasis basis(m);
    const int n = basis.size();
    MatQ M(n, n);
    VectorFieldJet<Rational> vt = v.truncated(m);
    for (int e = 0; e < n; ++e) {
        auto col = basis.coords(bracket(vt, basis.field<Rational>(e), m));
        for (int r = 0; r < n; ++r) M(r, e) = col[static_cast<size_t>(r)];
    }
    return M;
}

struct CentralizerResult {
    int dim = 0;
    std::vector<VectorFieldJet<Rational>> basis;
    bool restricted = false;
};

/// Kernel of w -> [v, w] for w in J^m.
///
/// The unrestricted kernel takes the bracket of the canonical polynomial
/// representatives without truncation (it lands in degree <= 2m-1):
/// truncating to J^m admits spurious top-degree commuters whenever the
/// bracket happens to start above degree m. The restricted kernel is the Lie
/// algebra of the stabilizer of v under the jet-group action on J^m, and
/// there the truncated bracket is the right object.
inline CentralizerResult centralizer(const VectorFieldJet<Rational>& v, int m,
                                     bool restrict_vanishing = false) {
    if (!v.vanishes_at_origin())
        throw Error("centralizer: field must vanish at the origin");
    if (v.order < m) throw Error("centralizer: jet order below requested order");
    JetBasis basis(m);
    CentralizerResult out;
    out.restricted = restrict_vanishing;
    if (!restrict_vanishing) {
        const int big = 2 * m - 1;
        JetBasis image(big);
        VectorFieldJet<Rational> rep = v.truncated(m).truncated(big); // polynomial representative
        MatQ M(image.size(), basis.size());
        for (int e = 0; e < basis.size(); ++e) {
            auto ef = basis.field<Rational>(e).truncated(big);
            auto col = image.coords(bracket(rep, ef, big));
            for (int r = 0; r < image.size(); ++r) M(r, e) = col[static_cast<size_t>(r)];
        }
        KernelBasis K = kernel(M);
        out.dim = static_cast<int>(K.basis.size());
        for (auto& x : K.basis) out.basis.push_back(basis.from_coords(x));
        return out;
    }
    MatQ full = ad_matrix(v, m);
    std::vector<int> keep = basis.vanishing_indices();
    MatQ sub(full.rows(), static_cast<int>(keep.size()));
    for (int r = 0; r < full.rows(); ++r)
        for (size_t c = 0; c < keep.size(); ++c) sub(r, static_cast<int>(c)) = full(r, keep[c]);
    KernelBasis K = kernel(sub);
    out.dim = static_cast<int>(K.basis.size());
    for (auto& x : K.basis) {
        std::vector<Rational> lifted(static_cast<size_t>(basis.size()), Rational(0));
        for (size_t c = 0; c < keep.size(); ++c) lifted[static_cast<size_t>(keep[c])] = x[c];
        out.basis.push_back(basis.from_coords(lifted));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Strata of normal forms and orbit codimension
// ---------------------------------------------------------------------------

/// A normal-form point together with a basis of the tangent space of its
/// stratum (partial derivatives with respect to the free normal-form
/// parameters).
struct StratumPoint {
    std::string name;
    VectorFieldJet<Rational> v;
    std::vector<VectorFieldJet<Rational>> tangents;
};

namespace detail {

inline Poly2<Rational> radius_power(int order, int k) {
    Poly2<Rational> r2k(order);
    for (int t = 0; t <= k; ++t) {
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(t));
        r2k.add_term(2 * (k - t), 2 * t, Rational(binom));
    }
    return r2k;
}

} // namespace detail

/// AH_k stratum point: a full chain a_1..a_J with Re a_1..Re a_k = 0 and
/// Re a_{k+1} != 0, J = floor((m-1)/2). Free parameters: omega, every
/// Im a_j, and Re a_j for j > k.
inline StratumPoint ah_stratum(int k, int m, const Rational& omega,
                               const std::vector<Complex<Rational>>& a) {
    const int J = (m - 1) / 2;
    if (static_cast<int>(a.size()) != J)
        throw Error("ah_stratum: chain must have floor((m-1)/2) entries");
    if (m < 2 * k + 3) throw Error("ah_stratum: order must be at least 2k+3");
    for (int j = 1; j <= k; ++j)
        if (sgn(a[static_cast<size_t>(j - 1)].re) != 0)
            throw Error("ah_stratum: Re a_j must vanish for j <= k");
    if (sgn(a[static_cast<size_t>(k)].re) == 0)
        throw Error("ah_stratum: Re a_{k+1} must not vanish");

    StratumPoint s;
    s.name = "AH_" + std::to_string(k);
    s.v = rotational_jet(m, omega, a);
    auto xfield = [&](int j) { // d/d(Re a_j): z r^{2j}
        VectorFieldJet<Rational> t(m);
        auto r = detail::radius_power(m, j);
        t.dx = Poly2<Rational>::monomial(m, 1, 0, Rational(1)) * r;
        t.dy = Poly2<Rational>::monomial(m, 0, 1, Rational(1)) * r;
        return t;
    };
    auto yfield = [&](int j) { // d/d(Im a_j): i z r^{2j}
        VectorFieldJet<Rational> t(m);
        auto r = detail::radius_power(m, j);
        t.dx = Poly2<Rational>::monomial(m, 0, 1, Rational(-1)) * r;
        t.dy = Poly2<Rational>::monomial(m, 1, 0, Rational(1)) * r;
        return t;
    };
    s.tangents.push_back(yfield(0)); // d/d omega is the rotation field
    for (int j = k + 1; j <= J; ++j) s.tangents.push_back(xfield(j));
    for (int j = 1; j <= J; ++j) s.tangents.push_back(yfield(j));
    return s;
}

/// SN_k stratum point: a_2..a_{k+1} = 0, a_{k+2} != 0. Free parameters:
/// lambda, a_j for j >= k+2, and the whole b chain.
inline StratumPoint sn_stratum(int k, int m, const Rational& lambda,
                               const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (m < k + 2) throw Error("sn_stratum: order must be at least k+2");
    if (static_cast<int>(a.size()) != m - 1)
        throw Error("sn_stratum: a chain must list a_2..a_m");
    if (static_cast<int>(b.size()) != m - 1)
        throw Error("sn_stratum: b chain must list b_1..b_{m-1}");
    if (sgn(lambda) == 0) throw Error("sn_stratum: lambda must not vanish");
    for (int j = 2; j <= k + 1; ++j)
        if (sgn(a[static_cast<size_t>(j - 2)]) != 0)
            throw Error("sn_stratum: a_j must vanish for j <= k+1");
    if (sgn(a[static_cast<size_t>(k)]) == 0) throw Error("sn_stratum: a_{k+2} must not vanish");

    StratumPoint s;
    s.name = "SN_" + std::to_string(k);
    s.v = saddle_node_jet(m, lambda, a, b);
    {
        VectorFieldJet<Rational> t(m); // d/d lambda
        t.dy.add_term(0, 1, Rational(1));
        s.tangents.push_back(t);
    }
    for (int j = k + 2; j <= m; ++j) {
        VectorFieldJet<Rational> t(m); // d/d a_j
        t.dx.add_term(j, 0, Rational(1));
        s.tangents.push_back(t);
    }
    for (int j = 1; j <= m - 1; ++j) {
        VectorFieldJet<Rational> t(m); // d/d b_j
        t.dy.add_term(j, 1, Rational(1));
        s.tangents.push_back(t);
    }
    return s;
}

enum class BTStratumKind { BT0, BT1_b11_zero, BT1_b12_zero };

/// BT strata constrain the 2-jet only: y d/dx + (b11 x^2 + b12 x y + b22
/// y^2) d/dy with b11 b12 != 0 (BT0), or one of them pinned to zero (the
/// two BT1 substrata). At orders above 2 the class is the truncation
/// preimage, so every higher-degree direction is a free tangent.
inline StratumPoint bt_stratum(BTStratumKind kind, const Rational& b11, const Rational& b12,
                               const Rational& b22, int m = 2) {
    if (m < 2) throw Error("bt_stratum: order must be at least 2");
    StratumPoint s;
    auto quad = [&](int i, int j) {
        VectorFieldJet<Rational> t(m);
        t.dy.add_term(i, j, Rational(1));
        return t;
    };
    switch (kind) {
        case BTStratumKind::BT0:
            if (sgn(b11) == 0 || sgn(b12) == 0) throw Error("bt_stratum: BT0 needs b11 b12 != 0");
            s.name = "BT_0";
            s.v = bogdanov_takens_jet(m, b11, b12, b22);
            s.tangents = {quad(2, 0), quad(1, 1), quad(0, 2)};
            break;
        case BTStratumKind::BT1_b11_zero:
            if (sgn(b12) == 0) throw Error("bt_stratum: substratum needs b12 != 0");
            s.name = "BT_1(b11=0)";
            s.v = bogdanov_takens_jet(m, Rational(0), b12, b22);
            s.tangents = {quad(1, 1), quad(0, 2)};
            break;
        case BTStratumKind::BT1_b12_zero:
            if (sgn(b11) == 0) throw Error("bt_stratum: substratum needs b11 != 0");
            s.name = "BT_1(b12=0)";
            s.v = bogdanov_takens_jet(m, b11, Rational(0), b22);
            s.tangents = {quad(2, 0), quad(0, 2)};
            break;
    }
    JetBasis basis(m);
    for (int idx = 0; idx < basis.size(); ++idx) {
        auto e = basis.element(idx);
        if (e.i + e.j >= 3) s.tangents.push_back(basis.field<Rational>(idx));
    }
    return s;
}

/// Seeded random stratum point of a named class at order m: free normal-form
/// parameters become small rationals, pinned ones stay pinned, the leading
/// required-nonzero slot is forced nonzero. BT1 alternates its two substrata
/// by sample index.
inline StratumPoint sample_stratum(const std::string& cls, int k, int m, Prng& rng, int index = 0) {
    if (cls == "AH") {
        int J = (m - 1) / 2;
        std::vector<Complex<Rational>> a;
        for (int j = 1; j <= J; ++j) {
            Rational re = j <= k ? Rational(0) : rng.next_rational(3, 7);
            if (j == k + 1 && sgn(re) == 0) re = Rational(1, 2);
            a.emplace_back(re, rng.next_rational(3, 7));
        }
        return ah_stratum(k, m, rng.next_nonzero_rational(3, 7), a);
    }
    if (cls == "SN") {
        std::vector<Rational> a(static_cast<size_t>(m - 1), Rational(0));
        std::vector<Rational> b(static_cast<size_t>(m - 1), Rational(0));
        for (int j = k + 2; j <= m; ++j) a[static_cast<size_t>(j - 2)] = rng.next_rational(3, 7);
        if (sgn(a[static_cast<size_t>(k)]) == 0) a[static_cast<size_t>(k)] = Rational(1, 3);
        for (auto& q : b) q = rng.next_rational(3, 7);
        return sn_stratum(k, m, rng.next_nonzero_rational(3, 7), a, b);
    }
    if (cls == "BT0")
        return bt_stratum(BTStratumKind::BT0, rng.next_nonzero_rational(3, 7),
                          rng.next_nonzero_rational(3, 7), rng.next_rational(3, 7), m);
    if (cls == "BT1") {
        if (index % 2 == 0)
            return bt_stratum(BTStratumKind::BT1_b11_zero, Rational(0),
                              rng.next_nonzero_rational(3, 7), rng.next_rational(3, 7), m);
        return bt_stratum(BTStratumKind::BT1_b12_zero, rng.next_nonzero_rational(3, 7), Rational(0),
                          rng.next_rational(3, 7), m);
    }
    throw Error("unknown class (use AH, SN, BT0 or BT1): " + cls);
}

/// Rank of the orbit tangent space at v: the span of [u, v] for u ranging
/// over the basis of jets vanishing at the origin.
inline int orbit_rank(const VectorFieldJet<Rational>& v, int m) {
    JetBasis basis(m);
    auto keep = basis.vanishing_indices();
    MatQ M(static_cast<int>(keep.size()), basis.size());
    VectorFieldJet<Rational> vt = v.truncated(m);
    for (size_t r = 0; r < keep.size(); ++r) {
        auto row = basis.coords(bracket(basis.field<Rational>(keep[r]), vt, m));
        for (int c = 0; c < basis.size(); ++c) M(static_cast<int>(r), c) = row[static_cast<size_t>(c)];
    }
    return rank(M);
}

/// Codimension of the class through the stratum point, measured inside the
/// space of jets vanishing at the origin (the ambient space of the
/// codimension statements: both the orbit and the stratum live there).
/// Stacks the orbit directions [u, v] with the stratum tangents and returns
/// dim - rank.
inline int orbit_codimension(const StratumPoint& s, int m) {
    JetBasis basis(m);
    auto keep = basis.vanishing_indices();
    const int rows = static_cast<int>(keep.size()) + static_cast<int>(s.tangents.size());
    MatQ M(rows, basis.size());
    VectorFieldJet<Rational> vt = s.v.truncated(m);
    int r = 0;
    for (int u : keep) {
        auto row = basis.coords(bracket(basis.field<Rational>(u), vt, m));
        for (int c = 0; c < basis.size(); ++c) M(r, c) = row[static_cast<size_t>(c)];
        ++r;
    }
    for (const auto& t : s.tangents) {
        auto row = basis.coords(t.truncated(m));
        for (int c = 0; c < basis.size(); ++c) M(r, c) = row[static_cast<size_t>(c)];
        ++r;
    }
    return basis.vanishing_size() - rank(M);
}

} // namespace jetclass
