#include "jetclass/classify.hpp"

#include <algorithm>

namespace jetclass {

namespace {

double max_coeff_magnitude(const VectorFieldJet<double>& v) {
    double m = 0.0;
    for (const auto& [mono, c] : v.dx.terms()) m = std::max(m, std::fabs(c));
    for (const auto& [mono, c] : v.dy.terms()) m = std::max(m, std::fabs(c));
    return m;
}

void fill_linear(GermReport& r, double det, double tr, LinearClass cls, int order) {
    r.det = det;
    r.tr = tr;
    r.linear = cls;
    r.order = order;
}

GermReport classify_ah_float(const VectorFieldJet<double>& v, const ToleranceSet& tol, GermReport r) {
    int k_max = (v.order - 1) / 2;
    if (k_max < 1) {
        r.kind = Kind::Unresolved;
        r.unresolved_reason = "jet order below 3: no focus value is determined";
        return r;
    }
    auto prep = rotation_normalize(v);
    detail::force_linear_part(prep.field, {0.0, -prep.omega, prep.omega, 0.0});
    auto fv = focus_values(prep.field, k_max);
    r.omega = fv.omega;
    for (const auto& a : fv.a) {
        r.focus_re.push_back(a.re);
        r.focus_im.push_back(a.im);
    }
    // scale model: the roundoff in a_j stays within ~1e-9 sqrt(C) in practice
    // (measured over random quintic conjugations with coefficients up to 1e13),
    // while genuine focus values of such germs sit many decades higher
    const double scale = std::sqrt(std::max(1.0, max_coeff_magnitude(prep.field))) *
                         std::max(1.0, 1.0 / prep.omega);
    for (int j = 1; j <= k_max; ++j) {
        switch (decide_zero(r.focus_re[static_cast<size_t>(j - 1)], scale, tol)) {
            case ZeroDecision::NonZero:
                r.kind = Kind::AH;
                r.k = j - 1;
                return r;
            case ZeroDecision::DeadZone:
                r.kind = Kind::Unresolved;
                r.unresolved_reason =
                    "focus value " + std::to_string(j) + " falls in the numeric dead zone";
                return r;
            case ZeroDecision::Zero: break;
        }
    }
    r.kind = Kind::Unresolved;
    r.unresolved_reason = "focus values vanish through depth " + std::to_string(k_max) +
                          ": jet order insufficient";
    return r;
}

GermReport classify_sn_float(const VectorFieldJet<double>& v, const ToleranceSet& tol, GermReport r) {
    auto red = saddle_node_reduce(v, v.order);
    r.sn_lambda = red.lambda;
    r.sn_a = red.a;
    r.sn_cm = red.cm;
    const double scale = std::sqrt(std::max(1.0, max_coeff_magnitude(red.prepared))) *
                         std::max(1.0, 1.0 / std::fabs(red.lambda));
    for (int j = 2; j <= v.order; ++j) {
        switch (decide_zero(red.a[static_cast<size_t>(j - 1)], scale, tol)) {
            case ZeroDecision::NonZero:
                r.kind = Kind::SN;
                r.k = j - 2;
                return r;
            case ZeroDecision::DeadZone:
                r.kind = Kind::Unresolved;
                r.unresolved_reason =
                    "reduced coefficient a_" + std::to_string(j) + " falls in the numeric dead zone";
                return r;
            case ZeroDecision::Zero: break;
        }
    }
    r.kind = Kind::Unresolved;
    r.unresolved_reason = "reduced equation vanishes through order " + std::to_string(v.order) +
                          ": jet order insufficient";
    return r;
}

GermReport classify_bt_float(const VectorFieldJet<double>& v, const ToleranceSet& tol, GermReport r) {
    if (v.order < 2) {
        r.kind = Kind::Unresolved;
        r.unresolved_reason = "jet order below 2: Bogdanov-Takens coefficients undetermined";
        return r;
    }
    auto red = bogdanov_takens_reduce(v);
    r.bt = {red.b11, red.b12, red.b22};
    double scale = std::sqrt(std::max(1.0, max_coeff_magnitude(v.truncated(2))));
    auto d11 = decide_zero(red.b11, scale, tol);
    auto d12 = decide_zero(red.b12, scale, tol);
    if (d11 == ZeroDecision::DeadZone || d12 == ZeroDecision::DeadZone) {
        r.kind = Kind::Unresolved;
        r.unresolved_reason = "b11 or b12 falls in the numeric dead zone";
        return r;
    }
    r.kind = (d11 == ZeroDecision::NonZero && d12 == ZeroDecision::NonZero) ? Kind::BT0 : Kind::BT1;
    return r;
}

} // namespace

GermReport classify_germ(const VectorFieldJet<double>& v, const ToleranceSet& tol) {
    tol.validate();
    if (!v.vanishes_at_origin()) throw Error("classify_germ: field must vanish at the origin");
    GermReport r;
    r.backend = "float";
    auto A = v.linear_part();
    fill_linear(r, A[0] * A[3] - A[1] * A[2], A[0] + A[3], classify_linear(A, tol), v.order);
    switch (r.linear) {
        case LinearClass::Hyperbolic: r.kind = Kind::H; return r;
        case LinearClass::Zero: r.kind = Kind::ZL; return r;
        case LinearClass::AndronovHopf: return classify_ah_float(v, tol, r);
        case LinearClass::SaddleNode: return classify_sn_float(v, tol, r);
        case LinearClass::BogdanovTakens: return classify_bt_float(v, tol, r);
    }
    throw Error("unreachable");
}

GermReport classify_germ(const VectorFieldJet<Rational>& v, const ToleranceSet& tol) {
    tol.validate();
    if (!v.vanishes_at_origin()) throw Error("classify_germ: field must vanish at the origin");
    GermReport r;
    r.backend = "rational";
    r.exact_payload = true;
    auto A = v.linear_part();
    Rational det = A[0] * A[3] - A[1] * A[2];
    Rational tr = A[0] + A[3];
    fill_linear(r, det.get_d(), tr.get_d(), classify_linear(A), v.order);

    switch (r.linear) {
        case LinearClass::Hyperbolic: r.kind = Kind::H; return r;
        case LinearClass::Zero: r.kind = Kind::ZL; return r;

        case LinearClass::AndronovHopf: {
            int k_max = (v.order - 1) / 2;
            if (k_max < 1) {
                r.kind = Kind::Unresolved;
                r.unresolved_reason = "jet order below 3: no focus value is determined";
                r.exact_payload = false;
                return r;
            }
            std::optional<RotationPrep<Rational>> prep;
            try {
                prep = rotation_normalize(v);
            } catch (const IrrationalFrequency&) {
                GermReport rf = classify_germ(to_double_field(v), tol);
                rf.backend = "rational->float";
                return rf;
            }
            auto fv = focus_values(prep->field, k_max);
            r.omega_q = fv.omega;
            r.omega = fv.omega.get_d();
            for (const auto& a : fv.a) {
                r.focus_re_q.push_back(a.re);
                r.focus_im_q.push_back(a.im);
                r.focus_re.push_back(a.re.get_d());
                r.focus_im.push_back(a.im.get_d());
            }
            for (int j = 1; j <= k_max; ++j) {
                if (sgn(r.focus_re_q[static_cast<size_t>(j - 1)]) != 0) {
                    r.kind = Kind::AH;
                    r.k = j - 1;
                    return r;
                }
            }
            r.kind = Kind::Unresolved;
            r.unresolved_reason = "focus values vanish through depth " + std::to_string(k_max) +
                                  ": jet order insufficient";
            return r;
        }

        case LinearClass::SaddleNode: {
            auto red = saddle_node_reduce(v, v.order);
            r.sn_lambda_q = red.lambda;
            r.sn_lambda = red.lambda.get_d();
            for (const auto& q : red.a) {
                r.sn_a_q.push_back(q);
                r.sn_a.push_back(q.get_d());
            }
            for (const auto& q : red.cm) {
                r.sn_cm_q.push_back(q);
                r.sn_cm.push_back(q.get_d());
            }
            for (int j = 2; j <= v.order; ++j) {
                if (sgn(red.a[static_cast<size_t>(j - 1)]) != 0) {
                    r.kind = Kind::SN;
                    r.k = j - 2;
                    return r;
                }
            }
            r.kind = Kind::Unresolved;
            r.unresolved_reason = "reduced equation vanishes through order " +
                                  std::to_string(v.order) + ": jet order insufficient";
            return r;
        }

        case LinearClass::BogdanovTakens: {
            if (v.order < 2) {
                r.kind = Kind::Unresolved;
                r.unresolved_reason = "jet order below 2: Bogdanov-Takens coefficients undetermined";
                r.exact_payload = false;
                return r;
            }
            auto red = bogdanov_takens_reduce(v);
            r.bt_q = {red.b11, red.b12, red.b22};
            r.bt = {red.b11.get_d(), red.b12.get_d(), red.b22.get_d()};
            r.kind = (sgn(red.b11) != 0 && sgn(red.b12) != 0) ? Kind::BT0 : Kind::BT1;
            return r;
        }
    }
    throw Error("unreachable");
}

} // namespace jetclass
