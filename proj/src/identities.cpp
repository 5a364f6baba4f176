#include "sftweyl/identities.hpp"

#include "sftweyl/errors.hpp"
#include "sftweyl/homology.hpp"

namespace sftweyl {

namespace {

void require_master(const Series& H, const TruncationWindow& w) {
    if (!check_master(H, w).holds()) throw MasterFails();
}

int certificate_t_level(const Series& H, const Series& defect, const TruncationWindow& w) {
    int lvl = std::max(max_descendant_level(H), max_descendant_level(defect));
    if (w.max_t_level) lvl = std::max(lvl, *w.max_t_level);
    return lvl;
}

// Attaches a status to a computed defect; on failure optionally searches
// for an exactness certificate over a window enlarged by one pq letter and
// one hbar step.
CheckReport finish_report(std::string label, const Series& H, Series defect,
                          const TruncationWindow& w, CertificateSearch certs) {
    CheckReport rep;
    rep.label = std::move(label);
    rep.window = w;
    rep.defect = std::move(defect);
    if (rep.defect.is_zero()) {
        rep.status = rep.defect.clipped() ? CheckStatus::HoldsWithinWindow
                                          : CheckStatus::HoldsExactly;
        return rep;
    }
    rep.status = CheckStatus::Fails;
    if (certs.enabled) {
        TruncationWindow dst = w;
        dst.max_t_level = certificate_t_level(H, rep.defect, w);
        TruncationWindow src = dst;
        src.max_pq_letters += 1;
        src.hbar_min -= 1;
        auto cert = is_exact(rep.defect, H, src, dst);
        if (cert) {
            rep.status = CheckStatus::HoldsInHomology;
            rep.certificate = cert->preimage;
        }
    }
    return rep;
}

Series quadratic_form_term(SignaturePtr sig, const GeometryData& geo,
                           const TruncationWindow& w, int target_form) {
    Series out(sig, w);
    const int nforms = static_cast<int>(sig->forms().size());
    std::vector<int32_t> zeros(sig->h2_basis().size(), 0);
    for (int a = 0; a < nforms; ++a) {
        for (int b = 0; b < nforms; ++b) {
            Rational eta = geo.triple(a, b, target_form);
            if (eta == 0) continue;
            out.add_word_term(eta, 0, zeros,
                              {Letter{GenKind::T, a, 0}, Letter{GenKind::T, b, 0}},
                              ProductKind::Weyl);
        }
    }
    out.clip_to_window();
    return out;
}

// sum_g d_g q_g p_g as a plain monomial sum. Its bracket action is the
// kappa-weighted degree operator: [f, q_g p_g] = kappa_g hbar (p dp - q dq) f,
// uniformly in the parity of the orbit. build_delta's normal form of p_g q_g
// flips the sign of the word part for odd orbits, which would flip the
// bracket term of the divisor equation there; the central shift never
// matters in brackets.
Series divisor_charge(SignaturePtr sig, const GeometryData& geo, const TruncationWindow& w) {
    Series out(sig, w);
    std::vector<int32_t> zeros(sig->h2_basis().size(), 0);
    for (std::size_t g = 0; g < sig->orbits().size(); ++g) {
        const Rational& d = geo.d(static_cast<int>(g));
        if (d == 0) continue;
        out.add_word_term(d, 0, zeros,
                          {Letter{GenKind::Q, static_cast<int>(g), 0},
                           Letter{GenKind::P, static_cast<int>(g), 0}},
                          ProductKind::Weyl);
    }
    out.clip_to_window();
    return out;
}

} // namespace

Series FirstOrderOp::apply(const Series& f) const {
    Series out(f.signature(), f.window());
    for (const FirstOrderTerm& t : terms) {
        Series d = partial_derivative(f, t.diff, Side::Left);
        if (t.mul) d = times_generator(d, *t.mul, Side::Left, ProductKind::Weyl);
        out = out + d.scaled(t.coeff);
    }
    return out;
}

bool FirstOrderOp::odd(const AlgebraSignature& sig) const {
    bool first = true;
    bool parity = false;
    for (const FirstOrderTerm& t : terms) {
        bool p = is_odd(sig, t.diff);
        if (t.mul) p = p != is_odd(sig, *t.mul);
        if (first) {
            parity = p;
            first = false;
        } else if (p != parity) {
            throw NonHomogeneous();
        }
    }
    return parity;
}

FirstOrderOp divisor_operator(const AlgebraSignature& sig, const GeometryData& geo,
                              int max_level) {
    if (!sig.has_divisor_form()) throw NoDivisorForm();
    FirstOrderOp op;
    for (std::size_t i = 0; i < sig.h2_basis().size(); ++i) {
        const Rational& a = sig.h2_basis()[i].theta2_pairing;
        if (a == 0) continue;
        op.terms.push_back({Generator::z(static_cast<int>(i)),
                            Generator::z(static_cast<int>(i)), a});
    }
    const int div = sig.divisor_form();
    const int nforms = static_cast<int>(sig.forms().size());
    for (int alpha = 0; alpha < nforms; ++alpha) {
        for (const auto& [beta, c] : geo.cup(div, alpha)) {
            for (int k = 0; k + 1 <= max_level; ++k)
                op.terms.push_back({Generator::t(alpha, k + 1), Generator::t(beta, k), c});
        }
    }
    return op;
}

FirstOrderOp string_shift_operator(const AlgebraSignature& sig, int max_level) {
    FirstOrderOp op;
    const int nforms = static_cast<int>(sig.forms().size());
    for (int alpha = 0; alpha < nforms; ++alpha)
        for (int k = 0; k + 1 <= max_level; ++k)
            op.terms.push_back({Generator::t(alpha, k + 1), Generator::t(alpha, k), Rational(1)});
    return op;
}

CheckReport check_master(const Series& H, const TruncationWindow& w) {
    const AlgebraSignature& sig = *H.signature();
    for (const auto& [key, c] : H.terms())
        if (!monomial_odd(sig, key)) throw EvenSummand();
    Series defect = truncate(weyl_bracket(H, H), w);
    return finish_report("master", H, std::move(defect), w, {});
}

std::pair<CheckReport, CheckReport>
check_descendant_commutation(const Series& H, int form_a, int level_a, int form_b, int level_b,
                             const TruncationWindow& w) {
    require_master(H, w);
    const AlgebraSignature& sig = *H.signature();
    Series Ha = partial_derivative(H, Generator::t(form_a, level_a), Side::Left);
    Series Hb = partial_derivative(H, Generator::t(form_b, level_b), Side::Left);
    Series d2 = partial_derivative(Hb, Generator::t(form_a, level_a), Side::Left);

    Series defect1 = truncate(weyl_bracket(H, Ha), w);
    CheckReport r1 = finish_report("commute.first", H, std::move(defect1), w, {});

    Series second = weyl_bracket(Ha, Hb);
    Series corr = weyl_bracket(H, d2);
    bool t_odd = is_odd(sig, Generator::t(form_a, level_a));
    Series defect2 = truncate(t_odd ? second - corr : second + corr, w);
    CheckReport r2 = finish_report("commute.second", H, std::move(defect2), w, {});
    return {std::move(r1), std::move(r2)};
}

Series euler_operator(const Series& f) {
    Series out(f.signature(), f.window());
    if (f.clipped()) out.mark_clipped();
    for (const auto& [key, c] : f.terms()) {
        int letters = static_cast<int>(key.word.size());
        int eigenvalue = -2 * key.hbar - letters;
        if (eigenvalue != 0) out.add_term(key, c * eigenvalue);
    }
    return out;
}

Series build_delta(SignaturePtr sig, const GeometryData& geo, const TruncationWindow& w) {
    Series out(sig, w);
    std::vector<int32_t> zeros(sig->h2_basis().size(), 0);
    for (std::size_t g = 0; g < sig->orbits().size(); ++g) {
        const Rational& d = geo.d(static_cast<int>(g));
        if (d == 0) continue;
        out.add_word_term(d, 0, zeros,
                          {Letter{GenKind::P, static_cast<int>(g), 0},
                           Letter{GenKind::Q, static_cast<int>(g), 0}},
                          ProductKind::Weyl);
    }
    out.clip_to_window();
    return out;
}

CheckReport divisor_defect(const Series& H, const GeometryData& geo, const TruncationWindow& w,
                           CertificateSearch certs) {
    const AlgebraSignature& sig = *H.signature();
    if (!sig.has_divisor_form()) throw NoDivisorForm();
    require_master(H, w);

    Series lhs = partial_derivative(H, Generator::t(sig.divisor_form(), 0), Side::Left);
    FirstOrderOp deg = divisor_operator(sig, geo, max_descendant_level(H));
    Series rhs = deg.apply(H);
    rhs = rhs + quadratic_form_term(H.signature(), geo, H.window(), sig.divisor_form());
    rhs = rhs + weyl_bracket(H, divisor_charge(H.signature(), geo, H.window()));
    Series defect = truncate(lhs - rhs, w);
    return finish_report("divisor", H, std::move(defect), w, certs);
}

CheckReport dilaton_defect(const Series& H, const TruncationWindow& w, CertificateSearch certs) {
    const AlgebraSignature& sig = *H.signature();
    require_master(H, w);
    Series lhs = partial_derivative(H, Generator::t(sig.unit_form(), 1), Side::Left);
    Series defect = truncate(lhs - euler_operator(H), w);
    return finish_report("dilaton", H, std::move(defect), w, certs);
}

CheckReport string_defect(const Series& H, const GeometryData& geo, const TruncationWindow& w,
                          CertificateSearch certs) {
    const AlgebraSignature& sig = *H.signature();
    require_master(H, w);
    Series lhs = partial_derivative(H, Generator::t(sig.unit_form(), 0), Side::Left);
    Series rhs = quadratic_form_term(H.signature(), geo, H.window(), sig.unit_form());
    rhs = rhs + string_shift_operator(sig, max_descendant_level(H)).apply(H);
    Series defect = truncate(lhs - rhs, w);
    return finish_report("string", H, std::move(defect), w, certs);
}

T0Reports check_t0_specializations(const Series& H, const GeometryData& geo,
                                   const TruncationWindow& w, CertificateSearch certs) {
    auto specialize = [&](CheckReport rep, const char* label) {
        Series defect = set_t_zero(rep.defect);
        return finish_report(std::string("t0.") + label, H, std::move(defect), w, certs);
    };
    T0Reports out{
        specialize(divisor_defect(H, geo, w, {}), "divisor"),
        specialize(dilaton_defect(H, w, {}), "dilaton"),
        specialize(string_defect(H, geo, w, {}), "string"),
    };
    return out;
}

} // namespace sftweyl
