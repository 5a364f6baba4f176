#include "sftweyl/dmodule.hpp"

#include <algorithm>
#include <cstdlib>

#include "sftweyl/errors.hpp"

namespace sftweyl {

namespace {

bool end_matches(End have, End want) { return have == End::Both || have == want; }

// Weight of a monomial: letters among p/q/t plus total z degree. Potentials
// need positive weight so that exponentials terminate.
int weight(const MonoKey& key) {
    int w = static_cast<int>(key.word.size());
    for (int32_t e : key.z) w += e;
    return w;
}

// Working window for a chain of D-space products. The hbar range is widened
// so no intermediate partial product can leave it and re-enter the final
// range, and the pq cap gains headroom for the q/p letters the acting
// elements turn into derivatives: a derivative of an exponential term just
// beyond the cap lands back inside.
TruncationWindow widened(const TruncationWindow& w, const std::vector<const Series*>& parts) {
    int maxabs = 0;
    int max_pq = 0;
    for (const Series* s : parts) {
        for (const auto& [key, c] : s->terms()) {
            maxabs = std::max(maxabs, std::abs(key.hbar));
            int pq = 0;
            for (const Letter& l : key.word)
                if (l.kind != GenKind::T) ++pq;
            max_pq = std::max(max_pq, pq);
        }
    }
    int factors = w.max_pq_letters + w.max_t_letters + w.max_z_total + 2 + max_pq;
    TruncationWindow out = w;
    out.max_pq_letters = w.max_pq_letters + max_pq;
    out.hbar_min = w.hbar_min - factors * (maxabs + 1);
    out.hbar_max = w.hbar_max + factors * (maxabs + 1);
    return out;
}

} // namespace

bool is_d_element(const Series& f) {
    const AlgebraSignature& sig = *f.signature();
    for (const auto& [key, c] : f.terms()) {
        for (const Letter& l : key.word) {
            if (l.kind == GenKind::P && !end_matches(sig.orbits()[l.idx].end, End::Plus))
                return false;
            if (l.kind == GenKind::Q && !end_matches(sig.orbits()[l.idx].end, End::Minus))
                return false;
        }
    }
    return true;
}

void require_d_element(const Series& f) {
    if (!is_d_element(f))
        throw NotDSpace("p letters must be positive-end, q letters negative-end");
}

bool is_w_end(const Series& f, End end) {
    const AlgebraSignature& sig = *f.signature();
    for (const auto& [key, c] : f.terms())
        for (const Letter& l : key.word)
            if (l.kind != GenKind::T && !end_matches(sig.orbits()[l.idx].end, end))
                return false;
    return true;
}

void require_w_end(const Series& f, End end) {
    if (!is_w_end(f, end))
        throw NotDSpace(end == End::Minus ? "element does not live in the negative-end algebra"
                                          : "element does not live in the positive-end algebra");
}

Series act_left(const Series& f, const Series& g) {
    require_w_end(f, End::Minus);
    require_d_element(g);
    const AlgebraSignature& sig = *f.signature();
    TruncationWindow work = widened(g.window(), {&f, &g});
    Series gw = clip(g, work);
    Series out(f.signature(), work);

    for (const auto& [key, coeff] : f.terms()) {
        Series acc = gw;
        // leftmost letter acts outermost: apply right-to-left
        for (auto it = key.word.rbegin(); it != key.word.rend(); ++it) {
            const Letter& l = *it;
            if (l.kind == GenKind::P) {
                acc = partial_derivative(acc, Generator::q(l.idx), Side::Left);
                acc = times_generator(acc, Generator::hbar(), Side::Left, ProductKind::Super);
                acc = acc.scaled(sig.orbits()[l.idx].kappa);
            } else {
                Generator gen = l.kind == GenKind::Q ? Generator::q(l.idx)
                                                     : Generator::t(l.idx, l.level);
                acc = times_generator(acc, gen, Side::Left, ProductKind::Super);
            }
            if (acc.is_zero()) break;
        }
        // central hbar and z exponents of the acting monomial
        Series scalar(f.signature(), work);
        MonoKey central;
        central.hbar = key.hbar;
        central.z = key.z;
        scalar.add_term(central, coeff);
        out = out + super_star(scalar, acc);
    }
    Series res = clip(out, g.window());
    require_d_element(res);
    return res;
}

Series act_right(const Series& g, const Series& f) {
    require_w_end(f, End::Plus);
    require_d_element(g);
    const AlgebraSignature& sig = *f.signature();
    TruncationWindow work = widened(g.window(), {&f, &g});
    Series gw = clip(g, work);
    Series out(f.signature(), work);

    for (const auto& [key, coeff] : f.terms()) {
        Series acc = gw;
        // the word is consumed from the left: ((g x1) x2) ...
        for (const Letter& l : key.word) {
            if (l.kind == GenKind::Q) {
                acc = partial_derivative(acc, Generator::p(l.idx), Side::Right);
                acc = times_generator(acc, Generator::hbar(), Side::Right, ProductKind::Super);
                acc = acc.scaled(sig.orbits()[l.idx].kappa);
            } else {
                Generator gen = l.kind == GenKind::P ? Generator::p(l.idx)
                                                     : Generator::t(l.idx, l.level);
                acc = times_generator(acc, gen, Side::Right, ProductKind::Super);
            }
            if (acc.is_zero()) break;
        }
        Series scalar(f.signature(), work);
        MonoKey central;
        central.hbar = key.hbar;
        central.z = key.z;
        scalar.add_term(central, coeff);
        out = out + super_star(acc, scalar);
    }
    Series res = clip(out, g.window());
    require_d_element(res);
    return res;
}

Series make_potential(const Series& F) {
    require_d_element(F);
    const AlgebraSignature& sig = *F.signature();
    for (const auto& [key, c] : F.terms()) {
        if (weight(key) == 0) throw ZeroWeightMonomial();
        if (monomial_odd(sig, key))
            throw ValidationError("potential has a summand of odd parity");
    }
    return F;
}

Series exp_series(const Series& F, const TruncationWindow& w) {
    require_d_element(F);
    for (const auto& [key, c] : F.terms())
        if (weight(key) == 0) throw ZeroWeightMonomial();

    TruncationWindow work = widened(w, {&F});
    Series Fw = clip(F, work);
    Series sum = Series::constant(F.signature(), work, 1);
    Series term = Series::constant(F.signature(), work, 1);
    // every factor has weight >= 1, so powers die once k exceeds the total
    // weight the working window can hold
    int kmax = work.max_pq_letters + work.max_t_letters + work.max_z_total;
    for (int k = 1; k <= kmax; ++k) {
        term = super_star(term, Fw).scaled(Rational(1, k));
        if (term.is_zero()) break;
        sum = sum + term;
    }
    return clip(sum, w);
}

CheckReport check_fundamental(const Series& F, const Series& Hp, const Series& Hm,
                              const TruncationWindow& w) {
    require_w_end(Hp, End::Plus);
    require_w_end(Hm, End::Minus);
    if (!check_master(Hp, w).holds() || !check_master(Hm, w).holds()) throw MasterFails();

    TruncationWindow work = widened(w, {&F, &Hp, &Hm});
    Series eF = clip(exp_series(F, work), work);
    Series defect = act_right(eF, clip(Hp, work)) - act_left(clip(Hm, work), eF);
    CheckReport rep;
    rep.label = "fundamental";
    rep.window = w;
    rep.defect = clip(defect, w);
    rep.status = rep.defect.is_zero()
                     ? (rep.defect.clipped() ? CheckStatus::HoldsWithinWindow
                                             : CheckStatus::HoldsExactly)
                     : CheckStatus::Fails;
    return rep;
}

Series df_operator(const Series& g, const Series& F, const Series& Hp, const Series& Hm,
                   const TruncationWindow& w) {
    require_d_element(g);
    TruncationWindow work = widened(w, {&g, &F, &Hp, &Hm});
    Series eF = exp_series(clip(F, work), work);
    Series emF = exp_series(clip(-F, work), work);
    Series gw = clip(g, work);
    Series Hpw = clip(Hp, work);
    Series Hmw = clip(Hm, work);

    Series out(g.signature(), work);
    // decompose g by parity for the (-1)^{|g|} factor
    for (int parity = 0; parity < 2; ++parity) {
        Series part(g.signature(), work);
        const AlgebraSignature& sig = *g.signature();
        for (const auto& [key, c] : gw.terms())
            if (monomial_odd(sig, key) == (parity == 1)) part.add_term(key, c);
        if (part.is_zero()) continue;
        Series geF = super_star(part, eF);
        Series term1 = super_star(emF, act_left(Hmw, geF));
        Series term2 = super_star(act_right(geF, Hpw), emF);
        out = out + (parity == 1 ? term1 + term2 : term1 - term2);
    }
    return clip(out, w);
}

Series pushforward(const Series& f, End end, const Series& F, const TruncationWindow& w) {
    if (!is_w_end(f, end))
        throw WrongEnd("pushforward operand does not live in the requested end's algebra");
    TruncationWindow work = widened(w, {&f, &F});
    Series eF = exp_series(clip(F, work), work);
    Series emF = exp_series(clip(-F, work), work);
    Series out = end == End::Minus
                     ? super_star(emF, act_left(clip(f, work), eF))
                     : super_star(act_right(eF, clip(f, work)), emF);
    return clip(out, w);
}

CheckReport check_chain_map(const Series& F, const Series& Hp, const Series& Hm,
                            const std::vector<std::pair<Series, End>>& probes,
                            const TruncationWindow& w) {
    if (!check_fundamental(F, Hp, Hm, w).holds()) throw FundamentalFails();
    CheckReport rep;
    rep.label = "chainmap";
    rep.window = w;
    rep.defect = Series::zero(F.signature(), w);
    rep.status = CheckStatus::HoldsExactly;
    bool clipped = false;
    for (const auto& [probe, end] : probes) {
        const Series& Hend = end == End::Minus ? Hm : Hp;
        TruncationWindow work = join_window(w, join_window(probe.window(), Hend.window()));
        Series Df = clip(weyl_bracket(clip(Hend, work), clip(probe, work)), w);
        Series lhs = pushforward(Df, end, F, w);
        Series rhs = df_operator(pushforward(clip(probe, w), end, F, w), F, Hp, Hm, w);
        Series defect = clip(lhs - rhs, w);
        clipped = clipped || defect.clipped();
        if (!defect.is_zero()) {
            rep.status = CheckStatus::Fails;
            rep.defect = std::move(defect);
            return rep;
        }
    }
    rep.status = clipped ? CheckStatus::HoldsWithinWindow : CheckStatus::HoldsExactly;
    return rep;
}

CheckReport check_covariance(const Series& F, const Series& Hp, const Series& Hm,
                             const FirstOrderOp& op, const TruncationWindow& w) {
    if (!check_fundamental(F, Hp, Hm, w).holds()) throw FundamentalFails();
    TruncationWindow work = widened(w, {&F, &Hp, &Hm});
    Series lhs = pushforward(clip(op.apply(clip(Hp, work)), w), End::Plus, F, w) -
                 pushforward(clip(op.apply(clip(Hm, work)), w), End::Minus, F, w);
    Series DF = clip(op.apply(clip(F, work)), w);
    Series rhs = df_operator(DF, F, Hp, Hm, w);
    bool op_odd = op.odd(*F.signature());
    Series defect = clip(op_odd ? lhs + rhs : lhs - rhs, w);

    CheckReport rep;
    rep.label = "covariance";
    rep.window = w;
    rep.defect = std::move(defect);
    rep.status = rep.defect.is_zero()
                     ? (rep.defect.clipped() ? CheckStatus::HoldsWithinWindow
                                             : CheckStatus::HoldsExactly)
                     : CheckStatus::Fails;
    return rep;
}

CheckReport check_covariance(const Series& F, const Series& Hp, const Series& Hm,
                             int form, int level, const TruncationWindow& w) {
    FirstOrderOp op;
    op.terms.push_back({std::nullopt, Generator::t(form, level), Rational(1)});
    return check_covariance(F, Hp, Hm, op, w);
}

Series trivial_potential(SignaturePtr sig, const TruncationWindow& w) {
    Series F(sig, w);
    std::vector<int32_t> zeros(sig->h2_basis().size(), 0);
    for (std::size_t g = 0; g < sig->orbits().size(); ++g) {
        const OrbitInfo& o = sig->orbits()[g];
        if (o.end != End::Both)
            throw ValidationError("trivial potential needs a cylindrical signature");
        F.add_word_term(Rational(1, o.kappa), -1, zeros,
                        {Letter{GenKind::Q, static_cast<int32_t>(g), 0},
                         Letter{GenKind::P, static_cast<int32_t>(g), 0}},
                        ProductKind::Super);
    }
    F.clip_to_window();

    // Self-test: the fundamental identity must hold for every single-letter
    // Hamiltonian on this cylinder. The defect is computed directly since
    // single letters of even orbits do not meet check_master's parity
    // precondition.
    for (std::size_t g = 0; g < sig->orbits().size(); ++g) {
        for (GenKind kind : {GenKind::Q, GenKind::P}) {
            Series H(sig, w);
            H.add_word_term(1, -1, zeros, {Letter{kind, static_cast<int32_t>(g), 0}},
                            ProductKind::Super);
            H.clip_to_window();
            TruncationWindow work = widened(w, {&F, &H});
            Series eF = exp_series(clip(F, work), work);
            Series defect = act_right(eF, clip(H, work)) - act_left(clip(H, work), eF);
            if (!clip(defect, w).is_zero())
                throw SelfTestFailed("fundamental identity fails for orbit '" +
                                     sig->orbits()[g].name + "'");
        }
    }
    return F;
}

} // namespace sftweyl
