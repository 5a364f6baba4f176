#include "sftweyl/series.hpp"

#include <algorithm>

#include "sftweyl/errors.hpp"

namespace sftweyl {

bool MonoKeyLess::operator()(const MonoKey& a, const MonoKey& b) const {
    if (a.hbar != b.hbar) return a.hbar > b.hbar;
    if (a.z != b.z) return a.z < b.z;
    return a.word < b.word;
}

int letter_grade(const AlgebraSignature& sig, const Letter& l) {
    switch (l.kind) {
    case GenKind::T: return sig.grade_t(l.idx, l.level);
    case GenKind::Q: return sig.grade_q(l.idx);
    case GenKind::P: return sig.grade_p(l.idx);
    default: return 0;
    }
}

bool letter_odd(const AlgebraSignature& sig, const Letter& l) {
    if (l.kind == GenKind::T) return sig.form_odd(l.idx);
    return sig.orbit_odd(l.idx);
}

int monomial_grade(const AlgebraSignature& sig, const MonoKey& key) {
    int g = key.hbar * sig.grade_hbar();
    for (std::size_t i = 0; i < key.z.size(); ++i)
        g += key.z[i] * sig.grade_z(static_cast<int>(i));
    for (const Letter& l : key.word)
        g += letter_grade(sig, l);
    return g;
}

bool monomial_odd(const AlgebraSignature& sig, const MonoKey& key) {
    bool odd = false;
    for (const Letter& l : key.word)
        odd ^= letter_odd(sig, l);
    return odd; // hbar and z gradings are always even
}

bool monomial_inside(const MonoKey& key, const TruncationWindow& w) {
    if (key.hbar < w.hbar_min || key.hbar > w.hbar_max) return false;
    int zt = 0;
    for (int32_t e : key.z) zt += e;
    if (zt > w.max_z_total) return false;
    int pq = 0, t = 0;
    for (const Letter& l : key.word) {
        if (l.kind == GenKind::T) {
            ++t;
            if (w.max_t_level && l.level > *w.max_t_level) return false;
        } else {
            ++pq;
        }
    }
    return pq <= w.max_pq_letters && t <= w.max_t_letters;
}

Series Series::constant(SignaturePtr sig, TruncationWindow win, const Rational& c) {
    Series s(std::move(sig), win);
    if (c != 0) {
        MonoKey key;
        key.z.assign(s.sig_->h2_basis().size(), 0);
        s.add_term(key, c);
    }
    return s;
}

Series Series::generator(SignaturePtr sig, TruncationWindow win, const Generator& g) {
    Series s(std::move(sig), win);
    MonoKey key;
    key.z.assign(s.sig_->h2_basis().size(), 0);
    switch (g.kind) {
    case GenKind::HBAR: key.hbar = 1; break;
    case GenKind::Z: key.z[g.idx] = 1; break;
    default: key.word.push_back(Letter{g.kind, g.idx, g.level}); break;
    }
    s.add_term(key, 1);
    return s;
}

void Series::add_term(const MonoKey& key, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void Series::add_word_term(Rational c, int hbar, std::vector<int32_t> zexp,
                           std::vector<Letter> word, ProductKind mode) {
    if (c == 0) return;
    const AlgebraSignature& sig = *sig_;

    struct Item {
        Rational c;
        int hbar;
        std::vector<Letter> w;
    };
    std::vector<Item> todo;
    todo.push_back(Item{std::move(c), hbar, std::move(word)});

    while (!todo.empty()) {
        Item it = std::move(todo.back());
        todo.pop_back();

        bool dead = false;
        bool changed = true;
        while (changed && !dead) {
            changed = false;
            for (std::size_t i = 0; i + 1 < it.w.size(); ++i) {
                const Letter a = it.w[i];
                const Letter b = it.w[i + 1];
                if (a == b) {
                    if (letter_odd(sig, a)) { dead = true; break; }
                    continue;
                }
                if (b < a) {
                    bool sign = letter_odd(sig, a) && letter_odd(sig, b);
                    if (mode == ProductKind::Weyl && a.kind == GenKind::P &&
                        b.kind == GenKind::Q && a.idx == b.idx) {
                        // p_g q_g -> (-1)^{|p||q|} q_g p_g + kappa_g hbar
                        Item shorter;
                        shorter.c = it.c * sig.orbits()[a.idx].kappa;
                        shorter.hbar = it.hbar + 1;
                        shorter.w = it.w;
                        shorter.w.erase(shorter.w.begin() + static_cast<long>(i),
                                        shorter.w.begin() + static_cast<long>(i) + 2);
                        todo.push_back(std::move(shorter));
                    }
                    if (sign) it.c = -it.c;
                    std::swap(it.w[i], it.w[i + 1]);
                    changed = true;
                }
            }
        }
        if (dead || it.c == 0) continue;
        MonoKey key;
        key.hbar = it.hbar;
        key.z = zexp;
        key.word = std::move(it.w);
        add_term(key, it.c);
    }
}

void Series::clip_to_window() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (!monomial_inside(it->first, win_)) {
            clipped_ = true;
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

namespace {

void check_compatible(const Series& a, const Series& b) {
    if (a.signature().get() != b.signature().get()) throw MixedSignature();
    if (!(a.window() == b.window())) throw WindowMismatch();
}

} // namespace

Series Series::operator+(const Series& rhs) const {
    check_compatible(*this, rhs);
    Series out = *this;
    for (const auto& [key, c] : rhs.terms_) out.add_term(key, c);
    out.clipped_ = clipped_ || rhs.clipped_;
    return out;
}

Series Series::operator-(const Series& rhs) const {
    check_compatible(*this, rhs);
    Series out = *this;
    for (const auto& [key, c] : rhs.terms_) out.add_term(key, -c);
    out.clipped_ = clipped_ || rhs.clipped_;
    return out;
}

Series Series::operator-() const {
    Series out(sig_, win_);
    for (const auto& [key, c] : terms_) out.terms_.emplace(key, -c);
    out.clipped_ = clipped_;
    return out;
}

Series Series::scaled(const Rational& c) const {
    Series out(sig_, win_);
    if (c != 0)
        for (const auto& [key, v] : terms_) out.terms_.emplace(key, v * c);
    out.clipped_ = clipped_;
    return out;
}

int grade_of(const Series& f) {
    const AlgebraSignature& sig = *f.signature();
    bool first = true;
    int g = 0;
    for (const auto& [key, c] : f.terms()) {
        int gk = monomial_grade(sig, key);
        if (first) { g = gk; first = false; }
        else if (gk != g) throw NonHomogeneous();
    }
    return g;
}

bool is_homogeneous(const Series& f) {
    const AlgebraSignature& sig = *f.signature();
    bool first = true;
    int g = 0;
    for (const auto& [key, c] : f.terms()) {
        int gk = monomial_grade(sig, key);
        if (first) { g = gk; first = false; }
        else if (gk != g) return false;
    }
    return true;
}

bool parity_of(const Series& f) {
    const AlgebraSignature& sig = *f.signature();
    bool first = true;
    bool p = false;
    for (const auto& [key, c] : f.terms()) {
        bool pk = monomial_odd(sig, key);
        if (first) { p = pk; first = false; }
        else if (pk != p) throw NonHomogeneous();
    }
    return p;
}

bool is_hbar_free(const Series& f) {
    for (const auto& [key, c] : f.terms())
        if (key.hbar != 0) return false;
    return true;
}

namespace {

Series product(const Series& f, const Series& g, ProductKind mode) {
    check_compatible(f, g);
    Series out(f.signature(), f.window());
    for (const auto& [kf, cf] : f.terms()) {
        for (const auto& [kg, cg] : g.terms()) {
            std::vector<int32_t> z = kf.z;
            for (std::size_t i = 0; i < z.size(); ++i) z[i] += kg.z[i];
            std::vector<Letter> w = kf.word;
            w.insert(w.end(), kg.word.begin(), kg.word.end());
            out.add_word_term(cf * cg, kf.hbar + kg.hbar, std::move(z), std::move(w), mode);
        }
    }
    out.clip_to_window();
    if (f.clipped() || g.clipped()) out.mark_clipped();
    return out;
}

// Split by monomial parity: {even part, odd part}.
std::pair<Series, Series> parity_split(const Series& f) {
    const AlgebraSignature& sig = *f.signature();
    Series even(f.signature(), f.window());
    Series odd(f.signature(), f.window());
    for (const auto& [key, c] : f.terms()) {
        if (monomial_odd(sig, key)) odd.add_term(key, c);
        else even.add_term(key, c);
    }
    if (f.clipped()) { even.mark_clipped(); odd.mark_clipped(); }
    return {std::move(even), std::move(odd)};
}

} // namespace

Series star(const Series& f, const Series& g) { return product(f, g, ProductKind::Weyl); }
Series super_star(const Series& f, const Series& g) { return product(f, g, ProductKind::Super); }

Series weyl_bracket(const Series& f, const Series& g) {
    check_compatible(f, g);
    auto [fe, fo] = parity_split(f);
    auto [ge, go] = parity_split(g);
    Series out(f.signature(), f.window());
    const Series* fparts[2] = {&fe, &fo};
    const Series* gparts[2] = {&ge, &go};
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            if (fparts[a]->is_zero() || gparts[b]->is_zero()) continue;
            Series fg = star(*fparts[a], *gparts[b]);
            Series gf = star(*gparts[b], *fparts[a]);
            out = out + (a == 1 && b == 1 ? fg + gf : fg - gf);
        }
    }
    return out;
}

Series poisson_bracket(const Series& f, const Series& g) {
    check_compatible(f, g);
    if (!is_hbar_free(f) || !is_hbar_free(g)) throw HbarPresent();
    auto [fe, fo] = parity_split(f);
    auto [ge, go] = parity_split(g);
    Series out(f.signature(), f.window());
    const Series* fparts[2] = {&fe, &fo};
    const Series* gparts[2] = {&ge, &go};
    const auto& orbits = f.signature()->orbits();
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const Series& fa = *fparts[a];
            const Series& gb = *gparts[b];
            if (fa.is_zero() || gb.is_zero()) continue;
            for (std::size_t i = 0; i < orbits.size(); ++i) {
                Generator p = Generator::p(static_cast<int>(i));
                Generator q = Generator::q(static_cast<int>(i));
                Series t1 = super_star(partial_derivative(fa, p, Side::Right),
                                       partial_derivative(gb, q, Side::Left));
                Series t2 = super_star(partial_derivative(gb, p, Side::Right),
                                       partial_derivative(fa, q, Side::Left));
                Series term = (a == 1 && b == 1) ? t1 + t2 : t1 - t2;
                out = out + term.scaled(orbits[i].kappa);
            }
        }
    }
    return out;
}

Series partial_derivative(const Series& f, const Generator& x, Side side) {
    const AlgebraSignature& sig = *f.signature();
    Series out(f.signature(), f.window());
    if (f.clipped()) out.mark_clipped();

    if (x.kind == GenKind::HBAR) {
        for (const auto& [key, c] : f.terms()) {
            if (key.hbar == 0) continue;
            MonoKey nk = key;
            nk.hbar -= 1;
            if (!monomial_inside(nk, f.window())) { out.mark_clipped(); continue; }
            out.add_term(nk, c * key.hbar);
        }
        return out;
    }
    if (x.kind == GenKind::Z) {
        for (const auto& [key, c] : f.terms()) {
            if (key.z[x.idx] == 0) continue;
            MonoKey nk = key;
            nk.z[x.idx] -= 1;
            out.add_term(nk, c * key.z[x.idx]);
        }
        return out;
    }

    const Letter target{x.kind, x.idx, x.level};
    const bool target_odd = letter_odd(sig, target);
    for (const auto& [key, c] : f.terms()) {
        for (std::size_t i = 0; i < key.word.size(); ++i) {
            if (!(key.word[i] == target)) continue;
            bool neg = false;
            if (target_odd) {
                if (side == Side::Left) {
                    for (std::size_t j = 0; j < i; ++j)
                        if (letter_odd(sig, key.word[j])) neg = !neg;
                } else {
                    for (std::size_t j = i + 1; j < key.word.size(); ++j)
                        if (letter_odd(sig, key.word[j])) neg = !neg;
                }
            }
            MonoKey nk = key;
            nk.word.erase(nk.word.begin() + static_cast<long>(i));
            out.add_term(nk, neg ? -c : c);
        }
    }
    return out;
}

std::vector<std::pair<int, Series>> genus_expansion(const Series& f) {
    std::map<int, Series> parts;
    for (const auto& [key, c] : f.terms()) {
        int g = key.hbar + 1;
        auto it = parts.find(g);
        if (it == parts.end())
            it = parts.emplace(g, Series::zero(f.signature(), f.window())).first;
        MonoKey nk = key;
        nk.hbar = 0;
        it->second.add_term(nk, c);
    }
    std::vector<std::pair<int, Series>> out;
    out.reserve(parts.size());
    for (auto& [g, s] : parts) out.emplace_back(g, std::move(s));
    return out;
}

Series clip(const Series& f, const TruncationWindow& w) {
    Series out(f.signature(), w);
    if (f.clipped()) out.mark_clipped();
    for (const auto& [key, c] : f.terms()) {
        if (monomial_inside(key, w)) out.add_term(key, c);
        else out.mark_clipped();
    }
    return out;
}

Series truncate(const Series& f, const TruncationWindow& w) {
    if (!f.window().contains(w)) throw WindowNotContained();
    return clip(f, w);
}

Series set_t_zero(const Series& f) {
    Series out(f.signature(), f.window());
    if (f.clipped()) out.mark_clipped();
    for (const auto& [key, c] : f.terms()) {
        bool has_t = std::any_of(key.word.begin(), key.word.end(),
                                 [](const Letter& l) { return l.kind == GenKind::T; });
        if (!has_t) out.add_term(key, c);
    }
    return out;
}

int max_descendant_level(const Series& f) {
    int level = 0;
    for (const auto& [key, c] : f.terms())
        for (const Letter& l : key.word)
            if (l.kind == GenKind::T && l.level > level) level = l.level;
    return level;
}

Series times_generator(const Series& f, const Generator& g, Side side, ProductKind mode) {
    Series gen = Series::generator(f.signature(), f.window(), g);
    return side == Side::Left ? product(gen, f, mode) : product(f, gen, mode);
}

Series normal_form(SignaturePtr sig, const TruncationWindow& w, const Rational& coeff,
                   const std::vector<Generator>& word, ProductKind mode) {
    Series out(std::move(sig), w);
    int hbar = 0;
    std::vector<int32_t> z(out.signature()->h2_basis().size(), 0);
    std::vector<Letter> letters;
    for (const Generator& g : word) {
        switch (g.kind) {
        case GenKind::HBAR: hbar += 1; break;
        case GenKind::Z: z[g.idx] += 1; break;
        default: letters.push_back(Letter{g.kind, g.idx, g.level}); break;
        }
    }
    out.add_word_term(coeff, hbar, std::move(z), std::move(letters), mode);
    out.clip_to_window();
    return out;
}

} // namespace sftweyl
