#include "sftweyl/selftest.hpp"

#include "sftweyl/dmodule.hpp"
#include "sftweyl/identities.hpp"
#include "sftweyl/io.hpp"

namespace sftweyl {

namespace {

// Generous window: random inputs below stay well inside, so the exact laws
// are tested without truncation effects.
TruncationWindow test_window() {
    TruncationWindow w;
    w.hbar_min = -10;
    w.hbar_max = 10;
    w.max_pq_letters = 14;
    w.max_t_letters = 9;
    w.max_z_total = 6;
    w.max_t_level = 3;
    return w;
}

int rand_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Rational rand_rational(Rng& rng) {
    int num = rand_int(rng, -4, 4);
    if (num == 0) num = 1;
    Rational r(num, rand_int(rng, 1, 3));
    r.canonicalize();
    return r;
}

} // namespace

Series random_monomial(SignaturePtr sig, const TruncationWindow& w, Rng& rng,
                       int max_letters, bool hbar_free) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Series s(sig, w);
        int hbar = hbar_free ? 0 : rand_int(rng, -2, 2);
        std::vector<int32_t> z(sig->h2_basis().size(), 0);
        if (!z.empty() && rand_int(rng, 0, 3) == 0) z[static_cast<std::size_t>(
            rand_int(rng, 0, static_cast<int>(z.size()) - 1))] = rand_int(rng, 1, 2);
        std::vector<Letter> word;
        int len = rand_int(rng, 0, max_letters);
        for (int i = 0; i < len; ++i) {
            int kind = rand_int(rng, 0, 2);
            if (kind == 0 && !sig->forms().empty()) {
                word.push_back(Letter{GenKind::T,
                                      rand_int(rng, 0, static_cast<int>(sig->forms().size()) - 1),
                                      rand_int(rng, 0, 2)});
            } else if (!sig->orbits().empty()) {
                word.push_back(Letter{kind == 1 ? GenKind::Q : GenKind::P,
                                      rand_int(rng, 0, static_cast<int>(sig->orbits().size()) - 1),
                                      0});
            }
        }
        s.add_word_term(rand_rational(rng), hbar, std::move(z), std::move(word),
                        ProductKind::Weyl);
        s.clip_to_window();
        // keep a single canonical monomial; normal-forming a p..q word can
        // add hbar byproducts, so respect the hbar_free request per term
        for (const auto& [key, c] : s.terms()) {
            if (hbar_free && key.hbar != 0) continue;
            Series one(sig, w);
            one.add_term(key, c);
            return one;
        }
    }
    return Series::constant(sig, w, 1);
}

Series random_series(SignaturePtr sig, const TruncationWindow& w, Rng& rng,
                     int max_terms, int max_letters, bool hbar_free) {
    Series s(sig, w);
    int n = rand_int(rng, 1, max_terms);
    for (int i = 0; i < n; ++i) s = s + random_monomial(sig, w, rng, max_letters, hbar_free);
    return s;
}

PropertyResult prop_star_associativity(SignaturePtr sig, Rng& rng, int n) {
    PropertyResult res{"star associativity", true, ""};
    TruncationWindow w = test_window();
    for (int i = 0; i < n; ++i) {
        Series f = random_monomial(sig, w, rng, 3);
        Series g = random_monomial(sig, w, rng, 3);
        Series h = random_monomial(sig, w, rng, 3);
        Series lhs = star(star(f, g), h);
        Series rhs = star(f, star(g, h));
        if (!lhs.equals(rhs)) {
            res.ok = false;
            res.detail = "(f*g)*h != f*(g*h) for f=" + print_canonical(f) +
                         ", g=" + print_canonical(g) + ", h=" + print_canonical(h);
            return res;
        }
    }
    return res;
}

PropertyResult prop_supercommutativity_off_diagonal(SignaturePtr sig) {
    PropertyResult res{"off-diagonal supercommutativity", true, ""};
    TruncationWindow w = test_window();
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < sig->orbits().size(); ++i) {
        gens.push_back(Generator::p(static_cast<int>(i)));
        gens.push_back(Generator::q(static_cast<int>(i)));
    }
    for (std::size_t i = 0; i < sig->forms().size(); ++i)
        for (int lvl = 0; lvl <= 2; ++lvl) gens.push_back(Generator::t(static_cast<int>(i), lvl));
    for (std::size_t i = 0; i < sig->h2_basis().size(); ++i)
        gens.push_back(Generator::z(static_cast<int>(i)));
    gens.push_back(Generator::hbar());

    for (const Generator& x : gens) {
        for (const Generator& y : gens) {
            bool conjugate_pair =
                ((x.kind == GenKind::P && y.kind == GenKind::Q) ||
                 (x.kind == GenKind::Q && y.kind == GenKind::P)) &&
                x.idx == y.idx;
            if (conjugate_pair) continue;
            Series sx = Series::generator(sig, w, x);
            Series sy = Series::generator(sig, w, y);
            Series lhs = star(sx, sy);
            Series rhs = star(sy, sx);
            if (is_odd(*sig, x) && is_odd(*sig, y)) rhs = -rhs;
            if (!lhs.equals(rhs)) {
                res.ok = false;
                res.detail = "x*y != (-1)^{|x||y|} y*x for x=" + print_canonical(sx) +
                             ", y=" + print_canonical(sy);
                return res;
            }
        }
    }
    return res;
}

PropertyResult prop_degree_parity_additivity(SignaturePtr sig, Rng& rng, int n) {
    PropertyResult res{"degree and parity additivity", true, ""};
    TruncationWindow w = test_window();
    for (int i = 0; i < n; ++i) {
        Series f = random_monomial(sig, w, rng, 3);
        Series g = random_monomial(sig, w, rng, 3);
        Series fg = star(f, g);
        if (fg.is_zero()) continue;
        if (grade_of(fg) != grade_of(f) + grade_of(g)) {
            res.ok = false;
            res.detail = "grade(f*g) != grade f + grade g for f=" + print_canonical(f) +
                         ", g=" + print_canonical(g);
            return res;
        }
        Series br = weyl_bracket(f, g);
        if (!br.is_zero() && grade_of(br) != grade_of(f) + grade_of(g)) {
            res.ok = false;
            res.detail = "bracket not homogeneous of degree |f|+|g| for f=" +
                         print_canonical(f) + ", g=" + print_canonical(g);
            return res;
        }
    }
    return res;
}

PropertyResult prop_super_antisymmetry(SignaturePtr sig, Rng& rng, int n) {
    PropertyResult res{"super-antisymmetry", true, ""};
    TruncationWindow w = test_window();
    for (int i = 0; i < n; ++i) {
        Series f = random_monomial(sig, w, rng, 3);
        Series g = random_monomial(sig, w, rng, 3);
        bool sign = parity_of(f) && parity_of(g);
        Series lhs = weyl_bracket(f, g);
        Series rhs = weyl_bracket(g, f);
        rhs = sign ? rhs : -rhs;
        if (!lhs.equals(rhs)) {
            res.ok = false;
            res.detail = "[f,g] != -(-1)^{|f||g|}[g,f] for f=" + print_canonical(f) +
                         ", g=" + print_canonical(g);
            return res;
        }
    }
    return res;
}

PropertyResult prop_super_jacobi(SignaturePtr sig, Rng& rng, int n) {
    PropertyResult res{"super-Jacobi", true, ""};
    TruncationWindow w = test_window();
    for (int i = 0; i < n; ++i) {
        Series f = random_monomial(sig, w, rng, 2);
        Series g = random_monomial(sig, w, rng, 2);
        Series h = random_monomial(sig, w, rng, 2);
        Series lhs = weyl_bracket(f, weyl_bracket(g, h));
        Series rhs = weyl_bracket(weyl_bracket(f, g), h);
        Series third = weyl_bracket(g, weyl_bracket(f, h));
        rhs = (parity_of(f) && parity_of(g)) ? rhs - third : rhs + third;
        if (!lhs.equals(rhs)) {
            res.ok = false;
            res.detail = "Jacobi fails for f=" + print_canonical(f) + ", g=" + print_canonical(g) +
                         ", h=" + print_canonical(h);
            return res;
        }
    }
    return res;
}

PropertyResult prop_hbar_divisibility_and_classical_limit(SignaturePtr sig, Rng& rng, int n) {
    PropertyResult res{"hbar divisibility and classical limit", true, ""};
    TruncationWindow w = test_window();
    for (int i = 0; i < n; ++i) {
        Series f = random_series(sig, w, rng, 2, 4, /*hbar_free=*/true);
        Series g = random_series(sig, w, rng, 2, 4, /*hbar_free=*/true);
        Series br = weyl_bracket(f, g);
        Series hbar_part(sig, w);
        for (const auto& [key, c] : br.terms()) {
            if (key.hbar < 1) {
                res.ok = false;
                res.detail = "[f,g] not divisible by hbar for f=" + print_canonical(f) +
                             ", g=" + print_canonical(g);
                return res;
            }
            if (key.hbar == 1) {
                MonoKey k = key;
                k.hbar = 0;
                hbar_part.add_term(k, c);
            }
        }
        Series pb = poisson_bracket(f, g);
        if (!hbar_part.equals(pb)) {
            res.ok = false;
            res.detail = "hbar^1 part of [f,g] != {f,g} for f=" + print_canonical(f) +
                         ", g=" + print_canonical(g);
            return res;
        }
    }
    return res;
}

PropertyResult prop_derivative_side_compatibility(SignaturePtr sig, Rng& rng, int n) {
    PropertyResult res{"left/right derivative compatibility", true, ""};
    TruncationWindow w = test_window();
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < sig->orbits().size(); ++i) {
        gens.push_back(Generator::p(static_cast<int>(i)));
        gens.push_back(Generator::q(static_cast<int>(i)));
    }
    for (std::size_t i = 0; i < sig->forms().size(); ++i)
        for (int lvl = 0; lvl <= 2; ++lvl) gens.push_back(Generator::t(static_cast<int>(i), lvl));
    for (int i = 0; i < n; ++i) {
        Series f = random_monomial(sig, w, rng, 4);
        const Generator& x = gens[static_cast<std::size_t>(
            rand_int(rng, 0, static_cast<int>(gens.size()) - 1))];
        Series left = partial_derivative(f, x, Side::Left);
        Series right = partial_derivative(f, x, Side::Right);
        bool px = is_odd(*sig, x);
        bool pf = parity_of(f);
        bool flip = px && (pf != px); // |x| odd and |f|-|x| odd
        if (flip) right = -right;
        if (!left.equals(right)) {
            res.ok = false;
            res.detail = "derivative sides disagree for f=" + print_canonical(f);
            return res;
        }
    }
    return res;
}

PropertyResult prop_euler_leibniz(SignaturePtr sig, Rng& rng, int n) {
    PropertyResult res{"Euler operator Leibniz rule", true, ""};
    TruncationWindow w = test_window();
    for (int i = 0; i < n; ++i) {
        Series f = random_monomial(sig, w, rng, 3);
        Series g = random_monomial(sig, w, rng, 3);
        Series lhs = euler_operator(weyl_bracket(f, g));
        Series rhs = weyl_bracket(euler_operator(f), g) + weyl_bracket(f, euler_operator(g));
        if (!lhs.equals(rhs)) {
            res.ok = false;
            res.detail = "Euler Leibniz fails for f=" + print_canonical(f) +
                         ", g=" + print_canonical(g);
            return res;
        }
    }
    return res;
}

PropertyResult prop_io_round_trip(SignaturePtr sig, Rng& rng, int n) {
    PropertyResult res{"print/parse round trip", true, ""};
    TruncationWindow w = test_window();
    for (int i = 0; i < n; ++i) {
        Series f = random_series(sig, w, rng, 5, 4);
        std::string text = print_canonical(f);
        Series back = parse_series(text, sig, w);
        if (!back.equals(f)) {
            res.ok = false;
            res.detail = "round trip failed for " + text;
            return res;
        }
        if (print_canonical(back) != text) {
            res.ok = false;
            res.detail = "print not a fixed point for " + text;
            return res;
        }
    }
    return res;
}

namespace {

// Random D-space probe: q/t letters and z exponents only.
Series random_d_probe(SignaturePtr sig, const TruncationWindow& w, Rng& rng, int max_letters) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Series s(sig, w);
        std::vector<int32_t> z(sig->h2_basis().size(), 0);
        if (!z.empty() && rand_int(rng, 0, 3) == 0)
            z[static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(z.size()) - 1))] = 1;
        std::vector<Letter> word;
        int len = rand_int(rng, 0, max_letters);
        for (int i = 0; i < len; ++i) {
            if (rand_int(rng, 0, 1) == 0 && !sig->forms().empty())
                word.push_back(Letter{GenKind::T,
                                      rand_int(rng, 0, static_cast<int>(sig->forms().size()) - 1),
                                      rand_int(rng, 0, 1)});
            else if (!sig->orbits().empty())
                word.push_back(Letter{GenKind::Q,
                                      rand_int(rng, 0, static_cast<int>(sig->orbits().size()) - 1),
                                      0});
        }
        s.add_word_term(rand_rational(rng), rand_int(rng, -1, 1), std::move(z), std::move(word),
                        ProductKind::Super);
        s.clip_to_window();
        if (!s.is_zero()) return s;
    }
    return Series::constant(sig, w, 1);
}

} // namespace

PropertyResult prop_action_associativity(SignaturePtr sig, Rng& rng, int n) {
    PropertyResult res{"module action associativity", true, ""};
    TruncationWindow w = test_window();
    for (int i = 0; i < n; ++i) {
        Series f = random_monomial(sig, w, rng, 2);
        Series f2 = random_monomial(sig, w, rng, 2);
        Series g = random_d_probe(sig, w, rng, 2);
        Series lhs = act_left(star(f, f2), g);
        Series rhs = act_left(f, act_left(f2, g));
        if (!lhs.equals(rhs)) {
            res.ok = false;
            res.detail = "left action does not represent the star product for f=" +
                         print_canonical(f) + ", f'=" + print_canonical(f2) +
                         ", g=" + print_canonical(g);
            return res;
        }
        Series rlhs = act_right(g, star(f, f2));
        Series rrhs = act_right(act_right(g, f), f2);
        if (!rlhs.equals(rrhs)) {
            res.ok = false;
            res.detail = "right action does not represent the star product for f=" +
                         print_canonical(f) + ", f'=" + print_canonical(f2) +
                         ", g=" + print_canonical(g);
            return res;
        }
    }
    return res;
}

PropertyResult prop_action_weyl_relation(SignaturePtr sig, Rng& rng, int n) {
    PropertyResult res{"action realizes the commutation relation", true, ""};
    TruncationWindow w = test_window();
    for (int i = 0; i < n; ++i) {
        if (sig->orbits().empty()) break;
        int orbit = rand_int(rng, 0, static_cast<int>(sig->orbits().size()) - 1);
        Series g = random_d_probe(sig, w, rng, 2);
        Series p = Series::generator(sig, w, Generator::p(orbit));
        Series qg = times_generator(g, Generator::q(orbit), Side::Left, ProductKind::Super);
        Series lhs = act_left(p, qg);
        Series qpg = times_generator(act_left(p, g), Generator::q(orbit), Side::Left,
                                     ProductKind::Super);
        bool orbit_odd = sig->orbit_odd(orbit);
        Series commutator = orbit_odd ? lhs + qpg : lhs - qpg;
        Series expected =
            times_generator(g, Generator::hbar(), Side::Left, ProductKind::Super)
                .scaled(sig->orbits()[static_cast<std::size_t>(orbit)].kappa);
        if (!commutator.equals(expected)) {
            res.ok = false;
            res.detail = "p,q action relation fails for g=" + print_canonical(g);
            return res;
        }
    }
    return res;
}

std::vector<PropertyResult> run_property_suite(uint64_t seed) {
    static const char* kSignature =
        "m 2\n"
        "orbit g1 kappa=1 cz=0\n"
        "orbit g2 kappa=2 cz=1\n"
        "form th0 deg=0 unit\n"
        "form th1 deg=2 divisor\n"
        "h2 A0 c1=0 pair=1\n";
    SignaturePtr sig = parse_signature(kSignature);
    Rng rng(seed);
    std::vector<PropertyResult> out;
    out.push_back(prop_star_associativity(sig, rng, 200));
    out.push_back(prop_supercommutativity_off_diagonal(sig));
    out.push_back(prop_degree_parity_additivity(sig, rng, 200));
    out.push_back(prop_super_antisymmetry(sig, rng, 200));
    out.push_back(prop_super_jacobi(sig, rng, 200));
    out.push_back(prop_hbar_divisibility_and_classical_limit(sig, rng, 100));
    out.push_back(prop_derivative_side_compatibility(sig, rng, 100));
    out.push_back(prop_euler_leibniz(sig, rng, 100));
    out.push_back(prop_io_round_trip(sig, rng, 100));
    out.push_back(prop_action_associativity(sig, rng, 100));
    out.push_back(prop_action_weyl_relation(sig, rng, 100));
    return out;
}

} // namespace sftweyl
