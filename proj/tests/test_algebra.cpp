#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sftweyl/errors.hpp"
#include "sftweyl/io.hpp"
#include "sftweyl/selftest.hpp"
#include "testutil.hpp"

using namespace sftweyl;
using testutil::parse_in;

namespace {

uint64_t seed() {
    if (const char* env = std::getenv("SFTWEYL_SEED")) return std::strtoull(env, nullptr, 10);
    return 20240801;
}

// Test-only reference product: inserts the letters of the right word one at
// a time from the right, recursively, using only the two-letter relations.
// Structured differently from the library's worklist sorter on purpose.
Series slow_insert(const Series& acc, const Letter& l) {
    const AlgebraSignature& sig = *acc.signature();
    Series out(acc.signature(), acc.window());
    for (const auto& [key, c] : acc.terms()) {
        // insert l at the end, then bubble it left into place
        std::vector<Letter> w = key.word;
        Rational coeff = c;
        int hbar = key.hbar;
        std::size_t pos = w.size();
        w.push_back(l);
        bool dead = false;
        bool emitted_reduction = false;
        while (pos > 0) {
            const Letter& prev = w[pos - 1];
            if (prev == w[pos]) {
                if (letter_odd(sig, prev)) dead = true;
                break;
            }
            if (!(w[pos] < prev)) break;
            if (prev.kind == GenKind::P && w[pos].kind == GenKind::Q && prev.idx == w[pos].idx) {
                // p q = sign q p + kappa hbar: emit the reduced word separately
                std::vector<Letter> reduced = w;
                reduced.erase(reduced.begin() + static_cast<long>(pos) - 1,
                              reduced.begin() + static_cast<long>(pos) + 1);
                Series rest(acc.signature(), acc.window());
                MonoKey k;
                k.hbar = hbar + 1;
                k.z = key.z;
                k.word = reduced;
                rest.add_term(k, coeff * sig.orbits()[prev.idx].kappa);
                out = out + rest;
                emitted_reduction = true;
            }
            if (letter_odd(sig, prev) && letter_odd(sig, w[pos])) coeff = -coeff;
            std::swap(w[pos - 1], w[pos]);
            --pos;
        }
        (void)emitted_reduction;
        if (dead) continue;
        MonoKey k;
        k.hbar = hbar;
        k.z = key.z;
        k.word = w;
        Series self(acc.signature(), acc.window());
        self.add_term(k, coeff);
        out = out + self;
    }
    return out;
}

Series slow_star(const Series& f, const Series& g) {
    Series out(f.signature(), f.window());
    for (const auto& [kg, cg] : g.terms()) {
        Series acc(f.signature(), f.window());
        for (const auto& [kf, cf] : f.terms()) acc.add_term(kf, cf * cg);
        for (const Letter& l : kg.word) acc = slow_insert(acc, l);
        // shift central exponents of the g-monomial
        Series shifted(f.signature(), f.window());
        for (const auto& [k, c] : acc.terms()) {
            MonoKey nk = k;
            nk.hbar += kg.hbar;
            for (std::size_t i = 0; i < nk.z.size(); ++i) nk.z[i] += kg.z[i];
            shifted.add_term(nk, c);
        }
        out = out + shifted;
    }
    return out;
}

} // namespace

TEST_CASE("gradings of the fixture generators") {
    auto sig = testutil::sig1();
    CHECK(grade_of(*sig, Generator::p(0)) == -1);
    CHECK(grade_of(*sig, Generator::q(0)) == -1);
    CHECK(grade_of(*sig, Generator::p(1)) == -2);
    CHECK(grade_of(*sig, Generator::q(1)) == 0);
    CHECK(grade_of(*sig, Generator::t(1, 2)) == -4); // 2(1-2) - deg = -4
    CHECK(grade_of(*sig, Generator::t(0, 1)) == 0);
    CHECK(grade_of(*sig, Generator::hbar()) == -2);
    CHECK(grade_of(*sig, Generator::z(0)) == 0);
}

TEST_CASE("grade_of a series and NonHomogeneous") {
    auto sig = testutil::sig1();
    auto w = testutil::wide_window();
    CHECK(grade_of(parse_in("h^-1 * q[g1]", sig, w)) == 1);
    CHECK_THROWS_AS(grade_of(parse_in("q[g1] + p[g2]", sig, w)), NonHomogeneous);
}

TEST_CASE("normal form rewrites") {
    auto sig = testutil::sig1();
    auto w = testutil::wide_window();
    // odd commutation: p q -> -q p + hbar
    CHECK(print_canonical(parse_in("p[g1]*q[g1]", sig, w)) == "h - q[g1]*p[g1]");
    // odd square vanishes
    CHECK(parse_in("q[g1]*q[g1]", sig, w).is_zero());
    // even commutation with multiplicity two
    CHECK(print_canonical(parse_in("p[g2]*q[g2]", sig, w)) == "2 * h + q[g2]*p[g2]");

    // the word-level entry point
    CHECK(print_canonical(normal_form(sig, w, 1, {Generator::p(0), Generator::q(0)})) ==
          "h - q[g1]*p[g1]");
    CHECK(normal_form(sig, w, 1, {Generator::q(0), Generator::q(0)}).is_zero());
    // super mode only sorts
    CHECK(print_canonical(normal_form(sig, w, 1, {Generator::p(0), Generator::q(0)},
                                      ProductKind::Super)) == "-q[g1]*p[g1]");
}

TEST_CASE("star product fixtures") {
    auto sig = testutil::sig1();
    auto w = testutil::wide_window();
    Series q = parse_in("q[g1]", sig, w);
    Series p = parse_in("p[g1]", sig, w);
    Series qp = parse_in("q[g1]*p[g1]", sig, w);
    CHECK(print_canonical(star(q, p)) == "q[g1]*p[g1]");
    CHECK(print_canonical(star(p, q)) == "h - q[g1]*p[g1]");
    CHECK(print_canonical(star(qp, q)) == "h * q[g1]");
}

TEST_CASE("star agrees with an independent right-insertion multiplier") {
    auto sig = testutil::sig1();
    auto w = testutil::wide_window();
    Rng rng(seed());
    for (int i = 0; i < 200; ++i) {
        Series f = random_series(sig, w, rng, 2, 3);
        Series g = random_series(sig, w, rng, 2, 3);
        CHECK(star(f, g).equals(slow_star(f, g)));
    }
}

TEST_CASE("weyl bracket fixtures") {
    auto sig = testutil::sig1();
    auto w = testutil::wide_window();
    CHECK(print_canonical(weyl_bracket(parse_in("p[g1]", sig, w), parse_in("q[g1]", sig, w))) ==
          "h");
    CHECK(print_canonical(weyl_bracket(parse_in("p[g2]", sig, w), parse_in("q[g2]", sig, w))) ==
          "2 * h");
    CHECK(print_canonical(weyl_bracket(parse_in("q[g1]", sig, w),
                                       parse_in("q[g1]*p[g1]", sig, w))) == "-h * q[g1]");
}

TEST_CASE("poisson bracket fixtures") {
    auto sig = testutil::sig1();
    auto w = testutil::wide_window();
    CHECK(print_canonical(poisson_bracket(parse_in("p[g1]", sig, w),
                                          parse_in("q[g1]", sig, w))) == "1");
    CHECK(poisson_bracket(parse_in("q[g1]", sig, w), parse_in("q[g2]", sig, w)).is_zero());
    CHECK(print_canonical(poisson_bracket(parse_in("p[g2]^2", sig, w),
                                          parse_in("q[g2]", sig, w))) == "4 * p[g2]");
    CHECK_THROWS_AS(poisson_bracket(parse_in("h", sig, w), parse_in("q[g1]", sig, w)),
                    HbarPresent);
}

TEST_CASE("partial derivatives") {
    auto sig = testutil::sig1();
    auto w = testutil::wide_window();
    Series qp = parse_in("q[g1]*p[g1]", sig, w);
    CHECK(print_canonical(partial_derivative(qp, Generator::q(0), Side::Left)) == "p[g1]");
    CHECK(print_canonical(partial_derivative(qp, Generator::p(0), Side::Right)) == "q[g1]");
    CHECK(print_canonical(partial_derivative(parse_in("h^-1 * q[g1]", sig, w), Generator::hbar(),
                                             Side::Left)) == "-h^-2 * q[g1]");
    // derivative of an absent letter is zero
    CHECK(partial_derivative(qp, Generator::t(0, 0), Side::Left).is_zero());
    // odd left derivative past an odd prefix picks up a sign
    CHECK(print_canonical(partial_derivative(qp, Generator::p(0), Side::Left)) == "-q[g1]");
}

TEST_CASE("genus expansion") {
    auto sig = testutil::sig1();
    auto w = testutil::wide_window();
    auto parts = genus_expansion(parse_in("h^-1 * q[g1] + q[g1]*p[g1]", sig, w));
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].first == 0);
    CHECK(print_canonical(parts[0].second) == "q[g1]");
    CHECK(parts[1].first == 1);
    CHECK(print_canonical(parts[1].second) == "q[g1]*p[g1]");

    CHECK(genus_expansion(Series::zero(sig, w)).empty());

    auto parts2 = genus_expansion(parse_in("h^-1 * q[g1] + h^-1 * t[th0,1]*q[g1]", sig, w));
    REQUIRE(parts2.size() == 1);
    CHECK(parts2[0].first == 0);
    CHECK(print_canonical(parts2[0].second) == "t[th0,1]*q[g1] + q[g1]");
}

TEST_CASE("truncate") {
    auto sig = testutil::sig1();
    auto w = testutil::wide_window();
    Series f = parse_in("h^-2 * q[g1] + q[g1]", sig, w);
    TruncationWindow narrow = w;
    narrow.hbar_min = -1;
    Series t = truncate(f, narrow);
    CHECK(print_canonical(t) == "q[g1]");
    CHECK(t.clipped());
    // idempotent / identity on the same window
    CHECK(truncate(f, w).equals(f));
    CHECK_FALSE(truncate(f, w).clipped());

    TruncationWindow t2 = w;
    t2.max_t_letters = 2;
    CHECK(truncate(parse_in("q[g1]*t[th0,1]^3", sig, w), t2).is_zero());

    TruncationWindow not_inside = w;
    not_inside.hbar_max = w.hbar_max + 1;
    CHECK_THROWS_AS(truncate(f, not_inside), WindowNotContained);
}

TEST_CASE("window mismatch and mixed signature are rejected") {
    auto sig = testutil::sig1();
    auto sig2 = testutil::sig1(); // distinct instance
    auto w = testutil::wide_window();
    auto w2 = w;
    w2.max_pq_letters += 1;
    CHECK_THROWS_AS(star(parse_in("q[g1]", sig, w), parse_in("q[g1]", sig, w2)), WindowMismatch);
    CHECK_THROWS_AS(star(parse_in("q[g1]", sig, w), parse_in("q[g1]", sig2, w)), MixedSignature);
}

TEST_CASE("algebra law properties") {
    auto sig = testutil::sig1();
    Rng rng(seed());
    CHECK(prop_star_associativity(sig, rng, 200).ok);
    CHECK(prop_supercommutativity_off_diagonal(sig).ok);
    CHECK(prop_degree_parity_additivity(sig, rng, 200).ok);
    CHECK(prop_super_antisymmetry(sig, rng, 200).ok);
    CHECK(prop_super_jacobi(sig, rng, 200).ok);
    CHECK(prop_hbar_divisibility_and_classical_limit(sig, rng, 100).ok);
    CHECK(prop_derivative_side_compatibility(sig, rng, 100).ok);
}
