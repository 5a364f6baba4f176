#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sftweyl/errors.hpp"
#include "sftweyl/io.hpp"
#include "sftweyl/selftest.hpp"
#include "testutil.hpp"

using namespace sftweyl;
using testutil::parse_in;

TEST_CASE("signature fixture parses with the right gradings") {
    auto sig = testutil::sig1();
    CHECK(sig->m() == 2);
    REQUIRE(sig->orbits().size() == 2);
    CHECK(sig->orbits()[0].name == "g1");
    CHECK(sig->orbits()[1].kappa == 2);
    CHECK(sig->grade_p(0) == -1);
    CHECK(sig->grade_hbar() == -2);
    CHECK(sig->unit_form() == 0);
    CHECK(sig->divisor_form() == 1);
    CHECK(sig->h2_basis()[0].theta2_pairing == 1);
}

TEST_CASE("signature validation") {
    CHECK_THROWS_AS(parse_signature("m 2\nform a deg=0 unit\nform b deg=0 unit\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_signature("m 2\nform a deg=1 unit\n"), ValidationError);
    CHECK_THROWS_AS(parse_signature("m 2\nform a deg=0 unit\nform b deg=3 divisor\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_signature("m 2\nform a deg=0 unit\norbit x kappa=1 cz=0\n"
                                    "orbit x kappa=1 cz=0\n"),
                    ValidationError);
    CHECK_THROWS_AS(parse_signature("m 2\nform a deg=0 unit\norbit x kappa=0 cz=0\n"),
                    ValidationError);
    // empty orbit list is a valid t/z-only algebra
    auto sig = parse_signature("m 3\nform a deg=0 unit\n");
    CHECK(sig->orbits().empty());
    // bad orbits are rejected at admission
    CHECK_THROWS_AS(
        parse_signature("m 2\nform a deg=0 unit\norbit y kappa=2 cz=2 underlying_cz=1\n"),
        ValidationError);
    // good covers pass
    CHECK(parse_signature("m 2\nform a deg=0 unit\norbit y kappa=2 cz=3 underlying_cz=1\n")
              ->orbits()
              .size() == 1);
}

TEST_CASE("orbit goodness classification") {
    CHECK_FALSE(orbit_is_bad(1, 1));
    CHECK(orbit_is_bad(1, 2));
    CHECK_FALSE(orbit_is_bad(0, 4));
}

TEST_CASE("geometry lines") {
    SignatureFile sf = parse_signature_file(
        "m 2\n"
        "orbit g1 kappa=1 cz=0\n"
        "form th0 deg=0 unit\n"
        "form th1 deg=2 divisor\n"
        "h2 A0 c1=0 pair=1\n"
        "d g1 3/2\n"
        "cup th1 th0 -> th1 1\n");
    CHECK(sf.geometry.d(0) == Rational(3) / 2);
    REQUIRE(sf.geometry.cup(1, 0).size() == 1);
    CHECK(sf.geometry.cup(1, 0)[0].first == 1);

    // cup must respect degrees
    CHECK_THROWS_AS(parse_signature_file("m 2\nform th0 deg=0 unit\nform th1 deg=2 divisor\n"
                                         "cup th1 th1 -> th1 1\n"),
                    ValidationError);
    // triple must hit the top degree 2m-1
    CHECK_THROWS_AS(parse_signature_file("m 2\nform th0 deg=0 unit\nform th1 deg=2 divisor\n"
                                         "triple th0 th0 th1 1\n"),
                    ValidationError);
    // graded-symmetric storage: any permutation resolves
    SignatureFile sf2 = parse_signature_file(
        "m 2\n"
        "form th0 deg=0 unit\n"
        "form thA deg=1\n"
        "form th1 deg=2 divisor\n"
        "triple thA th1 th0 5\n");
    CHECK(sf2.geometry.triple(1, 2, 0) == 5);
    CHECK(sf2.geometry.triple(2, 1, 0) == 5); // odd-even swap keeps the sign
    CHECK(sf2.geometry.triple(0, 1, 2) == 5);
}

TEST_CASE("series parse fixtures") {
    auto sig = testutil::sig1();
    auto w = testutil::wide_window();
    CHECK(print_canonical(parse_in("h^-1 * q[g1]", sig, w)) == "h^-1 * q[g1]");
    CHECK(print_canonical(parse_in("p[g1]*q[g1]", sig, w)) == "h - q[g1]*p[g1]");
    CHECK(print_canonical(parse_in("1/2 * t[th0,1]^2 * z[A0]", sig, w)) ==
          "1/2 * t[th0,1]^2*z[A0]");
    CHECK(print_canonical(Series::zero(sig, w)) == "0");
    CHECK(print_canonical(parse_in("0", sig, w)) == "0");
    CHECK(print_canonical(parse_in("-h^-1 * q[g1]", sig, w)) == "-h^-1 * q[g1]");
    CHECK(print_canonical(parse_in("3 - 2", sig, w)) == "1");
}

TEST_CASE("parse errors carry a position") {
    auto sig = testutil::sig1();
    auto w = testutil::wide_window();
    try {
        parse_in("q[g1] + * 2", sig, w);
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.line == 1);
        CHECK(e.column == 9);
    }
    try {
        parse_in("q[gX]", sig, w);
        FAIL("expected UnknownGenerator");
    } catch (const UnknownGenerator& e) {
        CHECK(e.line == 1);
        CHECK(e.column == 3);
    }
    CHECK_THROWS_AS(parse_in("p[g1]^-1", sig, w), SyntaxError);
    CHECK_THROWS_AS(parse_in("1/0 * q[g1]", sig, w), SyntaxError);
    CHECK_THROWS_AS(parse_in("t[th0,1] q[g1]", sig, w), SyntaxError); // missing operator
}

TEST_CASE("literal monomials outside the window are an error") {
    auto sig = testutil::sig1();
    TruncationWindow w = TruncationWindow::parse("hbar=-1..1,pq=2,t=1,z=1");
    CHECK_THROWS_AS(parse_in("h^-2 * q[g1]", sig, w), WindowOverflow);
    CHECK_THROWS_AS(parse_in("t[th0,1]^2", sig, w), WindowOverflow);
    CHECK_THROWS_AS(parse_in("q[g2]^3", sig, w), WindowOverflow);
    // a consequence of normal-forming may be clipped silently
    Series s = parse_in("p[g1]*q[g1]", sig, TruncationWindow::parse("hbar=0..0,pq=2,t=1,z=1"));
    CHECK(print_canonical(s) == "-q[g1]*p[g1]");
    CHECK(s.clipped());
}

TEST_CASE("window spec parsing") {
    TruncationWindow w = TruncationWindow::parse("hbar=-3..1,pq=5,t=3,z=3");
    CHECK(w.hbar_min == -3);
    CHECK(w.hbar_max == 1);
    CHECK(w.max_pq_letters == 5);
    CHECK(w.str() == "hbar=-3..1,pq=5,t=3,z=3");
    TruncationWindow w2 = TruncationWindow::parse("hbar=0..0,pq=2,t=1,z=0,tlevel=2");
    CHECK(w2.max_t_level == 2);
    CHECK(w2.str() == "hbar=0..0,pq=2,t=1,z=0,tlevel=2");
    CHECK_THROWS_AS(TruncationWindow::parse("hbar=1..0,pq=2,t=1,z=0"), ValidationError);
    CHECK_THROWS_AS(TruncationWindow::parse("pq=2"), ValidationError);
}

TEST_CASE("end-marked generators") {
    auto sig = parse_signature(
        "m 2\n"
        "orbit a kappa=1 cz=0 end=-\n"
        "orbit b kappa=1 cz=0 end=+\n"
        "form th0 deg=0 unit\n");
    auto w = testutil::wide_window();
    CHECK(print_canonical(parse_in("q-[a]*p+[b]", sig, w)) == "q[a]*p[b]");
    CHECK_THROWS_AS(parse_in("q-[b]", sig, w), WrongEnd);
    CHECK_THROWS_AS(parse_in("p+[a]", sig, w), WrongEnd);
    // plain spellings are always accepted
    CHECK(print_canonical(parse_in("q[a]", sig, w)) == "q[a]");
}

TEST_CASE("round trip and idempotence properties") {
    auto sig = testutil::sig1();
    Rng rng(91);
    CHECK(prop_io_round_trip(sig, rng, 120).ok);
}
