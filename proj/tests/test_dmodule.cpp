#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sftweyl/dmodule.hpp"
#include "sftweyl/errors.hpp"
#include "sftweyl/io.hpp"
#include "sftweyl/selftest.hpp"
#include "testutil.hpp"

using namespace sftweyl;
using testutil::parse_in;

TEST_CASE("left action fixtures") {
    auto sig = testutil::sig_g1();
    auto w = testutil::wide_window();
    Series one = Series::constant(sig, w, 1);
    CHECK(print_canonical(act_left(parse_in("q[g1]", sig, w), one)) == "q[g1]");
    CHECK(act_left(parse_in("p[g1]", sig, w), one).is_zero());
    CHECK(print_canonical(act_left(parse_in("p[g1]", sig, w),
                                   parse_in("q-[g1]*p+[g1]", sig, w))) == "h * p[g1]");
}

TEST_CASE("right action fixtures") {
    auto sig = testutil::sig_g1();
    auto w = testutil::wide_window();
    Series one = Series::constant(sig, w, 1);
    CHECK(print_canonical(act_right(one, parse_in("p[g1]", sig, w))) == "p[g1]");
    CHECK(act_right(one, parse_in("q[g1]", sig, w)).is_zero());
    CHECK(print_canonical(act_right(parse_in("q-[g1]*p+[g1]", sig, w),
                                    parse_in("q[g1]", sig, w))) == "h * q[g1]");
}

TEST_CASE("the action respects multiplicities") {
    auto sig = testutil::sig_g2(); // kappa = 2
    auto w = testutil::wide_window();
    Series one = Series::constant(sig, w, 1);
    CHECK(print_canonical(act_left(parse_in("p[g2]", sig, w),
                                   parse_in("q[g2]", sig, w))) == "2 * h");
    CHECK(print_canonical(act_right(parse_in("p[g2]", sig, w),
                                    parse_in("q[g2]", sig, w))) == "2 * h");
    (void)one;
}

TEST_CASE("D-space membership") {
    auto sig = parse_signature(
        "m 2\n"
        "orbit a kappa=1 cz=0 end=-\n"
        "orbit b kappa=1 cz=0 end=+\n"
        "form th0 deg=0 unit\n");
    auto w = testutil::wide_window();
    CHECK(is_d_element(parse_in("q[a]*p[b]", sig, w)));
    CHECK_FALSE(is_d_element(parse_in("q[b]", sig, w)));
    CHECK_FALSE(is_d_element(parse_in("p[a]", sig, w)));
    CHECK_THROWS_AS(act_left(parse_in("q[b]", sig, w), Series::constant(sig, w, 1)), NotDSpace);
    CHECK_THROWS_AS(pushforward(parse_in("q[b]", sig, w), End::Minus,
                                Series::zero(sig, w), w),
                    WrongEnd);
}

TEST_CASE("exponentials") {
    auto sig1 = testutil::sig_g1();
    auto w = testutil::wide_window();
    CHECK(print_canonical(exp_series(Series::zero(sig1, w), w)) == "1");
    // odd letters square to zero
    Series F = parse_in("h^-1 * q-[g1]*p+[g1]", sig1, w);
    CHECK(print_canonical(exp_series(F, w)) == "1 + h^-1 * q[g1]*p[g1]");

    // even case keeps higher powers until the pq cap; potential text is
    // parsed in the cobordism space where p+ and q- commute
    auto sig2 = testutil::sig_g2();
    TruncationWindow w4 = TruncationWindow::parse("hbar=-4..1,pq=4,t=0,z=0");
    Series F2 = parse_series("1/2 * h^-1 * p+[g2]*q-[g2]", sig2, w4, ProductKind::Super);
    CHECK(print_canonical(exp_series(F2, w4)) ==
          "1 + 1/2 * h^-1 * q[g2]*p[g2] + 1/8 * h^-2 * q[g2]^2*p[g2]^2");

    CHECK_THROWS_AS(exp_series(Series::constant(sig1, w, 1), w), ZeroWeightMonomial);
    CHECK_THROWS_AS(make_potential(parse_in("q[g1]", sig1, w)), ValidationError); // odd parity
}

TEST_CASE("fundamental identity on the trivial cylinder") {
    auto sig = testutil::sig_g1();
    auto w = testutil::default_window();
    Series F = trivial_potential(sig, w);
    CHECK(print_canonical(F) == "h^-1 * q[g1]*p[g1]");
    Series H = parse_in("h^-1 * q[g1]", sig, w);
    CHECK(check_fundamental(F, H, H, w).holds());

    // the zero potential fails with the documented defect
    CheckReport bad = check_fundamental(Series::zero(sig, w), H, H, w);
    CHECK(bad.status == CheckStatus::Fails);
    CHECK(print_canonical(bad.defect) == "-h^-1 * q[g1]");

    // zero Hamiltonians hold with any potential
    CHECK(check_fundamental(F, Series::zero(sig, w), Series::zero(sig, w), w).status ==
          CheckStatus::HoldsExactly);
}

TEST_CASE("trivial potential coefficients and self-test") {
    auto sig2 = testutil::sig_g2();
    auto w = testutil::default_window();
    CHECK(print_canonical(trivial_potential(sig2, w)) == "1/2 * h^-1 * q[g2]*p[g2]");

    // also on a window with no t/z room, where the exponential cutoff is
    // driven by the pq headroom alone
    TruncationWindow bare = TruncationWindow::parse("hbar=-4..1,pq=5,t=0,z=0");
    CHECK(print_canonical(trivial_potential(sig2, bare)) == "1/2 * h^-1 * q[g2]*p[g2]");

    auto sig1 = testutil::sig1();
    CHECK(print_canonical(trivial_potential(sig1, w)) ==
          "h^-1 * q[g1]*p[g1] + 1/2 * h^-1 * q[g2]*p[g2]");

    // no orbits: the potential is zero
    auto sig0 = parse_signature("m 2\nform th0 deg=0 unit\n");
    CHECK(trivial_potential(sig0, w).is_zero());
}

TEST_CASE("dF operator") {
    auto sig = testutil::sig_g1();
    auto w = testutil::default_window();
    Series F = trivial_potential(sig, w);
    Series H = parse_in("h^-1 * q[g1]", sig, w);
    // g = 1 reproduces the fundamental defect, zero when it holds
    CHECK(df_operator(Series::constant(sig, w, 1), F, H, H, w).is_zero());
    CHECK(df_operator(parse_in("q-[g1]", sig, w), F, H, H, w).is_zero());
    // zero Hamiltonians give the zero operator
    CHECK(df_operator(parse_in("q-[g1]", sig, w), F, Series::zero(sig, w),
                      Series::zero(sig, w), w)
              .is_zero());
}

TEST_CASE("pushforward fixtures") {
    auto sig = testutil::sig_g1();
    auto w = testutil::default_window();
    Series zero = Series::zero(sig, w);
    CHECK(print_canonical(pushforward(parse_in("q[g1]", sig, w), End::Minus, zero, w)) ==
          "q[g1]");
    CHECK(pushforward(parse_in("p[g1]", sig, w), End::Minus, zero, w).is_zero());

    Series F = trivial_potential(sig, w);
    CHECK(print_canonical(pushforward(parse_in("p[g1]", sig, w), End::Minus, F, w)) ==
          "p[g1]");
}

TEST_CASE("chain map on the trivial cylinder") {
    auto sig = testutil::sig_g1();
    auto w = testutil::default_window();
    Series F = trivial_potential(sig, w);
    Series H = parse_in("h^-1 * q[g1]", sig, w);
    std::vector<std::pair<Series, End>> probes = {
        {parse_in("p[g1]", sig, w), End::Minus},
        {parse_in("q[g1]", sig, w), End::Minus},
        {parse_in("q[g1]*p[g1]", sig, w), End::Minus},
        {parse_in("p[g1]", sig, w), End::Plus},
        {parse_in("q[g1]*p[g1]", sig, w), End::Plus},
    };
    CHECK(check_chain_map(F, H, H, probes, w).holds());

    // the zero probe holds for any data
    CHECK(check_chain_map(F, H, H, {{Series::zero(sig, w), End::Minus}}, w).status ==
          CheckStatus::HoldsExactly);
    CHECK(check_chain_map(F, Series::zero(sig, w), Series::zero(sig, w),
                          {{Series::zero(sig, w), End::Minus}}, w)
              .status == CheckStatus::HoldsExactly);

    CHECK_THROWS_AS(check_chain_map(Series::zero(sig, w), H, H, probes, w), FundamentalFails);
}

TEST_CASE("covariance, t-independent") {
    auto sig = testutil::sig_g1();
    auto w = testutil::default_window();
    Series F = trivial_potential(sig, w);
    Series H = parse_in("h^-1 * q[g1]", sig, w);
    CheckReport rep = check_covariance(F, H, H, 0, 1, w);
    CHECK(rep.holds());
    // the z operator on z-independent data is zero on both sides
    FirstOrderOp zop;
    zop.terms.push_back({Generator::z(0), Generator::z(0), Rational(1)});
    CHECK(check_covariance(F, H, H, zop, w).holds());
}

TEST_CASE("covariance with a t-scaled end") {
    // H- carries the descendant direction, H+ does not; the consistent
    // potential is the trivial one scaled by (1 + t) in the same direction.
    auto sig = testutil::sig_g1();
    auto w = testutil::default_window();
    Series Hm = parse_in("h^-1 * q[g1] + h^-1 * t[th0,1]*q[g1]", sig, w);
    Series Hp = parse_in("h^-1 * q[g1]", sig, w);
    Series F = parse_in("h^-1 * q-[g1]*p+[g1] + h^-1 * t[th0,1]*q-[g1]*p+[g1]", sig, w);
    CHECK(check_fundamental(F, Hp, Hm, w).holds());
    CheckReport rep = check_covariance(F, Hp, Hm, 0, 1, w);
    CHECK(rep.holds());

    std::vector<std::pair<Series, End>> probes = {
        {parse_in("p[g1]", sig, w), End::Minus},
        {parse_in("q[g1]", sig, w), End::Plus},
    };
    CHECK(check_chain_map(F, Hp, Hm, probes, w).holds());
}

TEST_CASE("dF squares to zero on a probe basis when fundamental holds") {
    auto sig = testutil::sig_g1();
    auto w = testutil::default_window();
    Series F = trivial_potential(sig, w);
    Series H = parse_in("h^-1 * q[g1]", sig, w);
    REQUIRE(check_fundamental(F, H, H, w).holds());
    for (const char* probe : {"1", "q[g1]", "p+[g1]", "q-[g1]*p+[g1]"}) {
        Series g = parse_in(probe, sig, w);
        Series once = df_operator(g, F, H, H, w);
        CHECK(df_operator(once, F, H, H, w).is_zero());
    }
}

TEST_CASE("action properties") {
    auto sig = testutil::sig1();
    Rng rng(5);
    CHECK(prop_action_associativity(sig, rng, 100).ok);
    CHECK(prop_action_weyl_relation(sig, rng, 100).ok);
}

TEST_CASE("outputs stay in the D-space") {
    auto sig = testutil::sig_g1();
    auto w = testutil::default_window();
    Series F = trivial_potential(sig, w);
    Series H = parse_in("h^-1 * q[g1]", sig, w);
    CHECK(is_d_element(exp_series(F, w)));
    CHECK(is_d_element(pushforward(parse_in("p[g1]", sig, w), End::Minus, F, w)));
    CHECK(is_d_element(df_operator(parse_in("q-[g1]", sig, w), F, H, H, w)));
}
