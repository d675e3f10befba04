#include <doctest.h>

#include <thread>

#include "oracles.hpp"
#include "tmcf/thue_morse.hpp"

using namespace tmcf;

TEST_CASE("beta values") {
    CHECK(tm::beta(3) == -1);
    CHECK(tm::beta(4) == 1);
    CHECK(tm::beta(5) == 1);
    CHECK(tm::beta(11) == make_rat(-1, 3));
    const Rat expected[] = {-1, 1, 1, 1, -1, 1, -1, 3, make_rat(-1, 3), make_rat(1, 3), 3, -1, 1};
    for (long n = 3; n <= 15; ++n) CHECK(tm::beta(n) == expected[n - 3]);
    CHECK_THROWS_AS(tm::beta(2), Error);
}

TEST_CASE("beta recurrence identities up to 200") {
    for (long n = 3; n <= 200; ++n) CHECK(tm::beta(n) != 0);
    for (long n = 2; 2 * n + 2 <= 200; ++n) {
        CHECK(tm::beta(2 * n + 1) * tm::beta(2 * n) + tm::beta(n + 1) == 0);
        CHECK(tm::beta(2 * n + 2) == 1 + (n % 2 ? -1 : 1) - tm::beta(2 * n + 1));
    }
}

TEST_CASE("printed convergents") {
    const auto c9 = tm::canonical(9);
    CHECK(c9.Phat == Poly::parse("z^8-3*z^6+2*z^4+3*z^2-4"));
    CHECK(c9.Qhat == Poly::linear(1) * Poly::parse("z^8-z^6+z^2+2"));
    const auto c6 = tm::canonical(6);
    CHECK(c6.Qhat == Poly::parse("z^6+z^4"));
    CHECK(c6.Phat == Poly{-1, 1} * Poly::parse("z^4-2"));
    CHECK(tm::canonical(11).Qhat ==
          Poly::parse("z^11+z^10+2/3*z^9+2/3*z^8+4/3*z^7+4/3*z^6+z^5+z^4+2/3*z^3+2/3*z^2+1/3*z+1/3"));
    CHECK(tm::canonical(1).Qhat == Poly{1, 1});
    CHECK(tm::canonical(2).Phat == Poly{-1, 1});
}

TEST_CASE("canonical convergents pass the criterion against an independent series") {
    const std::vector<int> f = oracle::tm_product_coeffs(300);
    for (long n = 1; n <= 40; ++n) {
        const auto c = tm::canonical(n);
        CHECK(c.Phat.is_monic());
        CHECK(c.Qhat.degree() == n);
        CHECK(c.Phat.degree() == n - 1);
        CHECK(oracle::naive_residual_order(c.Phat, c.Qhat, f, 2 * n + 20) >= n + 1);
    }
}

TEST_CASE("closed form agrees with the generic engine") {
    const auto prefix = cf::extract_cf(tm_series(), 60);
    REQUIRE(prefix.pairs.size() == 60);
    for (long n = 1; n <= 60; ++n) {
        const auto e = cf::canonicalize(prefix.pairs[static_cast<std::size_t>(n - 1)]);
        const auto c = tm::canonical(n);
        CHECK_MESSAGE(e.P == c.Phat, n);
        CHECK_MESSAGE(e.Q == c.Qhat, n);
    }
}

TEST_CASE("doubling") {
    auto pair = [](Poly P, Poly Q) { return cf::ConvergentPair::make(std::move(P), std::move(Q)); };
    const auto d1 = tm::double_pair(pair(Poly{1}, Poly{1, 1}));
    CHECK(d1.P == Poly{-1, 1});
    CHECK(d1.Q == Poly{1, 0, 1});
    const auto d2 = tm::double_pair(pair(Poly{-1, 1}, Poly{1, 0, 1}));
    CHECK(d2.P == Poly{-1, 1} * Poly{-1, 0, 1});
    CHECK(d2.Q == Poly::parse("z^4+1"));
    const auto d3 = tm::double_pair(pair(Poly::parse("z^2-2"), Poly::parse("z^3+z^2")));
    CHECK(d3.P == Poly{-1, 1} * Poly::parse("z^4-2"));
    CHECK(d3.Q == Poly::parse("z^6+z^4"));
    for (long n = 2; n <= 20; ++n) {
        const auto d = cf::canonicalize(tm::double_pair(tm::canonical(n).pair()));
        CHECK(d.P == tm::canonical(2 * n).Phat);
        CHECK(d.Q == tm::canonical(2 * n).Qhat);
    }
    try {
        tm::double_pair(pair(Poly{1}, Poly{0, 1}));
        FAIL("expected NotAConvergent");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotAConvergent);
    }
}

TEST_CASE("structure report") {
    const auto r2 = tm::structure_report(2);
    CHECK(r2.q_plus == Poly{0, 1});  // Qhat_3 = (z+1) z^2
    const auto r4 = tm::structure_report(4);
    CHECK(tm::canonical(8).Qhat == Poly::parse("z^8+1"));
    CHECK(r4.monic_quotients.size() == 6);
    const auto r5 = tm::structure_report(5);
    CHECK(r5.q_plus == Poly::parse("z^4-z^3+z+2"));
    CHECK(r5.q_plus.degree() == 4);
    for (long n = 2; n <= 30; ++n) {
        const auto r = tm::structure_report(n);
        for (std::size_t i = 0; i < r.monic_quotients.size(); ++i) {
            const long k = static_cast<long>(i) + 3;
            CHECK(r.monic_quotients[i] == Poly::linear(k % 2 ? 1 : -1));
        }
    }
    CHECK_THROWS_AS(tm::structure_report(1), Error);
}

TEST_CASE("fault injection breaks structure") {
    tm::ClosedForm cf;
    cf.inject_beta_fault(9, cf.beta(9) + 1);
    bool threw = false;
    try {
        tm::structure_report(6, cf);
    } catch (const Error& e) {
        threw = e.code() == Errc::ShapeViolation;
    }
    CHECK(threw);
    // The shared table is untouched.
    CHECK_NOTHROW(tm::structure_report(6));
}

TEST_CASE("concurrent readers see one table") {
    tm::ClosedForm cf;
    std::vector<Rat> seen(8);
    {
        std::vector<std::jthread> ws;
        for (int w = 0; w < 8; ++w) ws.emplace_back([&, w] { seen[static_cast<std::size_t>(w)] = cf.beta(150 + w); });
    }
    for (int w = 0; w < 8; ++w) CHECK(seen[static_cast<std::size_t>(w)] == tm::beta(150 + w));
}
