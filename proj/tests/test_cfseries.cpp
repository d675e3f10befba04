#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tmcf/cfseries.hpp"

using namespace tmcf;
using namespace tmcf::cf;

TEST_CASE("first quotients of f~") {
    const auto one = extract_cf(tm_series(), 1);
    REQUIRE(one.pairs.size() == 1);
    const auto c1 = canonicalize(one.pairs[0]);
    CHECK(c1.P == Poly{1});
    CHECK(c1.Q == Poly{1, 1});

    const auto three = extract_cf(tm_series(), 3);
    REQUIRE(three.pairs.size() == 3);
    CHECK(three.verified_count == 3);
    const auto c3 = canonicalize(three.pairs[2]);
    CHECK(c3.P == Poly::parse("z^2-2"));
    CHECK(c3.Q == Poly::parse("z^3+z^2"));
}

TEST_CASE("ninth pair matches the printed convergent") {
    const auto prefix = extract_cf(tm_series(), 9);
    const auto pairs = pq_recurrence(prefix.quotients);
    REQUIRE(pairs.size() == 9);
    CHECK(pairs[8] == prefix.pairs[8]);
    const auto c9 = canonicalize(pairs[8]);
    CHECK(c9.P.to_string() == "z^8-3*z^6+2*z^4+3*z^2-4");
    CHECK(c9.Q == Poly::linear(1) * Poly::parse("z^8-z^6+z^2+2"));
    CHECK(c9.canonical);
}

TEST_CASE("engine invariants over 60 quotients") {
    const auto prefix = extract_cf(tm_series(), 60);
    REQUIRE(prefix.pairs.size() == 60);
    CHECK(prefix.verified_count == 60);
    const std::vector<int> f = oracle::tm_product_coeffs(400);
    for (std::size_t i = 0; i < prefix.pairs.size(); ++i) {
        const auto n = static_cast<int>(i + 1);
        const auto& pr = prefix.pairs[i];
        CHECK(prefix.quotients[i].degree() == 1);
        CHECK(pr.Q.degree() == n);
        CHECK(pr.P.degree() == n - 1);
        CHECK(oracle::naive_residual_order(pr.P, pr.Q, f, 2 * n + 20) > n);
        if (i + 1 < prefix.pairs.size()) {
            const auto& nx = prefix.pairs[i + 1];
            const Poly cross = nx.P * pr.Q - pr.P * nx.Q;
            CHECK(cross.degree() == 0);
        }
    }
}

TEST_CASE("pq recurrence seeds") {
    const auto a = pq_recurrence(std::vector<Poly>{Poly{0, 1}});
    CHECK(a[0].P == Poly{1});
    CHECK(a[0].Q == Poly{0, 1});
    const auto b = pq_recurrence(std::vector<Poly>{Poly{1, 1}, Poly{-1, 1}});
    CHECK(b[1].Q == Poly{0, 0, 1});
}

TEST_CASE("canonicalize") {
    const auto c = canonicalize(ConvergentPair::make(Poly::parse("-z^2+2"), Poly::parse("-z^3-z^2")));
    CHECK(c.P == Poly::parse("z^2-2"));
    CHECK(c.Q == Poly::parse("z^3+z^2"));
    CHECK(canonicalize(c) == c);
    const auto d = canonicalize(ConvergentPair::make(Poly::parse("2*z-2"), Poly::parse("2*z^2+2")));
    CHECK(d.P == Poly{-1, 1});
    CHECK(d.Q == Poly{1, 0, 1});
    try {
        canonicalize(ConvergentPair::make(Poly{}, Poly{1}));
        FAIL("expected ZeroNumerator");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ZeroNumerator);
    }
}

TEST_CASE("convergent criterion") {
    const Poly P9 = Poly::parse("z^8-3*z^6+2*z^4+3*z^2-4");
    const Poly Q9 = Poly::linear(1) * Poly::parse("z^8-z^6+z^2+2");
    const auto ok = is_convergent(P9, Q9);
    CHECK(ok.convergent);
    REQUIRE(ok.residual_degree.has_value());
    CHECK(*ok.residual_degree == -10);  // Q f~ - P; the difference f~ - P/Q has degree -19
    CHECK(ok.leading == 6);

    const auto bad = is_convergent(Poly{1}, Poly{0, 1});
    CHECK_FALSE(bad.convergent);
    CHECK(*bad.residual_degree == -1);

    CHECK(is_convergent(Poly{-1, 1} * Poly::parse("z^4-2"), Poly::parse("z^6+z^4")).convergent);

    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
    for (int i = 0; i < 30; ++i) {
        Rat s = make_rat(num(rng), den(rng));
        if (s == 0) s = 1;
        CHECK(is_convergent(P9 * s, Q9 * s).convergent);
        CHECK_FALSE(is_convergent(Poly{1} * s, Poly{0, 1} * s).convergent);
    }
}

TEST_CASE("finite expansion of a rational tail") {
    // (z^2 - 2) / (z^3 + z^2): three quotients, then exact termination.
    const Poly P = Poly::parse("z^2-2"), Q = Poly::parse("z^3+z^2");
    const auto tail = LaurentTail::from_rational(P, Q);
    const auto prefix = extract_cf(tail, 10);
    CHECK(prefix.terminated);
    REQUIRE(prefix.quotients.size() == 3);
    const auto last = canonicalize(prefix.pairs.back());
    CHECK(last.P == P);
    CHECK(last.Q == Q);
    CHECK(prefix.verified_count == 3);
}

TEST_CASE("implied betas") {
    const auto prefix = extract_cf(tm_series(), 16);
    const auto b = implied_betas(prefix);
    REQUIRE(b.size() >= 13);
    const Rat expected[] = {-1, 1, 1, 1, -1, 1, -1, 3, make_rat(-1, 3), make_rat(1, 3), 3, -1, 1};
    for (std::size_t i = 0; i < 13; ++i) CHECK(b[i] == expected[i]);
}
