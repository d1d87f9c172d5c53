#include <set>

#include "cyclescope/cycles.hpp"
#include "cyclescope/numth.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace cyclescope;

namespace {

const std::vector<CurveParams> kTable5{
    {37, 43, -5, 6, 123}, {43, 37, 7, 4, 123}, {37, 31, 7, 6, 11}, {31, 37, -5, 4, 11}};

std::vector<std::int64_t> small_primes(std::int64_t limit) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p <= limit; ++p)
        if (oracle::is_prime(p)) out.push_back(p);
    return out;
}

// Ordinary edge q -> q' of a prime-order cycle, in the sense used by the
// shared-discriminant search.
bool ordinary_edge(std::int64_t q, std::int64_t next) {
    const std::int64_t t = q + 1 - next;
    return next != q && oracle::hasse(q, t) && oracle::mod(t, q) != 0;
}

}  // namespace

TEST_SUITE("cycles") {

TEST_CASE("Cycle invariants") {
    const Cycle c(kTable5);
    CHECK(c.length() == 4);
    CHECK(c.trace_sum() == 4);
    CHECK(c.canonical().entries().front() == CurveParams{31, 37, -5, std::nullopt, std::nullopt});
    const Cycle rotated({kTable5[2], kTable5[3], kTable5[0], kTable5[1]});
    CHECK(c.same_cycle(rotated));
    CHECK_FALSE(c == rotated);
    CHECK_THROWS_AS(Cycle({kTable5[0]}), std::invalid_argument);
    CHECK_THROWS_AS(Cycle({kTable5[0], kTable5[2]}), std::invalid_argument);
    CHECK_THROWS_AS(Cycle({{5, 3, 3, {}, {}}, {3, 5, -1, {}, {}}, {5, 3, 3, {}, {}}, {3, 5, -1, {}, {}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Cycle({{9, 3, 7, {}, {}}, {3, 9, -5, {}, {}}}), std::invalid_argument);
}

TEST_CASE("verify_cycle on a valid 4-cycle") {
    const auto r = verify_cycle(kTable5);
    CHECK(r.valid);
    CHECK(r.trace_sum == 4);
    CHECK(r.discriminants() == std::vector<i128>{123, 123, 11, 11});
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(r.entries[i].k_actual == kTable5[i].k_nominal.value());
        CHECK(r.entries[i].k_matches);
        CHECK(r.entries[i].D_matches);
    }
}

TEST_CASE("verify_cycle rejections") {
    auto broken = kTable5;
    broken[1].n = 41;
    broken[1].t = 43 + 1 - 41;
    auto r = verify_cycle(broken);
    CHECK_FALSE(r.valid);
    CHECK_FALSE(r.entries[1].closure);

    r = verify_cycle({{37, 43, -5, 6, 11}, {43, 37, 7, 4, 123}});
    CHECK_FALSE(r.valid);
    CHECK_FALSE(r.entries[0].D_matches);

    r = verify_cycle({{7, 8, 0, {}, {}}, {8, 7, 2, {}, {}}});
    CHECK_FALSE(r.valid);
    CHECK_FALSE(r.entries[0].ordinary);
    CHECK_FALSE(r.entries[1].q_prime);

    r = verify_cycle({{5, 11, -5, {}, {}}, {11, 5, 7, {}, {}}});
    CHECK_FALSE(r.valid);
    CHECK_FALSE(r.entries[0].hasse);

    r = verify_cycle({{5, 3, 3, 6, 11}, {3, 5, -1, 4, 11}});
    CHECK(r.valid);
    CHECK(r.entries[0].k_actual == 2);
    CHECK_FALSE(r.entries[0].k_matches);
}

TEST_CASE("realization attaches curves of the right order") {
    const auto r = verify_cycle(kTable5, true);
    REQUIRE(r.realized);
    for (const auto& e : r.entries) {
        REQUIRE(e.curve);
        CHECK(curve_order(*e.curve) == e.params.n);
    }
    const auto big = verify_cycle({{10007, 10079, -71, {}, {}}, {10079, 10007, 73, {}, {}}}, true);
    CHECK_FALSE(big.realized);
    CHECK_FALSE(big.realize_note.empty());
}

TEST_CASE("two_cycle_from_trace matches exhaustive enumeration; radicands agree") {
    std::int64_t found = 0;
    for (std::int64_t q1 : small_primes(3000)) {
        const std::int64_t reach = 2 * static_cast<std::int64_t>(isqrt(q1)) + 3;
        for (std::int64_t t1 = -reach; t1 <= reach; ++t1) {
            const std::int64_t q2 = q1 + 1 - t1, t2 = 2 - t1;
            const bool expect = oracle::hasse(q1, t1) && q2 != q1 && oracle::is_prime(q2) && oracle::hasse(q2, t2);
            const auto c = two_cycle_from_trace(q1, t1);
            REQUIRE(c.has_value() == expect);
            if (!c) continue;
            ++found;
            REQUIRE(c->trace_sum() == 2);
            const auto& e = c->entries();
            REQUIRE(4 * e[0].q - e[0].t * e[0].t == 4 * e[1].q - e[1].t * e[1].t);
        }
    }
    CHECK(found > 0);
}

TEST_CASE("same_discriminant_check") {
    auto r = same_discriminant_check(Cycle(kTable5));
    CHECK_FALSE(r.all_equal);
    CHECK_FALSE(r.anomaly);
    r = same_discriminant_check(*two_cycle_from_trace(37, -5));
    CHECK(r.all_equal);
    CHECK(r.D == std::vector<i128>{123, 123});
    CHECK(r.unit_condition);
    CHECK_FALSE(r.anomaly);
}

TEST_CASE("shared-discriminant search matches brute force for m <= 3") {
    const std::int64_t limit = 120;
    const auto primes = small_primes(limit);
    std::set<std::string> expect;
    auto disc = [](std::int64_t q, std::int64_t next) {
        const std::int64_t t = q + 1 - next;
        return oracle::squarefree_part(4 * q - t * t);
    };
    auto entry = [](std::int64_t q, std::int64_t next) {
        return CurveParams::from_order(q, next);
    };
    for (std::int64_t a : primes)
        for (std::int64_t b : primes) {
            if (b <= a || !ordinary_edge(a, b) || !ordinary_edge(b, a)) continue;
            if (disc(a, b) == disc(b, a)) expect.insert(Cycle({entry(a, b), entry(b, a)}).to_string());
            for (std::int64_t c : primes) {
                if (c <= a || c == b || !ordinary_edge(b, c) || !ordinary_edge(c, a)) continue;
                if (disc(a, b) == disc(b, c) && disc(b, c) == disc(c, a))
                    expect.insert(Cycle({entry(a, b), entry(b, c), entry(c, a)}).to_string());
            }
        }
    std::set<std::string> got;
    for (const auto& c : search_same_discriminant_cycles(limit, 3)) {
        std::vector<CurveParams> plain;
        for (const auto& e : c.entries()) plain.push_back(CurveParams::from_order(e.q, e.n));
        got.insert(Cycle(plain).to_string());
    }
    CHECK(got == expect);
    CHECK_FALSE(got.empty());
}

TEST_CASE("cofactor cycles") {
    const std::vector<CofactorEntry> pair{{{5, 4, 2, {}, {}}, 2}, {{2, 5, -2, {}, {}}, 1}};
    const auto r = verify_cofactor_cycle(pair);
    CHECK(r.valid);
    CHECK(r.nontrivial);
    CHECK(r.bound == 48);
    CHECK_FALSE(r.bound_anomaly);
    CHECK(CofactorCycle(pair).nontrivial());

    const auto bad = verify_cofactor_cycle({{{5, 4, 2, {}, {}}, 3}, {{2, 5, -2, {}, {}}, 1}});
    CHECK_FALSE(bad.valid);
    CHECK_FALSE(bad.entries[0].closure);
    CHECK_THROWS_AS(CofactorCycle({{{5, 4, 2, {}, {}}, 3}, {{2, 5, -2, {}, {}}, 1}}), std::invalid_argument);
}

TEST_CASE("cofactor search matches brute force for m = 2") {
    const std::int64_t limit = 80;
    const auto primes = small_primes(limit);
    auto orders = [](std::int64_t q, std::int64_t target) {
        std::vector<std::int64_t> hs;
        for (std::int64_t h = 1; h * target <= q + 1 + 2 * 100; ++h) {
            const std::int64_t n = h * target, t = q + 1 - n;
            if (!oracle::hasse(q, t)) continue;
            if (q >= 5 && n == q + 1) continue;
            hs.push_back(h);
        }
        return hs;
    };
    std::set<std::string> expect_all, expect_nontrivial;
    for (std::int64_t a : primes)
        for (std::int64_t b : primes) {
            if (b <= a) continue;
            for (std::int64_t h1 : orders(a, b))
                for (std::int64_t h2 : orders(b, a)) {
                    const CofactorCycle c({{CurveParams::from_order(a, h1 * b), h1}, {CurveParams::from_order(b, h2 * a), h2}});
                    expect_all.insert(c.to_string());
                    if (h1 > 1 || h2 > 1) expect_nontrivial.insert(c.to_string());
                }
        }
    std::set<std::string> got_all, got_nontrivial;
    for (const auto& c : search_cofactor_cycles(limit, 2, false)) got_all.insert(c.to_string());
    for (const auto& c : search_cofactor_cycles(limit, 2, true)) {
        CHECK(c.nontrivial());
        got_nontrivial.insert(c.to_string());
    }
    CHECK(got_all == expect_all);
    CHECK(got_nontrivial == expect_nontrivial);
}

TEST_CASE("cofactor search results verify") {
    for (int m : {2, 3}) {
        for (const auto& c : search_cofactor_cycles(200, m, true)) {
            const auto r = verify_cofactor_cycle(c.entries());
            REQUIRE(r.valid);
            REQUIRE(r.nontrivial);
            REQUIRE(c.length() == static_cast<std::size_t>(m));
        }
    }
    CHECK_THROWS_AS(search_cofactor_cycles(5000, 2, true), std::invalid_argument);
}

TEST_CASE("quadratic integers") {
    const QuadraticInteger l(3, 1, 11, true);
    CHECK(l.to_string() == "(3 + √-11)/2");
    CHECK(l.norm() == 5);
    CHECK(l.trace() == 3);
    CHECK((-l + 1).norm() == 3);
    CHECK(l.conjugate().to_string() == "(3 - √-11)/2");
    CHECK(QuadraticInteger(2, -3, 5, false).to_string() == "2 - 3√-5");
    CHECK(QuadraticInteger(2, -3, 5, false).norm() == 49);
    CHECK_THROWS_AS(QuadraticInteger(1, 0, 11, true), std::invalid_argument);
    CHECK_THROWS_AS(QuadraticInteger(1, 1, 12, false), std::invalid_argument);
}

TEST_CASE("dual primes of the smallest 2-cycle") {
    const Cycle c({{5, 3, 3, {}, {}}, {3, 5, -1, {}, {}}});
    const auto pair = to_dual_primes(c);
    CHECK(lambda_one(pair).to_string() == "(3 + √-11)/2");
    CHECK(pair.p == 5);
    CHECK(pair.q == 3);
    CHECK(from_dual_primes(pair) == c);
    CHECK_THROWS_AS(to_dual_primes(Cycle(kTable5)), std::invalid_argument);
    auto wrong = pair;
    wrong.q = 7;
    CHECK_THROWS_AS(from_dual_primes(wrong), std::invalid_argument);
}

}  // TEST_SUITE
