#include <set>

#include "cyclescope/numth.hpp"
#include "cyclescope/ruleout.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace cyclescope;

TEST_SUITE("ruleout") {

TEST_CASE("supported pairs") {
    for (auto p : kRuleoutPairs) CHECK(ruleout_supported(p.k1, p.k2));
    CHECK_FALSE(ruleout_supported(6, 6));
    CHECK_FALSE(ruleout_supported(16, 16));
    CHECK_THROWS_AS(small_c_candidates(6, 6, 10), std::invalid_argument);
    CHECK_THROWS_AS(small_c_candidates(12, 12, 501), std::invalid_argument);
    CHECK_THROWS_AS(run_ruleout(16, 16), std::invalid_argument);
}

TEST_CASE("small-c splits agree with a search over prime q2") {
    for (auto [k1, k2] : kRuleoutPairs) {
        std::set<std::pair<std::int64_t, std::int64_t>> expect;
        for (std::int64_t c = 1; c <= 82; ++c) {
            const auto phi = static_cast<std::int64_t>(cyclotomic_eval(k1, c));
            for (std::int64_t q2 = 2; q2 * (q2 + c) <= phi; ++q2) {
                if (phi % q2 || !oracle::is_prime(q2) || !oracle::is_prime(q2 + c)) continue;
                if ((phi / q2) % (q2 + c) == 0) expect.emplace(c, q2);
            }
        }
        std::set<std::pair<std::int64_t, std::int64_t>> got;
        for (const auto& r : small_c_candidates(k1, k2, 82)) got.emplace(r.c, static_cast<std::int64_t>(r.q2));
        CHECK(got == expect);
    }
}

TEST_CASE("small-c candidates satisfy the divisibility and square identities") {
    std::int64_t checked = 0;
    for (auto [k1, k2] : kRuleoutPairs) {
        for (const auto& r : small_c_candidates(k1, k2, 500, 2)) {
            ++checked;
            const i128 phi = cyclotomic_eval(k1, r.c);
            REQUIRE(r.q1 - r.q2 == r.c);
            REQUIRE(r.d * r.q1 * r.q2 == phi);
            REQUIRE(r.d >= 1);
            REQUIRE(r.discriminant_square);
            const i128 root = 2 * r.d * r.q2 + r.c * r.d;
            REQUIRE(root * root == r.c * r.c * r.d * r.d + 4 * r.d * phi);
            if (r.hasse_ok && r.c >= 83) REQUIRE(4 * r.q2 >= (r.c - 1) * (r.c - 1));
            REQUIRE(r.degree_ok == (multiplicative_order(r.q1, r.q2) == k1 && multiplicative_order(r.q2, r.q1) == k2));
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("no small-c survivors up to 82") {
    for (auto [k1, k2] : kRuleoutPairs) CHECK(enumerate_small_c(k1, k2, 82).empty());
}

TEST_CASE("single step c = 2, k1 = 8") {
    CHECK(cyclotomic_eval(8, 2) == 17);
    for (const auto& r : small_c_candidates(8, 8, 2)) CHECK(r.c != 2);
}

TEST_CASE("d bound is exact and below 17 past c = 82") {
    const auto r = d_bound_rhs(12, 83);
    CHECK(r.num * 45212176 == 16 * static_cast<i128>(47451433) * r.den);
    CHECK(r.less_than(17));
    CHECK_FALSE(r.less_than(16));
    CHECK(r.approx() == doctest::Approx(16.79).epsilon(0.001));
    CHECK(d_bound_rhs(5, 83).less_than(17));
    CHECK(d_bound_rhs(12, 1'000'000).less_than(17));
    CHECK_THROWS_AS(d_bound_rhs(12, 1), std::invalid_argument);
    CHECK_FALSE(d_bound_rhs(12, 10).less_than(17));
}

TEST_CASE("residue sieve agrees with direct evaluation") {
    for (int k1 : {5, 8, 10, 12})
        for (std::int64_t d : {1, 11, 13})
            for (std::int64_t m : {16, 9, 5, 7, 11, 13, 32}) {
                std::set<std::int64_t> squares;
                for (std::int64_t y = 0; y < m; ++y) squares.insert(y * y % m);
                std::vector<std::int64_t> expect;
                for (std::int64_t r = 0; r < m; ++r) {
                    const i128 v = r * r * d * d + 4 * d * cyclotomic_eval(k1, r);
                    if (squares.count(static_cast<std::int64_t>(mod_floor(v, m)))) expect.push_back(r);
                }
                REQUIRE(quartic_residue_sieve(k1, d, m) == expect);
            }
    CHECK(quartic_residue_sieve(5, 11, 16).empty());
    CHECK(quartic_residue_sieve(10, 11, 16).empty());
    CHECK_FALSE(quartic_residue_sieve(12, 13, 16).empty());
    CHECK_THROWS_AS(quartic_residue_sieve(12, 13, 1), std::invalid_argument);
}

TEST_CASE("bounded search matches a direct scan, with and without sieving") {
    for (int k1 : {5, 8, 10, 12})
        for (std::int64_t d : {1, 11, 13}) {
            std::vector<IntegralPoint> expect;
            for (std::int64_t c = 0; c <= 3000; ++c) {
                const i128 v = static_cast<i128>(c) * c * d * d + 4 * d * cyclotomic_eval(k1, c);
                const i128 y = isqrt(v);
                if (y * y == v) expect.push_back({c, y});
            }
            const auto plain = bounded_integral_points(k1, d, 3000);
            const auto sieved = bounded_integral_points(k1, d, 3000, {16, 9, 5, 7, 11, 13}, 3);
            REQUIRE(plain.points == expect);
            REQUIRE(sieved.points == expect);
            REQUIRE(plain.sieve_survivors == 3001);
            REQUIRE(sieved.sieve_survivors <= plain.sieve_survivors);
        }
}

TEST_CASE("sieve soundness on (12, 13)") {
    const auto pts = bounded_integral_points(12, 13, 10'000).points;
    for (std::int64_t m : {16, 9, 5, 7, 11, 13}) {
        const auto res = quartic_residue_sieve(12, 13, m);
        const std::set<std::int64_t> allowed(res.begin(), res.end());
        for (const auto& p : pts) REQUIRE(allowed.count(p.c % m) == 1);
    }
    CHECK(bounded_integral_points(5, 11, 1000).points.empty());
}

TEST_CASE("full rule-out reports") {
    RuleoutConfig cfg;
    cfg.c_bound = 20'000;
    cfg.workers = 2;
    const auto r510 = run_ruleout(5, 10, cfg);
    CHECK(r510.verdict == Verdict::RuledOutAtDeskScale);
    CHECK(r510.admissible_d == std::vector<std::int64_t>{11});
    CHECK(r510.published_reproduced);
    REQUIRE(r510.d_cases.size() == 2);
    CHECK(r510.d_cases[0].d == 1);
    CHECK_FALSE(r510.d_cases[0].admissible);
    CHECK(r510.d_cases[1].sieve_empty);
    CHECK(r510.d_cases[1].sieve_moduli_used.size() == 1);
    CHECK_FALSE(r510.d_cases[1].bounded_search_limit.has_value());

    const auto r105 = run_ruleout(10, 5, cfg);
    CHECK(r105.admissible_d == std::vector<std::int64_t>{11});
    CHECK(r105.published_d == std::vector<std::int64_t>{13});
    CHECK_FALSE(r105.published_reproduced);

    const auto r88 = run_ruleout(8, 8, cfg);
    CHECK(r88.admissible_d.empty());
    CHECK(r88.published_reproduced);
    CHECK(r88.verdict == Verdict::RuledOutAtDeskScale);

    const auto r1212 = run_ruleout(12, 12, cfg);
    CHECK(r1212.admissible_d == std::vector<std::int64_t>{13});
    REQUIRE(r1212.d_cases.size() == 2);
    CHECK_FALSE(r1212.d_cases[1].sieve_empty);
    CHECK(r1212.d_cases[1].bounded_search_limit == 20'000);
    CHECK(r1212.d_cases[1].points_at_or_above_threshold.empty());
    CHECK(render_ruleout_text(r1212).find("ruled_out_at_desk_scale") != std::string::npos);
}

}  // TEST_SUITE
