#include <set>

#include "cyclescope/families.hpp"
#include "cyclescope/numth.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace cyclescope;

TEST_SUITE("families") {

TEST_CASE("family polynomials match their closed forms") {
    for (std::int64_t x = -200; x <= 200; ++x) {
        const i128 X = x;
        auto check = [&](Family f, i128 q, i128 n, i128 t) {
            const auto p = family_params(f, X).params;
            REQUIRE(p.q == q);
            REQUIRE(p.n == n);
            REQUIRE(p.t == t);
            REQUIRE(p.n == p.q + 1 - p.t);
            REQUIRE(p.k_nominal == nominal_degree(f));
        };
        check(Family::MNT3, 12 * X * X - 1, 12 * X * X - 6 * X + 1, 6 * X - 1);
        check(Family::MNT4A, X * X + X + 1, X * X + 2 * X + 2, -X);
        check(Family::MNT4B, X * X + X + 1, X * X + 1, X + 1);
        check(Family::MNT6, 4 * X * X + 1, 4 * X * X + 2 * X + 1, 1 - 2 * X);
        const i128 X2 = X * X, X3 = X2 * X, X4 = X3 * X;
        check(Family::FREEMAN, 25 * X4 + 25 * X3 + 25 * X2 + 10 * X + 3, 25 * X4 + 25 * X3 + 15 * X2 + 5 * X + 1,
              10 * X2 + 5 * X + 3);
        check(Family::BN, 36 * X4 + 36 * X3 + 24 * X2 + 6 * X + 1, 36 * X4 + 36 * X3 + 18 * X2 + 6 * X + 1,
              6 * X2 + 1);
    }
}

TEST_CASE("family names round trip") {
    for (Family f : kAllFamilies) CHECK(parse_family(family_name(f)) == f);
    CHECK_FALSE(parse_family("MNT5").has_value());
}

TEST_CASE("embedding degrees of prime family points") {
    // n | Phi_k(q) forces order k unless n divides k.
    for (Family f : kAllFamilies)
        for (std::int64_t x = -60; x <= 60; ++x) {
            const auto p = family_params(f, x);
            if (!p.both_prime() || p.params.q == p.params.n) continue;
            const auto k = multiplicative_order(p.params.q, p.params.n);
            REQUIRE(cyclotomic_mod(nominal_degree(f), p.params.q, p.params.n) == 0);
            if (nominal_degree(f) % p.params.n != 0) REQUIRE(k == nominal_degree(f));
        }
}

TEST_CASE("recognize_family inverts family_params") {
    for (Family f : kAllFamilies)
        for (std::int64_t x = -150; x <= 150; ++x) {
            const auto p = family_params(f, x).params;
            const auto matches = recognize_family(p);
            REQUIRE(std::find(matches.begin(), matches.end(), FamilyMatch{f, x}) != matches.end());
            for (const auto& m : matches) {
                const auto back = family_params(m.family, m.x).params;
                REQUIRE(back == p);
            }
        }
    // MNT4A(x) and MNT4B(-1 - x) are the same curve parameters.
    const auto matches = recognize_family(family_params(Family::MNT4A, 5).params);
    CHECK(matches == std::vector<FamilyMatch>{{Family::MNT4A, 5}, {Family::MNT4B, -6}});
    CHECK(recognize_family(CurveParams{101, 97, 5, {}, {}}).empty());
}

TEST_CASE("MNT 2-cycles agree with direct primality of the parametrization") {
    for (std::int64_t x = -400; x <= 400; ++x) {
        const std::int64_t q1 = 4 * x * x + 1, q2 = 4 * x * x + 2 * x + 1;
        const bool expect = oracle::is_prime(q1) && oracle::is_prime(q2);
        const auto c = mnt_two_cycle_at(x);
        REQUIRE(c.has_value() == expect);
        if (!c) continue;
        const auto r = verify_cycle(c->entries());
        REQUIRE(r.valid);
        REQUIRE(c->trace_sum() == 2);
        REQUIRE(c->entries()[0].k_nominal == 6);
        REQUIRE(c->entries()[1].k_nominal == 4);
        REQUIRE(r.entries[0].D == squarefree_part(12 * static_cast<i128>(x) * x + 4 * x + 3));
    }
}

TEST_CASE("MNT 4-cycles decompose into the 2-cycles at x and -x") {
    std::int64_t seen = 0;
    for (std::int64_t x = -400; x <= 400; ++x) {
        const auto four = mnt_four_cycle_at(x);
        const auto a = mnt_two_cycle_at(x), b = mnt_two_cycle_at(-x);
        REQUIRE(four.has_value() == (a.has_value() && b.has_value() && x != 0));
        if (!four) continue;
        ++seen;
        const auto& e = four->entries();
        REQUIRE(e[0] == a->entries()[0]);
        REQUIRE(e[1] == a->entries()[1]);
        REQUIRE(e[2] == b->entries()[0]);
        REQUIRE(e[3] == b->entries()[1]);
        REQUIRE(e[0].q == e[2].q);
        REQUIRE(four->trace_sum() == 4);
        REQUIRE(verify_cycle(e).valid);
    }
    CHECK(seen > 0);
    const auto x3 = mnt_four_cycle_at(3);
    REQUIRE(x3);
    CHECK(x3->entries() == std::vector<CurveParams>{{37, 43, -5, {}, {}}, {43, 37, 7, {}, {}},
                                                    {37, 31, 7, {}, {}}, {31, 37, -5, {}, {}}});
    CHECK(verify_cycle(x3->entries()).discriminants() == std::vector<i128>{123, 123, 11, 11});
}

TEST_CASE("scan results do not depend on the worker count") {
    const auto one = scan_mnt_cycles(-3000, 3000, 2, 1);
    const auto four = scan_mnt_cycles(-3000, 3000, 2, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].x == four[i].x);
        CHECK(one[i].cycle == four[i].cycle);
    }
    CHECK(scan_mnt_cycles(0, 0, 2).empty());
    CHECK_THROWS_AS(scan_mnt_cycles(0, 5, 3), std::invalid_argument);
}

TEST_CASE("is_mnt_cycle") {
    CHECK(is_mnt_cycle(*mnt_two_cycle_at(3)));
    CHECK(is_mnt_cycle(mnt_four_cycle_at(3)->canonical()));
    CHECK_FALSE(is_mnt_cycle(*two_cycle_from_trace(101, 5)));
}

TEST_CASE("structure lemmas agree with a quadratic brute force") {
    const std::int64_t bound = 80;
    const auto report = check_mnt_structure_lemmas(bound);
    CHECK(report.passed());
    REQUIRE(report.checks.size() == 7);

    auto brute = [&](Family from, Family to) {
        std::vector<std::pair<std::int64_t, std::int64_t>> out;
        for (std::int64_t a = -bound; a <= bound; ++a)
            for (std::int64_t b = -bound; b <= bound; ++b)
                if (family_params(from, a).params.n == family_params(to, b).params.q) out.emplace_back(a, b);
        return out;
    };
    CHECK(report.checks[0].solutions.empty());
    CHECK(report.checks[1].solutions == brute(Family::MNT4A, Family::MNT4A));
    CHECK(report.checks[2].solutions == brute(Family::MNT4B, Family::MNT4A));
    CHECK(report.checks[3].solutions == brute(Family::MNT6, Family::MNT6));
    CHECK(report.checks[4].solutions == brute(Family::MNT4A, Family::MNT6));
    CHECK(report.checks[5].solutions == brute(Family::MNT4B, Family::MNT6));
    CHECK(report.checks[6].solutions == brute(Family::MNT6, Family::MNT4A));

    using P = std::vector<std::pair<std::int64_t, std::int64_t>>;
    CHECK(report.checks[1].solutions == P{{-1, -1}, {-1, 0}});
    CHECK(report.checks[3].solutions == P{{0, 0}});
    for (const auto& c : report.checks) {
        CHECK(c.nondegenerate == 0);
        CHECK(c.violations == 0);
    }
}

TEST_CASE("Freeman and BN exclusion") {
    const auto r = freeman_bn_no_cycle_check(1000);
    CHECK(r.freeman_trace_discriminant == -55);
    CHECK(r.freeman_trace_above_one);
    CHECK(r.freeman_min_trace == 3);
    CHECK(r.bn_trace_one_at == std::vector<std::int64_t>{0});
    CHECK(r.bn_q_at_zero == 1);
    CHECK(r.bn_n_at_zero == 1);
    CHECK_FALSE(r.bn_zero_prime);
    CHECK(r.passed);
    for (std::int64_t x = -1000; x <= 1000; ++x) REQUIRE(family_params(Family::FREEMAN, x).params.t > 1);
}

TEST_CASE("combination search finds exactly the 2-cycles between prime family points") {
    const std::int64_t bound = 40;
    std::vector<CurveParams> nodes;
    for (Family f : kAllFamilies)
        for (std::int64_t x = -bound; x <= bound; ++x) {
            const auto p = family_params(f, x);
            if (p.both_prime()) nodes.push_back(CurveParams::from_order(p.params.q, p.params.n));
        }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    std::set<std::string> expect;
    for (const auto& a : nodes)
        for (const auto& b : nodes)
            if (a < b && a.n == b.q && b.n == a.q) expect.insert(Cycle({a, b}).to_string());

    std::set<std::string> got;
    for (const auto& c : search_combo_cycles(2, bound)) {
        REQUIRE(c.cycle.length() == 2);
        std::vector<CurveParams> plain;
        for (const auto& e : c.cycle.entries()) plain.push_back(CurveParams::from_order(e.q, e.n));
        got.insert(Cycle(plain).to_string());
        CHECK(c.is_mnt);
    }
    CHECK(got == expect);
    CHECK_FALSE(got.empty());
}

TEST_CASE("combination search up to length 4 yields only MNT cycles and all of them") {
    const std::int64_t bound = 1000;
    const auto combos = search_combo_cycles(4, bound, 2);
    std::set<std::string> got;
    for (const auto& c : combos) {
        CHECK(c.is_mnt);
        got.insert(c.cycle.canonical().to_string());
    }
    // Every MNT cycle whose points all lie in the window must be found.
    for (std::int64_t x = -bound; x <= bound; ++x) {
        for (const auto& c : {mnt_two_cycle_at(x), mnt_four_cycle_at(x)}) {
            if (!c) continue;
            bool inside = true;
            for (const auto& e : c->entries()) {
                bool any = false;
                for (const auto& m : recognize_family(e)) any = any || (m.x >= -bound && m.x <= bound);
                inside = inside && any;
            }
            if (!inside) continue;
            std::vector<CurveParams> plain;
            for (const auto& e : c->entries()) plain.push_back(CurveParams::from_order(e.q, e.n));
            CHECK(got.count(Cycle(plain).canonical().to_string()) == 1);
        }
    }
}

}  // TEST_SUITE
