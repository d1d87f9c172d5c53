#include "cyclescope/families.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>

#include "cyclescope/numth.hpp"
#include "cyclescope/parallel.hpp"

namespace cyclescope {

namespace {

const FamilyPolynomials kMnt3{{-1, 0, 12}, {1, -6, 12}, {-1, 6}};
const FamilyPolynomials kMnt4A{{1, 1, 1}, {2, 2, 1}, {0, -1}};
const FamilyPolynomials kMnt4B{{1, 1, 1}, {1, 0, 1}, {1, 1}};
const FamilyPolynomials kMnt6{{1, 0, 4}, {1, 2, 4}, {1, -2}};
const FamilyPolynomials kFreeman{{3, 10, 25, 25, 25}, {1, 5, 15, 25, 25}, {3, 5, 10}};
const FamilyPolynomials kBn{{1, 6, 24, 36, 36}, {1, 6, 18, 36, 36}, {1, 0, 6}};

i128 eval(std::span<const int> coeffs, i128 x) {
    i128 acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = checked_add(checked_mul(acc, x), *it);
    return acc;
}

// Integer x with a x^2 + b x + c = v, using coeffs {c, b, a}.
std::vector<i128> integer_roots(std::span<const int> coeffs, i128 v) {
    const i128 c = coeffs.size() > 0 ? coeffs[0] : 0;
    const i128 b = coeffs.size() > 1 ? coeffs[1] : 0;
    const i128 a = coeffs.size() > 2 ? coeffs[2] : 0;
    for (std::size_t i = 3; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) throw std::logic_error("integer_roots handles degree <= 2");
    std::vector<i128> roots;
    if (a == 0) {
        if (b != 0 && (v - c) % b == 0) roots.push_back((v - c) / b);
        return roots;
    }
    const i128 disc = checked_add(b * b, -checked_mul(4 * a, c - v));
    if (disc < 0) return roots;
    const auto s = exact_sqrt(static_cast<u128>(disc));
    if (!s) return roots;
    for (const i128 num : {-b - static_cast<i128>(*s), -b + static_cast<i128>(*s)})
        if (num % (2 * a) == 0) roots.push_back(num / (2 * a));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// Polynomials with trailing zeros trimmed, for the degree <= 2 solver.
std::span<const int> trimmed(const std::array<int, 5>& p) {
    std::size_t len = p.size();
    while (len > 0 && p[len - 1] == 0) --len;
    return {p.data(), len};
}

}  // namespace

int nominal_degree(Family f) {
    switch (f) {
        case Family::MNT3: return 3;
        case Family::MNT4A:
        case Family::MNT4B: return 4;
        case Family::MNT6: return 6;
        case Family::FREEMAN: return 10;
        case Family::BN: return 12;
    }
    throw std::logic_error("unknown family");
}

std::string_view family_name(Family f) {
    switch (f) {
        case Family::MNT3: return "MNT3";
        case Family::MNT4A: return "MNT4A";
        case Family::MNT4B: return "MNT4B";
        case Family::MNT6: return "MNT6";
        case Family::FREEMAN: return "FREEMAN";
        case Family::BN: return "BN";
    }
    throw std::logic_error("unknown family");
}

std::optional<Family> parse_family(std::string_view name) {
    for (Family f : kAllFamilies)
        if (family_name(f) == name) return f;
    return std::nullopt;
}

const FamilyPolynomials& family_polynomials(Family f) {
    switch (f) {
        case Family::MNT3: return kMnt3;
        case Family::MNT4A: return kMnt4A;
        case Family::MNT4B: return kMnt4B;
        case Family::MNT6: return kMnt6;
        case Family::FREEMAN: return kFreeman;
        case Family::BN: return kBn;
    }
    throw std::logic_error("unknown family");
}

FamilyPoint family_params(Family f, i128 x) {
    const auto& p = family_polynomials(f);
    CurveParams params{eval(p.q, x), eval(p.n, x), eval(p.t, x), nominal_degree(f), std::nullopt};
    return FamilyPoint{f, x, params, is_prime(params.q), is_prime(params.n)};
}

std::vector<FamilyMatch> recognize_family(const CurveParams& params) {
    std::vector<FamilyMatch> out;
    for (Family f : kAllFamilies) {
        for (i128 x : integer_roots(trimmed(family_polynomials(f).t), params.t)) {
            const auto fp = family_params(f, x);
            if (fp.params.q == params.q && fp.params.n == params.n) out.push_back({f, x});
        }
    }
    return out;
}

std::optional<Cycle> mnt_two_cycle_at(i128 x) {
    const i128 xx = checked_mul(4, checked_mul(x, x));
    const i128 q1 = xx + 1;
    const i128 q2 = xx + 2 * x + 1;
    if (!is_prime(q1) || !is_prime(q2)) return std::nullopt;
    const i128 t1 = 1 - 2 * x, t2 = 2 * x + 1;
    const i128 D = squarefree_part(4 * q1 - t1 * t1);
    return Cycle({CurveParams{q1, q2, t1, 6, D}, CurveParams{q2, q1, t2, 4, D}});
}

std::optional<Cycle> mnt_four_cycle_at(i128 x) {
    const i128 xx = checked_mul(4, checked_mul(x, x));
    const i128 q1 = xx + 1;
    const i128 q2 = xx + 2 * x + 1;
    const i128 q4 = xx - 2 * x + 1;
    if (!is_prime(q1) || !is_prime(q2) || !is_prime(q4)) return std::nullopt;
    const i128 t_minus = 1 - 2 * x, t_plus = 2 * x + 1;
    const i128 d12 = squarefree_part(4 * q1 - t_minus * t_minus);
    const i128 d34 = squarefree_part(4 * q1 - t_plus * t_plus);
    return Cycle({CurveParams{q1, q2, t_minus, 6, d12}, CurveParams{q2, q1, t_plus, 4, d12},
                  CurveParams{q1, q4, t_plus, 6, d34}, CurveParams{q4, q1, t_minus, 4, d34}});
}

std::vector<ScannedCycle> scan_mnt_cycles(i128 x_min, i128 x_max, int kind, unsigned workers) {
    if (kind != 2 && kind != 4) throw std::invalid_argument("cycle kind must be 2 or 4");
    if (x_min > x_max) throw std::invalid_argument("x_min must not exceed x_max");
    if (!fits_i64(x_min) || !fits_i64(x_max)) throw std::invalid_argument("scan range must fit in 64 bits");
    return parallel_collect<ScannedCycle>(
        static_cast<std::int64_t>(x_min), static_cast<std::int64_t>(x_max), workers,
        [kind](std::int64_t lo, std::int64_t hi, std::vector<ScannedCycle>& out) {
            for (std::int64_t x = lo; x <= hi; ++x) {
                auto c = kind == 2 ? mnt_two_cycle_at(x) : mnt_four_cycle_at(x);
                if (c) out.push_back({x, std::move(*c)});
            }
        });
}

bool is_mnt_cycle(const Cycle& cycle) {
    const Cycle canon = cycle.canonical();
    for (const auto& e : cycle.entries()) {
        for (const auto& match : recognize_family(e)) {
            if (match.family != Family::MNT6) continue;
            for (const auto& candidate : {mnt_two_cycle_at(match.x), mnt_four_cycle_at(match.x)})
                if (candidate && candidate->canonical() == canon) return true;
        }
    }
    return false;
}

bool StructureReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.passed; });
}

StructureReport check_mnt_structure_lemmas(std::int64_t x_bound) {
    if (x_bound < 1) throw std::invalid_argument("x_bound must be >= 1");
    StructureReport report;
    report.x_bound = x_bound;

    {
        LemmaCheck c;
        c.name = "no embedding degree 3";
        c.relation = "12x^2 - 1 = 1 (mod k), k in {3, 4, 6}";
        for (std::int64_t k : {3, 4, 6})
            for (std::int64_t x = -x_bound; x <= x_bound; ++x)
                if (mod_floor(12 * static_cast<i128>(x) * x - 1, k) == 1) c.solutions.emplace_back(x, k);
        c.nondegenerate = static_cast<std::int64_t>(c.solutions.size());
        c.passed = c.nondegenerate == 0;
        report.checks.push_back(std::move(c));
    }

    // Solves n_from(x_i) = q_to(x_{i+1}) over the box and hands every solution
    // with its shared value to `classify`.
    auto solve = [x_bound](Family from, Family to, auto classify) {
        const auto to_q = trimmed(family_polynomials(to).q);
        for (std::int64_t xi = -x_bound; xi <= x_bound; ++xi) {
            const i128 value = family_params(from, xi).params.n;
            for (i128 next : integer_roots(to_q, value))
                if (abs128(next) <= x_bound) classify(xi, static_cast<std::int64_t>(next), value);
        }
    };

    auto forbidden = [&](std::string name, std::string relation, Family from, Family to) {
        LemmaCheck c;
        c.name = std::move(name);
        c.relation = std::move(relation);
        solve(from, to, [&](std::int64_t xi, std::int64_t next, i128 value) {
            c.solutions.emplace_back(xi, next);
            if (is_prime(value)) ++c.nondegenerate;
        });
        c.passed = c.nondegenerate == 0;
        report.checks.push_back(std::move(c));
    };
    forbidden("no consecutive 4-4 (n = x^2 + 2x + 2)", "(x_i + 1)^2 = x_{i+1}(x_{i+1} + 1)", Family::MNT4A,
              Family::MNT4A);
    forbidden("no consecutive 4-4 (n = x^2 + 1)", "x_i^2 = x_{i+1}(x_{i+1} + 1)", Family::MNT4B, Family::MNT4A);
    forbidden("no consecutive 6-6", "2x_i(2x_i + 1) = (2x_{i+1})^2", Family::MNT6, Family::MNT6);

    auto characterise = [&](std::string name, std::string relation, Family from, Family to, auto holds,
                            auto symmetric) {
        LemmaCheck c;
        c.name = std::move(name);
        c.relation = std::move(relation);
        solve(from, to, [&](std::int64_t xi, std::int64_t next, i128) {
            c.solutions.emplace_back(xi, next);
            if (holds(xi, next)) return;
            if (symmetric(xi, next))
                ++c.symmetric;
            else
                ++c.violations;
        });
        c.passed = c.violations == 0;
        report.checks.push_back(std::move(c));
    };
    auto never = [](std::int64_t, std::int64_t) { return false; };
    characterise("4 then 6 (n = x^2 + 2x + 2)", "2|x_{i+1}| = |x_i + 1|", Family::MNT4A, Family::MNT6,
                 [](std::int64_t xi, std::int64_t next) { return 2 * std::abs(next) == std::abs(xi + 1); }, never);
    characterise("4 then 6 (n = x^2 + 1)", "2|x_{i+1}| = |x_i|", Family::MNT4B, Family::MNT6,
                 [](std::int64_t xi, std::int64_t next) { return 2 * std::abs(next) == std::abs(xi); }, never);
    characterise("6 then 4", "x_{i+1} = 2x_i", Family::MNT6, Family::MNT4A,
                 [](std::int64_t xi, std::int64_t next) { return next == 2 * xi; },
                 [](std::int64_t xi, std::int64_t next) { return next == -1 - 2 * xi; });
    return report;
}

FreemanBnReport freeman_bn_no_cycle_check(std::int64_t sweep) {
    if (sweep < 1) throw std::invalid_argument("sweep must be >= 1");
    FreemanBnReport r;
    r.sweep = sweep;
    const auto& t10 = family_polynomials(Family::FREEMAN).t;
    // t_10(x) - 1 = a x^2 + b x + c
    const i128 a = t10[2], b = t10[1], c = t10[0] - 1;
    r.freeman_trace_discriminant = b * b - 4 * a * c;

    r.freeman_trace_above_one = true;
    r.freeman_min_trace = family_params(Family::FREEMAN, -sweep).params.t;
    r.freeman_min_trace_at = -sweep;
    for (std::int64_t x = -sweep; x <= sweep; ++x) {
        const i128 t = family_params(Family::FREEMAN, x).params.t;
        if (t <= 1) r.freeman_trace_above_one = false;
        if (t < r.freeman_min_trace) {
            r.freeman_min_trace = t;
            r.freeman_min_trace_at = x;
        }
        if (family_params(Family::BN, x).params.t == 1) r.bn_trace_one_at.push_back(x);
    }
    const auto bn0 = family_params(Family::BN, 0);
    r.bn_q_at_zero = bn0.params.q;
    r.bn_n_at_zero = bn0.params.n;
    r.bn_zero_prime = bn0.q_prime || bn0.n_prime;
    r.passed = r.freeman_trace_discriminant < 0 && a > 0 && r.freeman_trace_above_one &&
               r.bn_trace_one_at == std::vector<std::int64_t>{0} && !r.bn_zero_prime;
    return r;
}

std::vector<ComboCycle> search_combo_cycles(int m_max, std::int64_t x_bound, unsigned workers) {
    if (m_max < 2 || m_max > 4) throw std::invalid_argument("search_combo_cycles needs 2 <= m_max <= 4");
    if (x_bound < 0 || x_bound > 100'000) throw std::invalid_argument("search_combo_cycles needs 0 <= x_bound <= 10^5");

    const auto points = parallel_collect<FamilyPoint>(
        -x_bound, x_bound, workers, [](std::int64_t lo, std::int64_t hi, std::vector<FamilyPoint>& out) {
            for (Family f : kAllFamilies)
                for (std::int64_t x = lo; x <= hi; ++x) {
                    auto fp = family_params(f, x);
                    if (fp.both_prime()) out.push_back(std::move(fp));
                }
        });

    // One node per distinct (q, n, t); labels collect every family preimage.
    std::map<CurveParams, std::vector<FamilyMatch>> nodes;
    for (const auto& fp : points) {
        CurveParams key{fp.params.q, fp.params.n, fp.params.t, std::nullopt, std::nullopt};
        nodes[key].push_back({fp.family, fp.x});
    }
    std::vector<CurveParams> keys;
    std::vector<std::vector<FamilyMatch>> labels;
    for (auto& [k, l] : nodes) {
        std::sort(l.begin(), l.end(), [](const FamilyMatch& a, const FamilyMatch& b) {
            return std::pair(static_cast<int>(a.family), a.x) < std::pair(static_cast<int>(b.family), b.x);
        });
        keys.push_back(k);
        labels.push_back(l);
    }
    std::multimap<i128, std::size_t> by_q;
    for (std::size_t i = 0; i < keys.size(); ++i) by_q.emplace(keys[i].q, i);

    std::vector<ComboCycle> out;
    std::vector<std::size_t> path;
    auto emit = [&] {
        std::vector<CurveParams> entries;
        std::vector<std::vector<FamilyMatch>> entry_labels;
        for (std::size_t idx : path) {
            entries.push_back(keys[idx]);
            entry_labels.push_back(labels[idx]);
        }
        Cycle c(std::move(entries));
        const bool mnt = is_mnt_cycle(c);
        out.push_back({std::move(c), std::move(entry_labels), mnt});
    };
    std::function<void()> walk = [&] {
        const auto& here = keys[path.back()];
        if (path.size() >= 2 && here.n == keys[path.front()].q) emit();
        if (static_cast<int>(path.size()) >= m_max) return;
        const auto [lo, hi] = by_q.equal_range(here.n);
        for (auto it = lo; it != hi; ++it) {
            const std::size_t next = it->second;
            if (next <= path.front() || std::find(path.begin(), path.end(), next) != path.end()) continue;
            path.push_back(next);
            walk();
            path.pop_back();
        }
    };
    for (std::size_t s = 0; s < keys.size(); ++s) {
        path = {s};
        walk();
    }
    std::sort(out.begin(), out.end(), [](const ComboCycle& a, const ComboCycle& b) { return a.cycle < b.cycle; });
    return out;
}

}  // namespace cyclescope
