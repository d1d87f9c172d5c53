#include "cyclescope/cycles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "cyclescope/numth.hpp"

namespace cyclescope {

namespace {

std::vector<i128> primes_up_to(i128 limit) {
    std::vector<i128> out;
    if (limit < 2) return out;
    const auto n = static_cast<std::size_t>(limit);
    std::vector<bool> composite(n + 1, false);
    for (std::size_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<i128>(i));
        for (std::size_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

bool distinct_triples(const std::vector<CurveParams>& entries) {
    std::vector<CurveParams> sorted = entries;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

std::optional<i128> discriminant_of(i128 q, i128 t) {
    const i128 r = 4 * q - t * t;
    if (r <= 0) return std::nullopt;
    return squarefree_part(r);
}

}  // namespace

Cycle::Cycle(std::vector<CurveParams> entries) : entries_(std::move(entries)) {
    const std::size_t m = entries_.size();
    if (m < 2) throw std::invalid_argument("a cycle needs at least two curves");
    for (std::size_t i = 0; i < m; ++i) {
        const auto& e = entries_[i];
        if (!is_prime(e.q)) throw std::invalid_argument("cycle entry " + e.to_string() + " has non-prime q");
        if (!e.consistent()) throw std::invalid_argument("cycle entry " + e.to_string() + " has n != q + 1 - t");
        if (e.n != entries_[(i + 1) % m].q)
            throw std::invalid_argument("cycle closure fails at entry " + std::to_string(i));
    }
    if (!distinct_triples(entries_)) throw std::invalid_argument("cycle entries are not distinct");
}

i128 Cycle::trace_sum() const {
    i128 s = 0;
    for (const auto& e : entries_) s += e.t;
    return s;
}

Cycle Cycle::canonical() const {
    auto rotated = entries_;
    const auto it = std::min_element(rotated.begin(), rotated.end());
    std::rotate(rotated.begin(), it, rotated.end());
    return Cycle(std::move(rotated));
}

bool Cycle::same_cycle(const Cycle& other) const { return canonical() == other.canonical(); }

std::string Cycle::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) s += ", ";
        s += entries_[i].to_string();
    }
    return s + "]";
}

bool operator<(const Cycle& a, const Cycle& b) {
    return std::lexicographical_compare(a.entries().begin(), a.entries().end(), b.entries().begin(), b.entries().end());
}

bool operator==(const Cycle& a, const Cycle& b) { return a.entries() == b.entries(); }

std::vector<i128> CycleReport::discriminants() const {
    std::vector<i128> out;
    for (const auto& e : entries) out.push_back(e.D.value_or(0));
    return out;
}

CycleReport verify_cycle(const std::vector<CurveParams>& entries, bool realize) {
    CycleReport r;
    const std::size_t m = entries.size();
    r.realize_requested = realize;
    bool all_ok = m >= 2;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& p = entries[i];
        EntryReport e;
        e.params = p;
        e.q_prime = is_prime(p.q);
        e.consistent = p.consistent();
        e.closure = p.n == entries[(i + 1) % m].q;
        e.hasse = hasse_ok(p.q, p.t);
        e.ordinary = p.q < 5 || p.n != p.q + 1;
        try {
            if (e.q_prime && e.hasse) e.D = discriminant_of(p.q, p.t);
            if (e.q_prime && is_prime(p.n) && p.q % p.n != 0) e.k_actual = embedding_degree(p.q, p.n).actual;
        } catch (const CapabilityError&) {
            // beyond the factoring range; D and k stay unknown
        }
        if (p.D) e.D_matches = e.D && *e.D == *p.D;
        if (p.k_nominal && e.k_actual) e.k_matches = *e.k_actual == *p.k_nominal;
        all_ok = all_ok && e.q_prime && e.consistent && e.closure && e.hasse && e.ordinary && e.D_matches;
        r.entries.push_back(std::move(e));
    }
    for (const auto& p : entries) r.trace_sum += p.t;
    r.trace_sum_ok = r.trace_sum == static_cast<i128>(m);
    r.distinct = distinct_triples(entries);
    all_ok = all_ok && r.trace_sum_ok && r.distinct;

    if (realize) {
        const bool in_range = std::all_of(entries.begin(), entries.end(),
                                          [](const CurveParams& p) { return p.q >= 3 && p.q <= kMaxSearchField; });
        if (!in_range) {
            r.realize_note = "realization needs every q in [3, 10000]";
        } else if (all_ok) {
            r.realized = true;
            for (auto& e : r.entries) {
                e.curve = find_curve_with_order(e.params.q, e.params.n);
                if (!e.curve) r.realized = false;
            }
            if (!r.realized) r.realize_note = "no curve found for some entry";
            all_ok = all_ok && r.realized;
        } else {
            r.realize_note = "skipped: parameter checks failed";
        }
    }
    r.valid = all_ok;
    return r;
}

std::optional<Cycle> two_cycle_from_trace(i128 q1, i128 t1) {
    if (!is_prime(q1) || !hasse_ok(q1, t1)) return std::nullopt;
    const i128 q2 = q1 + 1 - t1;
    const i128 t2 = 2 - t1;
    if (q2 == q1 || !is_prime(q2) || !hasse_ok(q2, t2)) return std::nullopt;
    const i128 D = squarefree_part(4 * q1 - t1 * t1);
    return Cycle({CurveParams{q1, q2, t1, std::nullopt, D}, CurveParams{q2, q1, t2, std::nullopt, D}});
}

SameDiscriminantReport same_discriminant_check(const Cycle& cycle) {
    SameDiscriminantReport r;
    r.m = cycle.length();
    for (const auto& e : cycle.entries()) r.D.push_back(discriminant_of(e.q, e.t).value_or(0));
    r.all_equal = std::adjacent_find(r.D.begin(), r.D.end(), std::not_equal_to<>()) == r.D.end();
    std::set<i128> qs;
    for (const auto& e : cycle.entries()) qs.insert(e.q);
    r.distinct_q = qs.size() == r.m;
    const i128 d0 = r.D.front();
    r.unit_condition = d0 > 3 && mod_floor(-d0, 4) <= 1;
    if (r.all_equal && r.distinct_q && r.m >= 3 && !(r.m == 6 && d0 == 3)) {
        r.anomaly = true;
        r.note = "shared discriminant with m >= 3 outside the (m = 6, D = 3) case";
    } else if (r.all_equal && r.distinct_q) {
        r.note = r.m <= 2 ? "shared discriminant, m <= 2" : "shared discriminant D = 3, m = 6";
    } else if (!r.all_equal) {
        r.note = "discriminants differ";
    } else {
        r.note = "shared discriminant with a repeated field size";
    }
    return r;
}

std::vector<Cycle> search_same_discriminant_cycles(i128 q_max, int m_max) {
    if (q_max > 10'000) throw std::invalid_argument("search_same_discriminant_cycles supports q_max <= 10^4");
    if (m_max < 2 || m_max > 8) throw std::invalid_argument("search_same_discriminant_cycles needs 2 <= m_max <= 8");
    // D -> (q -> successors q')
    std::map<i128, std::map<i128, std::vector<i128>>> graph;
    for (i128 q : primes_up_to(q_max)) {
        const i128 tmax = isqrt(4 * q);
        for (i128 t = -tmax; t <= tmax; ++t) {
            if (!is_ordinary_trace(q, t)) continue;
            const i128 next = q + 1 - t;
            if (next == q || next > q_max || !is_prime(next)) continue;
            graph[squarefree_part(4 * q - t * t)][q].push_back(next);
        }
    }
    std::vector<Cycle> out;
    for (const auto& [D, adj] : graph) {
        std::vector<i128> path;
        std::function<void(i128)> walk = [&](i128 node) {
            const auto it = adj.find(node);
            if (it == adj.end()) return;
            for (i128 next : it->second) {
                if (next == path.front()) {
                    if (path.size() >= 2) {
                        std::vector<CurveParams> entries;
                        for (std::size_t i = 0; i < path.size(); ++i)
                            entries.push_back(CurveParams::from_order(path[i], path[(i + 1) % path.size()],
                                                                      std::nullopt, D));
                        out.emplace_back(std::move(entries));
                    }
                    continue;
                }
                if (next < path.front() || static_cast<int>(path.size()) >= m_max) continue;
                if (std::find(path.begin(), path.end(), next) != path.end()) continue;
                path.push_back(next);
                walk(next);
                path.pop_back();
            }
        };
        for (const auto& [start, succ] : adj) {
            path = {start};
            walk(start);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

CofactorCycle::CofactorCycle(std::vector<CofactorEntry> entries) : entries_(std::move(entries)) {
    const std::size_t m = entries_.size();
    if (m < 2) throw std::invalid_argument("a cofactor cycle needs at least two curves");
    std::vector<CurveParams> params;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& e = entries_[i];
        if (!is_prime(e.params.q)) throw std::invalid_argument("cofactor cycle entry has non-prime q");
        if (e.h < 1) throw std::invalid_argument("cofactor must be >= 1");
        if (!e.params.consistent()) throw std::invalid_argument("cofactor cycle entry has n != q + 1 - t");
        if (e.params.n != e.h * entries_[(i + 1) % m].params.q)
            throw std::invalid_argument("cofactor cycle closure fails at entry " + std::to_string(i));
        params.push_back(e.params);
    }
    if (!distinct_triples(params)) throw std::invalid_argument("cofactor cycle entries are not distinct");
}

bool CofactorCycle::nontrivial() const {
    return std::any_of(entries_.begin(), entries_.end(), [](const CofactorEntry& e) { return e.h > 1; });
}

std::string CofactorCycle::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) os << ", ";
        os << "(q=" << cyclescope::to_string(entries_[i].params.q) << ", n=" << cyclescope::to_string(entries_[i].params.n)
           << ", h=" << cyclescope::to_string(entries_[i].h) << ")";
    }
    os << "]";
    return os.str();
}

bool operator<(const CofactorCycle& a, const CofactorCycle& b) {
    const auto key = [](const CofactorCycle& c) {
        std::vector<std::tuple<i128, i128, i128>> k;
        for (const auto& e : c.entries()) k.emplace_back(e.params.q, e.params.n, e.h);
        return k;
    };
    return key(a) < key(b);
}

CofactorReport verify_cofactor_cycle(const std::vector<CofactorEntry>& entries) {
    CofactorReport r;
    const std::size_t m = entries.size();
    bool ok = m >= 2;
    std::vector<CurveParams> params;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& e = entries[i];
        CofactorEntryReport er;
        er.entry = e;
        er.q_prime = is_prime(e.params.q);
        er.closure = e.h >= 1 && e.params.consistent() && e.params.n == e.h * entries[(i + 1) % m].params.q;
        er.hasse = hasse_ok(e.params.q, e.params.t);
        er.supersingular = e.params.q >= 5 && e.params.n == e.params.q + 1;
        ok = ok && er.q_prime && er.closure && er.hasse && !er.supersingular;
        r.nontrivial = r.nontrivial || e.h > 1;
        params.push_back(e.params);
        r.entries.push_back(er);
    }
    r.distinct = distinct_triples(params);
    ok = ok && r.distinct;
    if (m > 0) {
        const auto [lo, hi] = std::minmax_element(params.begin(), params.end(),
                                                  [](const CurveParams& a, const CurveParams& b) { return a.q < b.q; });
        r.min_q = lo->q;
        r.max_q = hi->q;
    }
    r.bound = 12 * static_cast<i128>(m) * static_cast<i128>(m);
    r.valid = ok;
    r.bound_anomaly = ok && r.nontrivial && r.min_q > r.bound;
    return r;
}

std::vector<CofactorCycle> search_cofactor_cycles(i128 q_max, int m, bool require_nontrivial) {
    if (q_max > 2000) throw std::invalid_argument("search_cofactor_cycles supports q_max <= 2000");
    if (m < 2 || m > 4) throw std::invalid_argument("search_cofactor_cycles needs 2 <= m <= 4");

    struct Edge {
        i128 to, n, h;
    };
    std::map<i128, std::vector<Edge>> edges;
    for (i128 q : primes_up_to(q_max)) {
        auto& out = edges[q];
        const i128 tmax = isqrt(4 * q);
        for (i128 t = tmax; t >= -tmax; --t) {
            const i128 n = q + 1 - t;
            if (n < 1 || (q >= 5 && t == 0)) continue;
            for (const auto& pp : factorize(n).factors)
                if (pp.prime <= q_max) out.push_back({pp.prime, n, n / pp.prime});
        }
        std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
            return std::tie(a.to, a.n) < std::tie(b.to, b.n);
        });
    }

    std::vector<CofactorCycle> result;
    std::vector<i128> nodes;
    std::vector<Edge> taken;
    std::function<void()> walk = [&] {
        const i128 here = nodes.back();
        for (const Edge& e : edges[here]) {
            if (static_cast<int>(nodes.size()) == m) {
                if (e.to != nodes.front()) continue;
                taken.push_back(e);
                std::vector<CofactorEntry> entries;
                for (std::size_t i = 0; i < nodes.size(); ++i)
                    entries.push_back({CurveParams::from_order(nodes[i], taken[i].n), taken[i].h});
                taken.pop_back();
                CofactorCycle c(std::move(entries));
                if (!require_nontrivial || c.nontrivial()) result.push_back(std::move(c));
                continue;
            }
            if (e.to <= nodes.front() || std::find(nodes.begin(), nodes.end(), e.to) != nodes.end()) continue;
            nodes.push_back(e.to);
            taken.push_back(e);
            walk();
            taken.pop_back();
            nodes.pop_back();
        }
    };
    for (const auto& [start, out] : edges) {
        nodes = {start};
        taken.clear();
        walk();
    }
    std::sort(result.begin(), result.end());
    return result;
}

QuadraticInteger::QuadraticInteger(i128 a, i128 b, i128 D, bool halved) : a_(a), b_(b), D_(D), halved_(halved) {
    if (D < 1 || !is_squarefree(D))
        throw std::invalid_argument("quadratic integer needs positive squarefree D, got " + cyclescope::to_string(D));
    if (halved && (a * a + D * b * b) % 4 != 0)
        throw std::invalid_argument("(a + b sqrt(-D)) / 2 with non-integral norm");
}

i128 QuadraticInteger::norm() const {
    const i128 raw = a_ * a_ + D_ * b_ * b_;
    return halved_ ? raw / 4 : raw;
}

i128 QuadraticInteger::trace() const { return halved_ ? a_ : 2 * a_; }

QuadraticInteger QuadraticInteger::operator+(i128 k) const {
    return QuadraticInteger(a_ + (halved_ ? 2 * k : k), b_, D_, halved_);
}

QuadraticInteger QuadraticInteger::operator-() const { return QuadraticInteger(-a_, -b_, D_, halved_); }

QuadraticInteger QuadraticInteger::conjugate() const { return QuadraticInteger(a_, -b_, D_, halved_); }

std::string QuadraticInteger::to_string() const {
    std::ostringstream os;
    os << (halved_ ? "(" : "") << cyclescope::to_string(a_) << (b_ < 0 ? " - " : " + ");
    const i128 ab = abs128(b_);
    if (ab != 1) os << cyclescope::to_string(ab);
    os << "√-" << cyclescope::to_string(D_) << (halved_ ? ")/2" : "");
    return os.str();
}

QuadraticInteger lambda_one(const DualPrimePair& pair) { return pair.epsilon == 1 ? -pair.pi : pair.pi; }

QuadraticInteger lambda_two(const DualPrimePair& pair) { return -lambda_one(pair) + 1; }

DualPrimePair to_dual_primes(const Cycle& cycle) {
    if (cycle.length() != 2) throw std::invalid_argument("dual elliptic primes correspond to 2-cycles only");
    for (const auto& e : cycle.entries())
        if (!is_ordinary_trace(e.q, e.t) || !hasse_ok(e.q, e.t))
            throw std::invalid_argument("entry " + e.to_string() + " is not an ordinary curve");
    const auto& first = cycle.entries()[0];
    const auto dec = squarefree_decomposition(4 * first.q - first.t * first.t);
    const QuadraticInteger lambda1(first.t, dec.root, dec.squarefree, true);
    DualPrimePair pair{-lambda1, 1, first.q, first.n};
    if (pair.pi.norm() != pair.p || (pair.pi + pair.epsilon).norm() != pair.q)
        throw std::logic_error("dual prime norms disagree with the cycle");
    return pair;
}

Cycle from_dual_primes(const DualPrimePair& pair) {
    if (pair.epsilon != 1 && pair.epsilon != -1) throw std::invalid_argument("epsilon must be +1 or -1");
    const i128 p = pair.pi.norm();
    const i128 q = (pair.pi + pair.epsilon).norm();
    if (p != pair.p || q != pair.q) throw std::invalid_argument("norms of pi and pi + epsilon do not match (p, q)");
    if (!is_prime(p) || !is_prime(q)) throw std::invalid_argument("dual elliptic primes must have prime norms");
    const i128 t1 = -pair.epsilon * pair.pi.trace();
    const i128 D = pair.pi.D();
    return Cycle({CurveParams{p, q, t1, std::nullopt, D}, CurveParams{q, p, 2 - t1, std::nullopt, D}});
}

}  // namespace cyclescope
