#include "cyclescope/curve.hpp"

#include <algorithm>
#include <sstream>

#include "cyclescope/numth.hpp"

namespace cyclescope {

namespace {

std::int64_t reduce(std::int64_t v, std::int64_t q) {
    const std::int64_t r = v % q;
    return r < 0 ? r + q : r;
}

// chi[v] for v in [0, q): 0 at zero, 1 on nonzero squares, -1 otherwise.
std::vector<std::int8_t> character_table(std::int64_t q) {
    std::vector<std::int8_t> chi(static_cast<std::size_t>(q), -1);
    chi[0] = 0;
    for (std::int64_t x = 1; x <= q / 2; ++x) chi[static_cast<std::size_t>(x * x % q)] = 1;
    return chi;
}

std::int64_t count_with(const WeierstrassCurve& c, const std::vector<std::int8_t>& chi) {
    const std::int64_t q = c.q();
    std::int64_t sum = 0;
    for (std::int64_t x = 0; x < q; ++x) sum += chi[static_cast<std::size_t>(c.rhs(x))];
    return q + 1 + sum;
}

std::int64_t checked_field(i128 q, std::int64_t limit, const char* what) {
    if (q > limit) throw std::invalid_argument(std::string(what) + ": field size " + to_string(q) + " exceeds " +
                                               std::to_string(limit));
    return static_cast<std::int64_t>(q);
}

}  // namespace

CurveParams CurveParams::from_order(i128 q, i128 n, std::optional<int> k, std::optional<i128> D) {
    return CurveParams{q, n, q + 1 - n, k, D};
}

std::strong_ordering CurveParams::operator<=>(const CurveParams& o) const {
    if (auto c = q <=> o.q; c != 0) return c;
    if (auto c = n <=> o.n; c != 0) return c;
    return t <=> o.t;
}

std::string CurveParams::to_string() const {
    std::ostringstream os;
    os << "(" << cyclescope::to_string(q) << ", " << cyclescope::to_string(n) << ", " << cyclescope::to_string(t);
    if (k_nominal) os << ", k=" << *k_nominal;
    if (D) os << ", D=" << cyclescope::to_string(*D);
    os << ")";
    return os.str();
}

bool hasse_ok(i128 q, i128 t) {
    if (q < 1) return false;
    const u128 at = static_cast<u128>(abs128(t));
    // t^2 <= 4q without overflowing on huge t.
    return at <= 2 * isqrt_u128(static_cast<u128>(q)) + 2 && at * at <= 4 * static_cast<u128>(q);
}

i128 trace_of(i128 q, i128 n) {
    const i128 t = q + 1 - n;
    if (!hasse_ok(q, t))
        throw HasseViolation("order " + to_string(n) + " is outside the Hasse interval for q = " + to_string(q));
    return t;
}

bool is_supersingular(i128 q, i128 n) {
    if (q < 5) throw std::invalid_argument("supersingularity via n = q + 1 needs q >= 5");
    return n == q + 1;
}

bool is_ordinary_trace(i128 q, i128 t) { return q >= 2 && t % q != 0; }

EmbeddingDegree embedding_degree(i128 q, i128 n, std::optional<int> nominal) {
    if (!is_prime(n)) throw std::invalid_argument("embedding degree needs a prime order, got " + to_string(n));
    if (q % n == 0) throw std::invalid_argument("embedding degree undefined when n divides q");
    return EmbeddingDegree{multiplicative_order(q, n), nominal};
}

WeierstrassCurve::WeierstrassCurve(std::int64_t q, std::int64_t a2, std::int64_t a4, std::int64_t a6) : q_(q) {
    if (q < 3 || !is_prime(q)) throw std::invalid_argument("curve field size must be an odd prime, got " + std::to_string(q));
    if (q > (std::int64_t{1} << 31)) throw std::invalid_argument("curve field size too large");
    a2_ = reduce(a2, q);
    a4_ = reduce(a4, q);
    a6_ = reduce(a6, q);
    // Discriminant of the monic cubic x^3 + b x^2 + c x + d.
    const i128 b = a2_, c = a4_, d = a6_;
    const i128 disc = 18 * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * c * c * c - 27 * d * d;
    if (mod_floor(disc, q) == 0) throw std::invalid_argument("singular curve " + to_string());
}

std::int64_t WeierstrassCurve::rhs(std::int64_t x) const {
    x = reduce(x, q_);
    std::int64_t v = (x + a2_) % q_;
    v = (v * x + a4_) % q_;
    v = (v * x + a6_) % q_;
    return v;
}

bool WeierstrassCurve::contains(const AffinePoint& p) const {
    if (p.x < 0 || p.x >= q_ || p.y < 0 || p.y >= q_) return false;
    return p.y * p.y % q_ == rhs(p.x);
}

std::string WeierstrassCurve::to_string() const {
    std::ostringstream os;
    os << "y^2 = x^3";
    auto coeff = [](std::int64_t a) { return a == 1 ? std::string() : std::to_string(a); };
    if (a2_ != 0) os << " + " << coeff(a2_) << "x^2";
    if (a4_ != 0) os << " + " << coeff(a4_) << "x";
    if (a6_ != 0) os << " + " << a6_;
    os << " over F_" << q_;
    return os.str();
}

std::int64_t curve_order(const WeierstrassCurve& curve) {
    checked_field(curve.q(), kMaxCountingField, "curve_order");
    return count_with(curve, character_table(curve.q()));
}

std::vector<AffinePoint> list_points(const WeierstrassCurve& curve) {
    const std::int64_t q = checked_field(curve.q(), kMaxListingField, "list_points");
    std::vector<std::int64_t> root(static_cast<std::size_t>(q), -1);
    for (std::int64_t y = 0; y <= q / 2; ++y) root[static_cast<std::size_t>(y * y % q)] = y;
    std::vector<AffinePoint> pts;
    for (std::int64_t x = 0; x < q; ++x) {
        const std::int64_t r = root[static_cast<std::size_t>(curve.rhs(x))];
        if (r < 0) continue;
        if (r == 0) {
            pts.push_back({x, 0});
        } else {
            pts.push_back({x, r});
            pts.push_back({x, q - r});
        }
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

std::optional<WeierstrassCurve> find_curve_with_order(i128 q, i128 n) {
    if (q < 3 || !is_prime(q)) throw std::invalid_argument("find_curve_with_order needs an odd prime field");
    const std::int64_t fq = checked_field(q, kMaxSearchField, "find_curve_with_order");
    trace_of(q, n);
    const auto chi = character_table(fq);
    const std::int64_t a2_limit = fq >= 5 ? 1 : fq;
    for (std::int64_t a2 = 0; a2 < a2_limit; ++a2)
        for (std::int64_t a4 = 0; a4 < fq; ++a4)
            for (std::int64_t a6 = 0; a6 < fq; ++a6) {
                std::optional<WeierstrassCurve> c;
                try {
                    c.emplace(fq, a2, a4, a6);
                } catch (const std::invalid_argument&) {
                    continue;
                }
                if (count_with(*c, chi) == n) return c;
            }
    return std::nullopt;
}

}  // namespace cyclescope
