#include "symdiv/reduction.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>

namespace symdiv {

namespace {

using Coord = std::array<int64_t, 2>;

// Coordinates in the pattern basis: (h) for the plane, (f1, f2) for the
// quadric, (s, f) for the one-point blowup.
std::optional<Coord> coords(const HomologyClass& c) {
    const Ambient& amb = c.ambient();
    switch (amb.kind()) {
        case AmbientKind::ProjectivePlane: return Coord{c[0], 0};
        case AmbientKind::ProductOfSpheres: return Coord{c[0], c[1]};
        case AmbientKind::RationalBlowup:
            if (amb.exceptional_count() != 1) return std::nullopt;
            // aH - bE1 = (a-b)s + bf
            return Coord{c[0] + c[1], -c[1]};
        default: return std::nullopt;
    }
}

struct Match {
    std::string id;
    int64_t k;
    std::vector<int> perm;
};

using Pattern = std::function<std::optional<int64_t>(const std::vector<Coord>&)>;

// (1, k) for some k
std::optional<int64_t> section_k(const Coord& c) {
    if (c[0] != 1) return std::nullopt;
    return c[1];
}

std::optional<MinimalModelTag> try_patterns(const std::vector<Coord>& xs, const std::vector<std::string>& ids,
                                            const std::vector<std::pair<std::string, Pattern>>& pats, bool swap) {
    std::vector<int> perm(xs.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<Match> best;
    for (const auto& [name, pat] : pats) {
        std::sort(perm.begin(), perm.end());
        do {
            for (int sw = 0; sw < (swap ? 2 : 1); ++sw) {
                std::vector<Coord> ys;
                for (int i : perm) ys.push_back(sw ? Coord{xs[i][1], xs[i][0]} : xs[i]);
                auto k = pat(ys);
                if (k && (!best || *k > best->k)) best = Match{name, *k, perm};
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (best) break;
    }
    if (!best) return std::nullopt;
    MinimalModelTag tag{best->id, best->k, static_cast<int>(xs.size()), {}};
    for (int i : best->perm) tag.order.push_back(ids[i]);
    return tag;
}

}  // namespace

std::optional<MinimalModelTag> classify_minimal_model(const DivisorConfig& config) {
    const auto& comps = config.components();
    if (comps.empty() || !validate(config).empty() || !is_connected(config)) return std::nullopt;
    std::vector<Coord> xs;
    std::vector<std::string> ids;
    for (const auto& c : comps) {
        if (c.genus != 0) return std::nullopt;
        auto x = coords(c.cls);
        if (!x) return std::nullopt;
        xs.push_back(*x);
        ids.push_back(c.id);
    }
    const size_t n = xs.size();
    const AmbientKind kind = config.ambient().kind();

    if (kind == AmbientKind::ProjectivePlane) {
        std::vector<int64_t> a;
        for (const auto& x : xs) a.push_back(x[0]);
        std::vector<int64_t> s = a;
        std::sort(s.begin(), s.end());
        auto tag = [&](const char* id, std::vector<std::string> order) {
            return MinimalModelTag{id, 0, static_cast<int>(n), std::move(order)};
        };
        if (s == std::vector<int64_t>{1}) return tag("A1'", ids);
        if (s == std::vector<int64_t>{2}) return tag("A3'", ids);
        if (s == std::vector<int64_t>{1, 1}) return tag("A2'", ids);
        if (s == std::vector<int64_t>{1, 2}) return tag("A1", a[0] == 1 ? ids : std::vector<std::string>{ids[1], ids[0]});
        if (s == std::vector<int64_t>{1, 1, 1}) return tag("A2", ids);
        return std::nullopt;
    }

    // Comb: one section-type component and any number of teeth in the fibre class.
    const Coord tooth{0, 1};
    const bool quadric = kind == AmbientKind::ProductOfSpheres;
    for (int sw = 0; sw < (quadric ? 2 : 1); ++sw) {
        int head = -1;
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i) {
            Coord c = sw ? Coord{xs[i][1], xs[i][0]} : xs[i];
            if (c == tooth) continue;
            if (head >= 0 || c[0] != 1) ok = false;
            else head = static_cast<int>(i);
        }
        if (!ok || head < 0) continue;
        MinimalModelTag t{quadric ? "B1'" : "C1'", sw ? xs[head][0] : xs[head][1], static_cast<int>(n), {ids[head]}};
        for (size_t i = 0; i < n; ++i)
            if (static_cast<int>(i) != head) t.order.push_back(ids[i]);
        return t;
    }

    std::vector<std::pair<std::string, Pattern>> pats;
    auto eq = [](const Coord& c, int64_t a, int64_t b) { return c[0] == a && c[1] == b; };
    if (quadric) {
        // (x, y) = x f1 + y f2
        pats = {
            {"B2'", [&](const std::vector<Coord>& y) -> std::optional<int64_t> {
                 if (y.size() != 3 || y[0][0] != 1 || y[0][1] < 0) return std::nullopt;
                 int64_t k = y[0][1];
                 if (eq(y[1], 0, 1) && eq(y[2], 1, -k)) return k;
                 return std::nullopt;
             }},
            {"B3'", [&](const std::vector<Coord>& y) -> std::optional<int64_t> {
                 if (y.size() != 2 || y[0][0] != 1 || y[0][1] < 1) return std::nullopt;
                 int64_t k = y[0][1] - 1;
                 if (eq(y[1], 1, -k)) return k;
                 return std::nullopt;
             }},
            {"B1", [&](const std::vector<Coord>& y) -> std::optional<int64_t> {
                 if (y.size() != 2 || y[0][1] != 1) return std::nullopt;
                 int64_t k = y[0][0];
                 if (eq(y[1], 2 - k, 1)) return k;
                 return std::nullopt;
             }},
            {"B2", [&](const std::vector<Coord>& y) -> std::optional<int64_t> {
                 if (y.size() != 3 || y[0][1] != 1) return std::nullopt;
                 int64_t k = y[0][0];
                 if (eq(y[1], 1, 0) && eq(y[2], 1 - k, 1)) return k;
                 return std::nullopt;
             }},
            {"B3", [&](const std::vector<Coord>& y) -> std::optional<int64_t> {
                 if (y.size() != 4 || y[0][1] != 1) return std::nullopt;
                 int64_t k = y[0][0];
                 if (eq(y[1], 1, 0) && eq(y[2], -k, 1) && eq(y[3], 1, 0)) return k;
                 return std::nullopt;
             }},
        };
    } else {
        // (a, b) = a s + b f
        pats = {
            {"C2'", [&](const std::vector<Coord>& y) -> std::optional<int64_t> {
                 if (y.size() != 3) return std::nullopt;
                 auto k = section_k(y[0]);
                 if (k && *k >= 0 && eq(y[1], 0, 1) && eq(y[2], 1, -1 - *k)) return k;
                 return std::nullopt;
             }},
            {"C3'", [&](const std::vector<Coord>& y) -> std::optional<int64_t> {
                 if (y.size() != 2) return std::nullopt;
                 auto k = section_k(y[0]);
                 if (k && *k >= 0 && eq(y[1], 1, -*k)) return k;
                 return std::nullopt;
             }},
            {"C1", [&](const std::vector<Coord>& y) -> std::optional<int64_t> {
                 if (y.size() != 2) return std::nullopt;
                 if (eq(y[0], 2, 0) && eq(y[1], 0, 1)) return 0;
                 auto k = section_k(y[0]);
                 if (k && eq(y[1], 1, 1 - *k)) return k;
                 return std::nullopt;
             }},
            {"C2", [&](const std::vector<Coord>& y) -> std::optional<int64_t> {
                 if (y.size() != 3) return std::nullopt;
                 auto k = section_k(y[0]);
                 if (k && eq(y[1], 0, 1) && eq(y[2], 1, -*k)) return k;
                 return std::nullopt;
             }},
            {"C3", [&](const std::vector<Coord>& y) -> std::optional<int64_t> {
                 if (y.size() != 4) return std::nullopt;
                 auto k = section_k(y[0]);
                 if (k && eq(y[1], 0, 1) && eq(y[2], 1, -*k - 1) && eq(y[3], 0, 1)) return k;
                 return std::nullopt;
             }},
        };
    }
    auto tag = try_patterns(xs, ids, pats, quadric);
    if (!tag) return std::nullopt;
    // Cyclic patterns list their components around the cycle.
    if (tag->id == "B3" || tag->id == "C3") {
        const auto& o = tag->order;
        for (size_t i = 0; i < o.size(); ++i)
            if (config.multiplicity(o[i], o[(i + 1) % o.size()]) != 1) return std::nullopt;
    }
    return tag;
}

}  // namespace symdiv
