#pragma once

// Builders and random generators shared by the unit tests and the acceptance runner.

#include "symdiv/certify.hpp"
#include "symdiv/inflation.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace symdiv::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

struct Spec {
    std::string id;
    std::string cls;
    int64_t genus = -1;  // -1: take it from adjunction
};

inline DivisorConfig make_config(const Ambient& amb, const std::vector<Spec>& comps,
                                 const std::vector<std::pair<std::string, std::string>>& edges = {}) {
    DivisorConfig cfg(amb);
    for (const auto& s : comps) {
        HomologyClass c = parse_class(amb, s.cls);
        int64_t g = s.genus >= 0 ? s.genus : adjunction_genus(c).value_or(0);
        cfg.add_component({s.id, c, g});
    }
    for (const auto& [a, b] : edges) cfg.add_edge(a, b);
    return cfg;
}

// Adds every edge the pairings force, with multiplicity.
inline DivisorConfig with_forced_edges(DivisorConfig cfg) {
    const auto comps = cfg.components();
    for (size_t i = 0; i < comps.size(); ++i)
        for (size_t j = i + 1; j < comps.size(); ++j)
            if (int64_t m = pair(comps[i].cls, comps[j].cls); m > 0) cfg.add_edge(comps[i].id, comps[j].id, static_cast<int>(m));
    return cfg;
}

inline AreaVector areas(const Ambient& amb, const std::vector<std::string>& w) {
    std::vector<Rational> v;
    for (const auto& s : w) v.push_back(parse_rational(s));
    return AreaVector(amb, v);
}

struct Sample {
    DivisorConfig config;
    AreaVector w;
};

// Minimal starting points with area(K+[D]) < 0; with allow_cycles also three
// lines and a conic plus a line, where area(K+[D]) = 0.
inline Sample base_sample(Rng& rng, bool allow_cycles) {
    const int pick = uniform(rng, 0, allow_cycles ? 5 : 3);
    const Ambient cp2 = Ambient::projective_plane();
    const AreaVector w1 = areas(cp2, {"1"});
    switch (pick) {
        case 0: return {make_config(cp2, {{"L1", "H"}}), w1};
        case 1: return {with_forced_edges(make_config(cp2, {{"L1", "H"}, {"L2", "H"}})), w1};
        case 2: return {make_config(cp2, {{"Q", "2H"}}), w1};
        case 3: {
            const int g = uniform(rng, 1, 2), m = uniform(rng, 0, 3);
            Ambient amb = Ambient::ruled_trivial(g, 0);
            std::vector<Spec> comps{{"S", "B"}};
            for (int i = 1; i <= m; ++i) comps.push_back({"T" + std::to_string(i), "F"});
            DivisorConfig cfg = with_forced_edges(make_config(amb, comps));
            return {cfg, AreaVector(amb, {Rational(2 * g + m + 1), Rational(1)})};
        }
        case 4: return {with_forced_edges(make_config(cp2, {{"L1", "H"}, {"L2", "H"}, {"L3", "H"}})), w1};
        default: return {with_forced_edges(make_config(cp2, {{"Q", "2H"}, {"L", "H"}})), w1};
    }
}

inline BlowupMove random_move(Rng& rng, const DivisorConfig& cfg) {
    BlowupMove mv;
    const auto& comps = cfg.components();
    const auto& edges = cfg.edges();
    int t = uniform(rng, 0, 3);
    if (t == 1 && edges.empty()) t = 2;
    if (comps.empty()) t = 0;
    mv.type = static_cast<BlowupType>(t);
    switch (mv.type) {
        case BlowupType::Exterior: mv.with_component = uniform(rng, 0, 1) == 1; break;
        case BlowupType::Toric: {
            const Edge& e = edges[uniform(rng, 0, static_cast<int>(edges.size()) - 1)];
            mv.a = e.a;
            mv.b = e.b;
            break;
        }
        default: mv.a = comps[uniform(rng, 0, static_cast<int>(comps.size()) - 1)].id;
    }
    return mv;
}

// Area for a new exceptional generator: below the move's threshold and below
// every existing exceptional area.
inline Rational small_area(const DivisorConfig& cfg, const AreaVector& w, const BlowupMove& mv) {
    Rational cap = w[0];
    for (int i = cfg.ambient().exceptional_offset(); i < cfg.ambient().rank(); ++i) cap = std::min(cap, w[i]);
    if (auto thr = blowup_area_threshold(cfg, w, mv)) cap = std::min(cap, *thr);
    return cap / 3;
}

// Random configuration reached by `steps` random blowups of a minimal start.
// With allow_cycles = false every configuration along the way satisfies the
// area hypothesis.
inline Sample random_sample(Rng& rng, int steps, bool allow_cycles) {
    Sample s = base_sample(rng, allow_cycles);
    for (int i = 0; i < steps; ++i) {
        BlowupMove mv = random_move(rng, s.config);
        Rational e = small_area(s.config, s.w, mv);
        BlowupResult r = blowup(s.config, mv);
        s.w = extend_areas(s.w, r.ext, e);
        s.config = std::move(r.config);
    }
    return s;
}

// Isometric image of a configuration under the reflection x -> x + (x.c) c
// in a class c with c^2 = -2 and K.c = 0.
inline HomologyClass reflect(const HomologyClass& x, const HomologyClass& c) { return x + pair(x, c) * c; }

inline Sample reflect_sample(const Sample& s, const HomologyClass& c) {
    DivisorConfig out(s.config.ambient());
    for (const auto& comp : s.config.components()) out.add_component({comp.id, reflect(comp.cls, c), comp.genus});
    for (const auto& e : s.config.edges()) out.add_edge(e.a, e.b, e.mult);
    std::vector<Rational> w;
    for (int i = 0; i < s.config.ambient().rank(); ++i) w.push_back(area(reflect(generator(s.config.ambient(), i), c), s.w));
    return {out, AreaVector(s.config.ambient(), w)};
}

// Same ids, genera, pairings, edges and component areas.
inline bool isometric(const DivisorConfig& x, const AreaVector& wx, const DivisorConfig& y, const AreaVector& wy) {
    const auto &a = x.components(), &b = y.components();
    if (a.size() != b.size() || x.edges() != y.edges() || x.ambient().rank() != y.ambient().rank()) return false;
    const HomologyClass kx = canonical(x.ambient()), ky = canonical(y.ambient());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].id != b[i].id || a[i].genus != b[i].genus) return false;
        if (pair(a[i].cls, kx) != pair(b[i].cls, ky) || area(a[i].cls, wx) != area(b[i].cls, wy)) return false;
        for (size_t j = 0; j < a.size(); ++j)
            if (pair(a[i].cls, a[j].cls) != pair(b[i].cls, b[j].cls)) return false;
    }
    return true;
}

struct Chain {
    DivisorConfig config;
    std::vector<std::string> order;
};

// A chain of spheres grown from a minimal chain by toric blowups at its
// edges, non-toric blowups and half-toric blowups at its ends.
inline Chain random_chain(Rng& rng) {
    const Ambient cp21 = Ambient::rational_blowup(1);
    Chain ch{DivisorConfig(cp21), {}};
    const int start = uniform(rng, 0, 3);
    const int k = uniform(rng, 0, 2);
    // s + k f = (1+k)H - kE1, f = H - E1
    const std::string sec = std::to_string(1 + k) + "H" + (k ? "-" + std::to_string(k) + "E1" : "");
    switch (start) {
        case 0: ch.config = make_config(cp21, {{"A", "H-E1"}, {"B", sec}, {"C", "H-E1"}}); break;
        case 1: ch.config = make_config(cp21, {{"A", sec}, {"B", "H-E1"}}); break;
        case 2: ch.config = make_config(cp21, {{"A", "H-E1"}, {"B", sec}}); break;
        default: ch.config = make_config(Ambient::projective_plane(), {{"A", "H"}, {"B", "H"}}); break;
    }
    ch.config = with_forced_edges(ch.config);
    for (const auto& c : ch.config.components()) ch.order.push_back(c.id);

    const int steps = uniform(rng, 0, 9);
    for (int i = 0; i < steps; ++i) {
        const int len = static_cast<int>(ch.order.size());
        BlowupMove mv;
        const int t = uniform(rng, 0, 2);
        int pos = 0;
        if (t == 0) {
            pos = uniform(rng, 0, len - 2);
            mv = {BlowupType::Toric, ch.order[pos], ch.order[pos + 1]};
        } else if (t == 1) {
            mv = {BlowupType::NonToric, ch.order[uniform(rng, 0, len - 1)]};
        } else {
            pos = uniform(rng, 0, 1) ? len - 1 : 0;
            mv = {BlowupType::HalfToric, ch.order[pos]};
        }
        BlowupResult r = blowup(ch.config, mv);
        ch.config = std::move(r.config);
        if (t == 0) ch.order.insert(ch.order.begin() + pos + 1, r.new_component);
        if (t == 2) ch.order.insert(pos == 0 ? ch.order.begin() : ch.order.end(), r.new_component);
    }
    if (uniform(rng, 0, 1)) std::reverse(ch.order.begin(), ch.order.end());
    return ch;
}

struct AdmissibleChain {
    Chain chain;
    Admissible adm;
};

// Draws chains until one has an admissible prefix with |a_i| <= 6 and k <= 8.
// Not every admissible integer sequence embeds in a lattice with one positive
// direction, so sequences are drawn from realised chains.
inline AdmissibleChain random_admissible_chain(Rng& rng) {
    while (true) {
        Chain ch = random_chain(rng);
        const int len = static_cast<int>(ch.order.size());
        const int k = uniform(rng, 1, std::min(8, len - 1));
        std::vector<int64_t> a;
        bool small = true;
        for (int i = 0; i < k; ++i) {
            a.push_back(-square(ch.config.component(ch.order[i]).cls));
            small = small && std::abs(a.back()) <= 6;
        }
        if (!small) continue;
        Admissible adm = admissible_check(a);
        if (adm.accepted) return {std::move(ch), std::move(adm)};
    }
}

struct ModelCase {
    std::string name;
    std::string expect;  // empty: none
    int64_t k = 0;
    DivisorConfig config;
};

// One configuration for every minimal model, then near misses.
inline std::vector<ModelCase> minimal_model_cases() {
    const Ambient P = Ambient::projective_plane();
    const Ambient Q = Ambient::product_of_spheres();
    const Ambient C = Ambient::rational_blowup(1);
    auto cfg = [](const Ambient& amb, std::vector<Spec> comps) { return with_forced_edges(make_config(amb, comps)); };
    // In the one-point blowup: s + k f = (1+k)H - kE1, f = H - E1.
    return {
        {"A1", "A1", 0, cfg(P, {{"D1", "H"}, {"D2", "2H"}})},
        {"A2", "A2", 0, cfg(P, {{"D1", "H"}, {"D2", "H"}, {"D3", "H"}})},
        {"B1", "B1", 3, cfg(Q, {{"D1", "3f1+f2"}, {"D2", "-f1+f2"}})},
        {"B2", "B2", 2, cfg(Q, {{"D1", "2f1+f2"}, {"D2", "f1"}, {"D3", "-f1+f2"}})},
        {"B3", "B3", 1, cfg(Q, {{"D1", "f1+f2"}, {"D2", "f1"}, {"D3", "-f1+f2"}, {"D4", "f1"}})},
        {"C1", "C1", 2, cfg(C, {{"D1", "3H-2E1"}, {"D2", "E1"}})},
        {"C2", "C2", 1, cfg(C, {{"D1", "2H-E1"}, {"D2", "H-E1"}, {"D3", "E1"}})},
        {"C3", "C3", 1, cfg(C, {{"D1", "2H-E1"}, {"D2", "H-E1"}, {"D3", "-H+2E1"}, {"D4", "H-E1"}})},
        {"A1'", "A1'", 0, cfg(P, {{"D1", "H"}})},
        {"A2'", "A2'", 0, cfg(P, {{"D1", "H"}, {"D2", "H"}})},
        {"A3'", "A3'", 0, cfg(P, {{"D1", "2H"}})},
        {"B1'", "B1'", 2, cfg(Q, {{"D1", "f1+2f2"}, {"D2", "f2"}, {"D3", "f2"}})},
        {"B2'", "B2'", 1, cfg(Q, {{"D1", "f1+f2"}, {"D2", "f2"}, {"D3", "f1-f2"}})},
        {"B3'", "B3'", 1, cfg(Q, {{"D1", "f1+2f2"}, {"D2", "f1-f2"}})},
        {"C1'", "C1'", 1, cfg(C, {{"D1", "2H-E1"}, {"D2", "H-E1"}, {"D3", "H-E1"}})},
        {"C2'", "C2'", 1, cfg(C, {{"D1", "2H-E1"}, {"D2", "H-E1"}, {"D3", "-H+2E1"}})},
        {"C3'", "C3'", 1, cfg(C, {{"D1", "2H-E1"}, {"D2", "E1"}})},

        {"cubic", "", 0, cfg(P, {{"D1", "3H"}})},
        {"four lines", "", 0, cfg(P, {{"D1", "H"}, {"D2", "H"}, {"D3", "H"}, {"D4", "H"}})},
        {"line, conic, line", "", 0, cfg(P, {{"D1", "H"}, {"D2", "2H"}, {"D3", "H"}})},
        {"two conics", "", 0, cfg(P, {{"D1", "2H"}, {"D2", "2H"}})},
        {"two conics and a line", "", 0, cfg(P, {{"D1", "2H"}, {"D2", "2H"}, {"D3", "H"}})},
        {"line in a blowup", "", 0, cfg(Ambient::rational_blowup(2), {{"D1", "H"}})},
        {"irrational ruled comb", "", 0, cfg(Ambient::ruled_trivial(1, 0), {{"D1", "B"}, {"D2", "F"}})},
        {"twisted section", "", 0, cfg(Ambient::ruled_twisted(1), {{"D1", "B1"}})},
        {"bidegree (2,2)", "", 0, cfg(Q, {{"D1", "2f1+2f2"}})},
        {"three diagonals", "", 0, cfg(Q, {{"D1", "f1+f2"}, {"D2", "f1+f2"}, {"D3", "f1+f2"}})},
        {"disjoint rulings", "", 0, cfg(Q, {{"D1", "f1"}, {"D2", "f1"}})},
        {"orthogonal sections", "", 0, cfg(Q, {{"D1", "f1+f2"}, {"D2", "f1-f2"}})},
        {"two (2,1) curves", "", 0, cfg(Q, {{"D1", "2f1+f2"}, {"D2", "2f1+f2"}})},
        {"sections meeting thrice", "", 0, cfg(C, {{"D1", "2H-E1"}, {"D2", "2H-E1"}})},
        {"lone fibre", "", 0, cfg(C, {{"D1", "H-E1"}})},
        {"disjoint fibres", "", 0, cfg(C, {{"D1", "H-E1"}, {"D2", "H-E1"}})},
        {"square with a diagonal", "", 0,
         cfg(C, {{"D1", "2H-E1"}, {"D2", "H-E1"}, {"D3", "E1"}, {"D4", "H-E1"}})},
        {"elliptic bisection", "", 0, cfg(C, {{"D1", "3H-E1"}})},
        {"double line and line", "", 0, cfg(C, {{"D1", "2H"}, {"D2", "H"}})},
        {"triangle with a double edge", "", 0, cfg(C, {{"D1", "3H-2E1"}, {"D2", "H-E1"}, {"D3", "E1"}})},
    };
}

}  // namespace symdiv::testing
