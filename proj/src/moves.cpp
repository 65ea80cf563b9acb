#include "symdiv/moves.hpp"

#include "symdiv/exceptional.hpp"

#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace symdiv {

std::string type_name(BlowupType t) {
    switch (t) {
        case BlowupType::Exterior: return "exterior";
        case BlowupType::Toric: return "toric";
        case BlowupType::NonToric: return "non-toric";
        case BlowupType::HalfToric: return "half-toric";
    }
    return "?";
}

std::optional<BlowupType> parse_type(const std::string& s) {
    for (auto t : {BlowupType::Exterior, BlowupType::Toric, BlowupType::NonToric, BlowupType::HalfToric})
        if (type_name(t) == s) return t;
    return std::nullopt;
}

HomologyClass LatticeMap::apply(const HomologyClass& c) const {
    if (c.ambient() != from) throw std::invalid_argument("lattice map applied to a class of another ambient");
    HomologyClass out(to);
    for (int i = 0; i < from.rank(); ++i)
        if (c[i] != 0) out += c[i] * images[i];
    return out;
}

namespace {

LatticeMap append_zero(const Ambient& from, const Ambient& to) {
    LatticeMap m{from, to, {}};
    for (int i = 0; i < from.rank(); ++i) {
        std::vector<int64_t> v(to.rank(), 0);
        v[i] = 1;
        m.images.emplace_back(to, v);
    }
    return m;
}

std::string unused_id(const DivisorConfig& config, std::string base) {
    if (config.index_of(base) < 0) return base;
    for (int k = 2;; ++k) {
        std::string cand = base + "_" + std::to_string(k);
        if (config.index_of(cand) < 0) return cand;
    }
}

}  // namespace

LatticeExtension extend_lattice(const Ambient& amb, const std::string& label_in) {
    std::string label = label_in.empty() ? amb.fresh_label() : label_in;
    switch (amb.kind()) {
        case AmbientKind::ProjectivePlane: {
            Ambient to = Ambient::rational_blowup(std::vector<std::string>{label});
            return {to, append_zero(amb, to), generator(to, 1)};
        }
        case AmbientKind::RationalBlowup: {
            auto labels = amb.exceptional_labels();
            labels.push_back(label);
            Ambient to = Ambient::rational_blowup(labels);
            return {to, append_zero(amb, to), generator(to, to.rank() - 1)};
        }
        case AmbientKind::RuledTrivial: {
            auto labels = amb.exceptional_labels();
            labels.push_back(label);
            Ambient to = Ambient::ruled_trivial(amb.base_genus(), labels);
            return {to, append_zero(amb, to), generator(to, to.rank() - 1)};
        }
        case AmbientKind::ProductOfSpheres: {
            // f1 -> H-E1, f2 -> H-E2, new class H-E1-E2.
            Ambient to = Ambient::rational_blowup(2);
            LatticeMap m{amb, to, {HomologyClass(to, {1, -1, 0}), HomologyClass(to, {1, 0, -1})}};
            return {to, m, HomologyClass(to, {1, -1, -1})};
        }
        case AmbientKind::RuledTwisted: break;
    }
    throw std::invalid_argument("blowups of the twisted ruled surface are not supported");
}

DivisorConfig apply_blowup(const DivisorConfig& config, const LatticeMap& embed, const HomologyClass& e,
                           const BlowupMove& move, int insert_position) {
    DivisorConfig out(embed.to);
    for (const auto& c : config.components()) out.add_component({c.id, embed.apply(c.cls), c.genus});
    for (const auto& ed : config.edges()) out.add_edge(ed.a, ed.b, ed.mult);

    auto require = [&](const std::string& id) {
        if (config.index_of(id) < 0) throw std::invalid_argument("blowup target " + id + " is not a component");
    };
    std::string label = embed.to.basis()[embed.to.rank() - 1];
    std::string new_id = move.new_id.empty() ? unused_id(config, "e_" + label) : move.new_id;
    switch (move.type) {
        case BlowupType::Exterior:
            if (move.with_component) out.add_component({new_id, e, 0}, insert_position);
            break;
        case BlowupType::Toric:
            require(move.a);
            require(move.b);
            if (move.a == move.b || config.multiplicity(move.a, move.b) < 1)
                throw std::invalid_argument("no edge " + move.a + "--" + move.b + " for a toric blowup");
            out.component(move.a).cls -= e;
            out.component(move.b).cls -= e;
            out.remove_edge(move.a, move.b);
            out.add_component({new_id, e, 0}, insert_position);
            out.add_edge(new_id, move.a);
            out.add_edge(new_id, move.b);
            break;
        case BlowupType::NonToric:
            require(move.a);
            out.component(move.a).cls -= e;
            break;
        case BlowupType::HalfToric:
            require(move.a);
            out.component(move.a).cls -= e;
            out.add_component({new_id, e, 0}, insert_position);
            out.add_edge(new_id, move.a);
            break;
    }
    return out;
}

BlowupResult blowup(const DivisorConfig& config, const BlowupMove& move) {
    LatticeExtension ext = extend_lattice(config.ambient(), move.new_label);
    BlowupMove m = move;
    if (m.new_id.empty()) m.new_id = unused_id(config, "e_" + ext.to.basis()[ext.to.rank() - 1]);
    DivisorConfig out = apply_blowup(config, ext.embed, ext.e, m, -1);
    bool added = m.type != BlowupType::NonToric && !(m.type == BlowupType::Exterior && !m.with_component);
    return {std::move(out), std::move(ext), added ? m.new_id : std::string()};
}

AreaVector extend_areas(const AreaVector& w, const LatticeExtension& ext, const Rational& e_area) {
    const Ambient& from = w.ambient();
    if (from.kind() == AmbientKind::ProductOfSpheres) {
        // H = f1+f2-e, E1 = f2-e, E2 = f1-e.
        return AreaVector(ext.to, {w[0] + w[1] - e_area, w[1] - e_area, w[0] - e_area});
    }
    std::vector<Rational> v = w.values();
    v.push_back(e_area);
    return AreaVector(ext.to, v);
}

std::optional<Rational> blowup_area_threshold(const DivisorConfig& config, const AreaVector& w,
                                              const BlowupMove& move) {
    Rational v = hypothesis_value(config, w);
    std::optional<Rational> bound;
    auto tighten = [&](const Rational& b) {
        if (!bound || b < *bound) bound = b;
    };
    switch (move.type) {
        case BlowupType::Exterior: tighten(move.with_component ? Rational(-v / 2) : Rational(-v)); break;
        case BlowupType::Toric:
            tighten(area(config.component(move.a).cls, w));
            tighten(area(config.component(move.b).cls, w));
            break;
        case BlowupType::NonToric: tighten(area(config.component(move.a).cls, w)); break;
        case BlowupType::HalfToric:
            tighten(-v);
            tighten(area(config.component(move.a).cls, w));
            break;
    }
    if (config.ambient().kind() == AmbientKind::ProductOfSpheres) {
        tighten(w[0]);
        tighten(w[1]);
    }
    return bound;
}

std::optional<BlowupType> classify_blowdown(const DivisorConfig& config, const HomologyClass& e, std::string* why) {
    auto fail = [&](const std::string& msg) -> std::optional<BlowupType> {
        if (why) *why = msg;
        return std::nullopt;
    };
    if (!is_exceptional_class(e)) return fail(e.str() + " is not an exceptional class");
    std::vector<std::string> carriers;
    for (const auto& c : config.components())
        if (c.cls == e) carriers.push_back(c.id);
    if (carriers.size() > 1) return fail("several components carry " + e.str());
    if (carriers.size() == 1) {
        const std::string& id = carriers[0];
        auto nb = config.neighbors(id);
        int deg = config.degree(id);
        if (deg != static_cast<int>(nb.size())) return fail("component " + id + " meets a neighbour twice");
        if (deg == 2) return BlowupType::Toric;
        if (deg == 1) return BlowupType::HalfToric;
        if (deg == 0) return BlowupType::Exterior;
        return fail("component " + id + " meets " + std::to_string(deg) + " other components");
    }
    int ones = 0;
    for (const auto& c : config.components()) {
        int64_t p = pair(c.cls, e);
        if (p < 0) return fail(e.str() + " pairs negatively with " + c.id);
        if (p > 1) return fail(e.str() + " pairs " + std::to_string(p) + " with " + c.id);
        ones += static_cast<int>(p);
    }
    if (ones == 0) return BlowupType::Exterior;
    if (ones == 1) return BlowupType::NonToric;
    return fail(e.str() + " meets " + std::to_string(ones) + " components without being one");
}

BlowdownResult blowdown(const DivisorConfig& config, const HomologyClass& e) {
    std::string why;
    auto type = classify_blowdown(config, e, &why);
    if (!type) throw std::invalid_argument("no blowdown pattern: " + why);
    const Ambient& pre = config.ambient();

    std::optional<Ambient> post;
    std::function<std::vector<int64_t>(const HomologyClass&)> coords;
    std::vector<HomologyClass> images;
    int reflections = 0;

    const bool plane = pre.kind() == AmbientKind::RationalBlowup && pre.exceptional_count() == 1;
    const bool quadric = pre.kind() == AmbientKind::RationalBlowup && pre.exceptional_count() == 2 &&
                         e == HomologyClass(pre, {1, -1, -1});
    if (plane) {
        if (e != generator(pre, 1)) throw std::invalid_argument("unexpected exceptional class in CP2#1");
        post = Ambient::projective_plane();
        coords = [](const HomologyClass& c) { return std::vector<int64_t>{c[0]}; };
        images = {generator(pre, 0)};
    } else if (quadric) {
        post = Ambient::product_of_spheres();
        HomologyClass g1(pre, {1, -1, 0}), g2(pre, {1, 0, -1});
        coords = [g1, g2](const HomologyClass& c) { return std::vector<int64_t>{pair(c, g2), pair(c, g1)}; };
        images = {g1, g2};
    } else {
        Normalization nz = normalize_to_basis(e);
        reflections = nz.reflections;
        auto labels = nz.labels;
        labels.pop_back();
        if (pre.kind() == AmbientKind::RationalBlowup) post = Ambient::rational_blowup(labels);
        else if (pre.kind() == AmbientKind::RuledTrivial) post = Ambient::ruled_trivial(pre.base_genus(), labels);
        else throw std::invalid_argument("no exceptional classes in " + pre.describe());
        auto m = nz.matrix;
        coords = [m](const HomologyClass& c) {
            auto v = apply_matrix(m, c.coeffs());
            if (v.back() != 0) throw std::logic_error("projected class keeps a component along the blown-down generator");
            v.pop_back();
            return v;
        };
        for (int i = 0; i < post->rank(); ++i) {
            std::vector<int64_t> v(pre.rank(), 0);
            v[i] = 1;
            images.emplace_back(pre, apply_matrix(nz.inverse, v));
        }
    }

    BlowdownResult res{DivisorConfig(*post), *type, e, "", -1, {}, LatticeMap{*post, pre, images}, reflections};
    for (size_t i = 0; i < config.components().size(); ++i) {
        const auto& c = config.components()[i];
        if (c.cls == e && (*type != BlowupType::NonToric)) {
            if (res.removed_component.empty() &&
                (*type == BlowupType::Toric || *type == BlowupType::HalfToric || config.degree(c.id) == 0)) {
                res.removed_component = c.id;
                res.removed_position = static_cast<int>(i);
                continue;
            }
        }
        int64_t p = pair(c.cls, e);
        if (p == 1) res.incident.push_back(c.id);
        HomologyClass proj = c.cls + p * e;
        res.config.add_component({c.id, HomologyClass(*post, coords(proj)), c.genus});
    }
    for (const auto& ed : config.edges())
        if (ed.a != res.removed_component && ed.b != res.removed_component) res.config.add_edge(ed.a, ed.b, ed.mult);
    if (*type == BlowupType::Toric) {
        if (res.incident.size() != 2) throw std::logic_error("toric blowdown without two neighbours");
        res.config.add_edge(res.incident[0], res.incident[1]);
    }
    auto issues = validate(res.config);
    if (!issues.empty()) throw std::logic_error("blowdown produced an invalid configuration: " + issues.front());
    return res;
}

AreaVector transport_areas(const AreaVector& w_pre, const LatticeMap& embed) {
    std::vector<Rational> v;
    for (const auto& img : embed.images) v.push_back(area(img, w_pre));
    return AreaVector(embed.from, v);
}

BlowupMove inverse_move(const BlowdownResult& step) {
    BlowupMove m;
    m.type = step.type;
    if (step.type == BlowupType::Toric) {
        m.a = step.incident.at(0);
        m.b = step.incident.at(1);
    } else if (step.type == BlowupType::NonToric || step.type == BlowupType::HalfToric) {
        m.a = step.incident.at(0);
    }
    m.with_component = step.type == BlowupType::Exterior && !step.removed_component.empty();
    m.new_id = step.removed_component;
    return m;
}

DivisorConfig replay_blowdown(const DivisorConfig& post, const BlowdownResult& step) {
    return apply_blowup(post, step.embed, step.target, inverse_move(step), step.removed_position);
}

SelfIntSeq toric_seq_blowup(const SelfIntSeq& seq, int k) {
    const int n = static_cast<int>(seq.size());
    if (k < 1 || k > n - 1) throw std::out_of_range("toric blowup position " + std::to_string(k));
    SelfIntSeq out(seq.begin(), seq.begin() + k);
    out.back() -= 1;
    out.push_back(-1);
    out.push_back(seq[k] - 1);
    out.insert(out.end(), seq.begin() + k + 1, seq.end());
    return out;
}

ToricSeqVerdict is_toric_blowup_seq(const SelfIntSeq& seq) {
    std::set<SelfIntSeq> dead;
    std::function<bool(const SelfIntSeq&, std::vector<int>&)> search = [&](const SelfIntSeq& s,
                                                                           std::vector<int>& witness) {
        const int64_t n = static_cast<int64_t>(s.size());
        if (n < 2) return false;
        if (n == 2) return s[0] == 0 && s[1] == 0;
        if (std::accumulate(s.begin(), s.end(), int64_t{0}) != -3 * (n - 2)) return false;
        if (dead.count(s)) return false;
        for (int64_t j = 1; j + 1 < n; ++j) {
            if (s[j] != -1) continue;
            SelfIntSeq t(s.begin(), s.begin() + j);
            t.back() += 1;
            t.push_back(s[j + 1] + 1);
            t.insert(t.end(), s.begin() + j + 2, s.end());
            if (search(t, witness)) {
                witness.push_back(static_cast<int>(j));
                return true;
            }
        }
        dead.insert(s);
        return false;
    };
    ToricSeqVerdict v;
    v.reachable = search(seq, v.witness);
    if (!v.reachable) v.witness.clear();
    return v;
}

SelfIntSeq replay_toric_witness(const std::vector<int>& witness) {
    SelfIntSeq s{0, 0};
    for (int k : witness) s = toric_seq_blowup(s, k);
    return s;
}

}  // namespace symdiv
