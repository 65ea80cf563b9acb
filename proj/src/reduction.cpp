#include "symdiv/reduction.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <tuple>

namespace symdiv {

std::string terminal_name(TraceTerminal t) {
    switch (t) {
        case TraceTerminal::QuasiMinimalFirstKind: return "quasi-minimal-first-kind";
        case TraceTerminal::QuasiMinimalSecondKind: return "quasi-minimal-second-kind";
        case TraceTerminal::SmallB2: return "small-b2";
        case TraceTerminal::MinimalRuled: return "minimal-ruled";
        case TraceTerminal::Stuck: return "stuck";
    }
    return "?";
}

int b2(const Ambient& amb) { return amb.rank(); }

namespace {

void require_input(const DivisorConfig& config, const AreaVector& w, bool rational) {
    if (w.ambient() != config.ambient()) throw std::invalid_argument("area vector and configuration disagree on the ambient");
    if (rational && !config.ambient().is_rational()) throw std::invalid_argument("expected a rational ambient");
    if (!rational && !config.ambient().is_ruled()) throw std::invalid_argument("expected an irrational ruled ambient");
    auto issues = validate(config, &w);
    if (!issues.empty()) throw std::invalid_argument("invalid configuration: " + issues.front());
    if (rational && !is_connected(config)) throw std::invalid_argument("configuration is not connected");
    if (!check_hypothesis(config, w))
        throw std::invalid_argument("hypothesis fails: area(K+[D]) = " + to_string(hypothesis_value(config, w)));
}

void record(Reduction& r, BlowdownResult bd, std::string reason) {
    TraceStep s{std::move(bd), r.config, r.w, r.w, false, Rational(0), std::move(reason)};
    s.w_after = transport_areas(r.w, s.move.embed);
    s.value_after = hypothesis_value(s.move.config, s.w_after);
    s.hypothesis_after = s.value_after < 0;
    if (!s.hypothesis_after) r.trace.notes.push_back("hypothesis lost after blowing down " + s.move.target.str());
    r.config = s.move.config;
    r.w = s.w_after;
    r.trace.steps.push_back(std::move(s));
}

Reduction stuck(Reduction r, std::string why) {
    r.trace.terminal = TraceTerminal::Stuck;
    r.trace.stuck_reason = std::move(why);
    return r;
}

Rational max_generator_area(const AreaVector& w) {
    Rational m = 1;
    for (const auto& v : w.values())
        if (v > m) m = v;
    return m;
}

int type_rank(BlowupType t) {
    switch (t) {
        case BlowupType::Toric: return 0;
        case BlowupType::HalfToric: return 1;
        case BlowupType::NonToric: return 2;
        case BlowupType::Exterior: return 3;
    }
    return 4;
}

bool is_component_class(const DivisorConfig& config, const HomologyClass& e) {
    for (const auto& c : config.components())
        if (c.cls == e) return true;
    return false;
}

// Cycle formed by a chain D and the curve in class e_min joining its ends.
std::optional<SelfIntSeq> completed_cycle(const DivisorConfig& config, const HomologyClass& e_min) {
    auto order = chain_order(config);
    if (!order) return std::nullopt;
    SelfIntSeq seq;
    for (const auto& id : *order) seq.push_back(square(config.component(id).cls));
    std::vector<int64_t> p;
    for (const auto& id : *order) p.push_back(pair(config.component(id).cls, e_min));
    const size_t l = order->size();
    if (l == 1) {
        if (p[0] != 2) return std::nullopt;
    } else {
        if (p.front() != 1 || p.back() != 1) return std::nullopt;
        for (size_t i = 1; i + 1 < l; ++i)
            if (p[i] != 0) return std::nullopt;
    }
    seq.push_back(square(e_min));
    return seq;
}

struct Candidate {
    Rational area;
    BlowupType type;
    HomologyClass cls;
};

bool better(const Candidate& x, const Candidate& y) {
    if (x.area != y.area) return x.area < y.area;
    if (type_rank(x.type) != type_rank(y.type)) return type_rank(x.type) < type_rank(y.type);
    return x.cls < y.cls;
}

std::vector<Candidate> nontoric_candidates(const DivisorConfig& config, const AreaVector& w, const HomologyClass& e_min,
                                           const Rational& bound, int64_t coeff_bound) {
    std::vector<Candidate> out;
    ExceptionalSet set = enumerate_exceptional(w, bound, coeff_bound);
    HomologyClass total = total_class(config);
    for (size_t i = 0; i < set.classes.size(); ++i) {
        const auto& e = set.classes[i];
        if (e == e_min || pair(e, e_min) != 0 || is_component_class(config, e)) continue;
        bool nonneg = std::all_of(config.components().begin(), config.components().end(),
                                  [&](const Component& c) { return pair(e, c.cls) >= 0; });
        if (!nonneg) continue;
        if (pair(e, total) != 1)
            throw std::logic_error(e.str() + " is orthogonal to E_min but pairs " + std::to_string(pair(e, total)) +
                                   " with [D]");
        auto t = classify_blowdown(config, e);
        if (t != BlowupType::NonToric) continue;
        out.push_back({set.areas[i], *t, e});
    }
    return out;
}

}  // namespace

Reduction quasi_minimal_reduce(const DivisorConfig& config, const AreaVector& w, const ReduceOptions& opt) {
    require_input(config, w, true);
    Reduction r{config, w, {}};
    for (int step = 0;; ++step) {
        if (b2(r.config.ambient()) <= 2) {
            r.trace.terminal = TraceTerminal::SmallB2;
            return r;
        }
        if (step >= opt.max_steps) return stuck(std::move(r), "step limit reached");
        ExceptionalSet set = enumerate_exceptional(r.w, default_area_bound(r.w), opt.coeff_bound);
        if (set.incomplete) r.trace.notes.push_back("minimal-area search incomplete at " + r.config.ambient().describe());
        auto mins = minimal_area(set);
        if (mins.empty()) return stuck(std::move(r), "no exceptional class within the coefficient bound");
        HomologyClass total = total_class(r.config);
        bool quasi = std::any_of(mins.begin(), mins.end(), [&](const HomologyClass& e) { return pair(e, total) >= 2; });
        if (quasi) {
            KindVerdict kv = classify_kind(r.config, r.w, opt.coeff_bound);
            r.trace.terminal = kv.kind == PairKind::FirstKind ? TraceTerminal::QuasiMinimalFirstKind
                                                              : TraceTerminal::QuasiMinimalSecondKind;
            return r;
        }
        std::string why_all;
        bool moved = false;
        for (const auto& e : mins) {
            std::string why;
            auto t = classify_blowdown(r.config, e, &why);
            if (!t) {
                why_all += (why_all.empty() ? "" : "; ") + why;
                continue;
            }
            std::string reason = "minimal class " + e.str() + " pairs " + std::to_string(pair(e, total)) + " with [D]";
            if (*t == BlowupType::HalfToric || (*t == BlowupType::Exterior && is_component_class(r.config, e)))
                reason += " (carrier with at most one neighbour)";
            record(r, blowdown(r.config, e), reason);
            moved = true;
            break;
        }
        if (!moved) return stuck(std::move(r), "no minimal class can be blown down: " + why_all);
    }
}

KindVerdict classify_kind(const DivisorConfig& config, const AreaVector& w, int64_t coeff_bound) {
    ExceptionalSet set = enumerate_exceptional(w, default_area_bound(w), coeff_bound);
    auto mins = minimal_area(set);
    HomologyClass total = total_class(config);
    HomologyClass c = -(total + canonical(config.ambient()));
    if (mins.size() != 1 || mins[0] != c)
        throw std::logic_error("-[D]-K = " + c.str() + " is not the unique minimal exceptional class");
    if (pair(c, total) != 2)
        throw std::logic_error("-[D]-K pairs " + std::to_string(pair(c, total)) + " with [D], expected 2");
    for (const auto& comp : config.components()) {
        if (comp.cls != c) continue;
        if (config.neighbors(comp.id).size() != 3)
            throw std::logic_error("component " + comp.id + " carries E_min but does not meet three others");
        return {PairKind::SecondKind, c, comp.id};
    }
    return {PairKind::FirstKind, c, ""};
}

Reduction partially_minimal_reduce(const DivisorConfig& config, const AreaVector& w, const ReduceOptions& opt) {
    require_input(config, w, true);
    Reduction r{config, w, {}};
    for (int step = 0;; ++step) {
        if (b2(r.config.ambient()) <= 2) {
            r.trace.terminal = TraceTerminal::SmallB2;
            return r;
        }
        if (step >= opt.max_steps) return stuck(std::move(r), "step limit reached");
        KindVerdict kv = classify_kind(r.config, r.w, opt.coeff_bound);
        if (kv.kind != PairKind::FirstKind) throw std::logic_error("partial reduction reached a pair of second kind");

        std::vector<Candidate> toric;
        HomologyClass total = total_class(r.config);
        for (const auto& c : r.config.components()) {
            if (square(c.cls) != -1 || pair(c.cls, total - c.cls) != 2) continue;
            if (classify_blowdown(r.config, c.cls) != BlowupType::Toric) continue;
            if (pair(c.cls, kv.e_min) != 0)
                throw std::logic_error("toric (-1)-component " + c.id + " is not orthogonal to E_min");
            toric.push_back({area(c.cls, r.w), BlowupType::Toric, c.cls});
        }

        if (toric.empty()) {
            auto cyc = completed_cycle(r.config, kv.e_min);
            if (cyc && cycle_reduces_to_minimal(*cyc)) {
                auto left = nontoric_candidates(r.config, r.w, kv.e_min, max_generator_area(r.w), opt.coeff_bound);
                for (const auto& c : left)
                    r.trace.notes.push_back("non-toric class " + c.cls.str() +
                                            " orthogonal to E_min remains; the completed cycle is toric-minimal");
                r.trace.terminal = TraceTerminal::QuasiMinimalFirstKind;
                return r;
            }
        }

        std::vector<Candidate> cands = toric;
        if (!toric.empty()) {
            Rational bound = std::min_element(toric.begin(), toric.end(), better)->area;
            auto nt = nontoric_candidates(r.config, r.w, kv.e_min, bound, opt.coeff_bound);
            cands.insert(cands.end(), nt.begin(), nt.end());
        } else {
            Rational bound = max_generator_area(r.w);
            for (int tries = 0; tries < 20 && cands.empty(); ++tries, bound *= 2)
                cands = nontoric_candidates(r.config, r.w, kv.e_min, bound, opt.coeff_bound);
        }
        if (cands.empty()) return stuck(std::move(r), "no toric component and no non-toric class within the area bounds");
        const Candidate& best = *std::min_element(cands.begin(), cands.end(), better);
        record(r, blowdown(r.config, best.cls),
               best.type == BlowupType::Toric ? "toric (-1)-component" : "non-toric class orthogonal to E_min");
    }
}

std::optional<std::vector<std::string>> chain_order(const DivisorConfig& config) {
    const auto& comps = config.components();
    if (comps.empty()) return std::nullopt;
    for (const auto& e : config.edges())
        if (e.mult != 1) return std::nullopt;
    if (config.edges().size() + 1 != comps.size() || !is_connected(config)) return std::nullopt;
    std::string start;
    for (const auto& c : comps) {
        int d = config.degree(c.id);
        if (d > 2) return std::nullopt;
        if (d <= 1 && start.empty()) start = c.id;
    }
    std::vector<std::string> order{start};
    std::string prev;
    while (order.size() < comps.size()) {
        std::string next;
        for (const auto& nb : config.neighbors(order.back()))
            if (nb != prev) next = nb;
        prev = order.back();
        order.push_back(next);
    }
    return order;
}

namespace {

SelfIntSeq canonical_cycle(const SelfIntSeq& s) {
    SelfIntSeq best = s;
    const size_t n = s.size();
    for (int dir = 0; dir < 2; ++dir) {
        SelfIntSeq t = s;
        if (dir) std::reverse(t.begin(), t.end());
        for (size_t r = 0; r < n; ++r) {
            std::rotate(t.begin(), t.begin() + 1, t.end());
            best = std::min(best, t);
        }
    }
    return best;
}

bool minimal_cycle_pattern(const SelfIntSeq& s) {
    const size_t n = s.size();
    auto at = [&](size_t i) { return s[i % n]; };
    if (n == 2) return s[0] + s[1] == 4 || (std::min(s[0], s[1]) == 1 && std::max(s[0], s[1]) == 4);
    if (n == 3) {
        if (s[0] == 1 && s[1] == 1 && s[2] == 1) return true;
        for (size_t i = 0; i < 3; ++i)
            if (at(i + 1) == 0 && at(i) + at(i + 2) == 2) return true;
        return false;
    }
    if (n == 4) {
        for (size_t i = 0; i < 4; ++i)
            if (at(i + 1) == 0 && at(i + 3) == 0 && at(i) + at(i + 2) == 0) return true;
    }
    return false;
}

}  // namespace

bool cycle_reduces_to_minimal(const SelfIntSeq& cycle) {
    std::set<SelfIntSeq> seen;
    std::function<bool(const SelfIntSeq&)> go = [&](const SelfIntSeq& s) {
        if (minimal_cycle_pattern(s)) return true;
        const size_t n = s.size();
        if (n < 3 || !seen.insert(canonical_cycle(s)).second) return false;
        for (size_t i = 0; i < n; ++i) {
            if (s[i] != -1) continue;
            SelfIntSeq t;
            for (size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                int64_t v = s[j];
                if (j == (i + 1) % n || j == (i + n - 1) % n) v += 1;
                t.push_back(v);
            }
            if (go(t)) return true;
        }
        return false;
    };
    return go(cycle);
}

std::vector<GoodChain> good_chains(const DivisorConfig& config) {
    std::vector<GoodChain> out;
    auto order = chain_order(config);
    if (!order || order->size() < 2) return out;
    for (int dir = 0; dir < 2; ++dir) {
        std::vector<std::string> ids = *order;
        if (dir) std::reverse(ids.begin(), ids.end());
        const int l = static_cast<int>(ids.size());
        std::vector<int64_t> sq;
        for (const auto& id : ids) sq.push_back(square(config.component(id).cls));
        auto make = [&](int k, int bullet) {
            GoodChain g{ids, k, bullet, {}};
            for (int i = 0; i < k; ++i) g.a.push_back(-sq[i]);
            return g;
        };
        int k = 0;
        while (k < l && sq[k] <= -2) ++k;
        // k is now the 0-based index of the first entry above -2
        if (k < l - 1 && sq[k] >= 0) out.push_back(make(k + 1, 1));
        if (l >= 3 && sq[0] == -1 && sq[1] == 0) out.push_back(make(2, 2));
    }
    std::stable_sort(out.begin(), out.end(), [](const GoodChain& x, const GoodChain& y) { return x.k > y.k; });
    return out;
}

std::optional<GoodChain> good_chain(const DivisorConfig& config) {
    auto all = good_chains(config);
    if (all.empty()) return std::nullopt;
    return all.front();
}

Reduction second_kind_reduce(const DivisorConfig& config, const AreaVector& w, const ReduceOptions& opt) {
    require_input(config, w, true);
    Reduction r{config, w, {}};
    for (int step = 0; b2(r.config.ambient()) > 2; ++step) {
        if (step >= opt.max_steps) return stuck(std::move(r), "step limit reached");
        std::vector<Candidate> cands;
        Rational bound = max_generator_area(r.w);
        for (int tries = 0; tries < 20 && cands.empty(); ++tries, bound *= 2) {
            ExceptionalSet set = enumerate_exceptional(r.w, bound, opt.coeff_bound);
            for (size_t i = 0; i < set.classes.size(); ++i)
                if (auto t = classify_blowdown(r.config, set.classes[i]))
                    cands.push_back({set.areas[i], *t, set.classes[i]});
        }
        if (cands.empty()) return stuck(std::move(r), "no exceptional class matches a blowdown pattern");
        const Candidate& best = *std::min_element(cands.begin(), cands.end(), better);
        record(r, blowdown(r.config, best.cls), "cheapest " + type_name(best.type) + " blowdown");
    }
    r.trace.terminal = TraceTerminal::SmallB2;
    return r;
}

std::vector<Check> ruled_validate(const DivisorConfig& config) {
    const Ambient& amb = config.ambient();
    std::vector<Check> out;
    out.push_back({"ruled-ambient", amb.kind() == AmbientKind::RuledTrivial, amb.describe()});
    if (!out.back().pass) return out;
    const int off = amb.exceptional_offset();
    Check shapes{"component-shapes", true, "all components match a fibre, exceptional or section shape"};
    int sections = 0;
    for (const auto& c : config.components()) {
        const auto& v = c.cls.coeffs();
        int plus = 0;
        bool small = true;
        for (int i = off; i < amb.rank(); ++i) {
            if (v[i] == 1) ++plus;
            else if (v[i] != 0 && v[i] != -1) small = false;
        }
        std::string shape;
        if (small && v[0] == 1 && plus == 0 && c.genus == amb.base_genus()) shape = "section";
        else if (small && c.genus == 0 && v[0] == 0 && v[1] == 1 && plus == 0) shape = "fibre";
        else if (small && c.genus == 0 && v[0] == 0 && v[1] == 0 && plus == 1) shape = "exceptional";
        if (shape.empty() && shapes.pass) {
            shapes.pass = false;
            shapes.detail = c.id + " in class " + c.cls.str() + " (genus " + std::to_string(c.genus) + ") has no admissible shape";
        }
        if (shape == "section") ++sections;
    }
    out.push_back(shapes);
    out.push_back({"section-count", sections <= 1, std::to_string(sections) + " section-type component(s)"});
    return out;
}

Reduction ruled_reduce(const DivisorConfig& config, const AreaVector& w, const ReduceOptions& opt) {
    require_input(config, w, false);
    if (!all_pass(ruled_validate(config))) throw std::invalid_argument("configuration fails the ruled shape checks");
    Reduction r{config, w, {}};
    for (int step = 0; r.config.ambient().exceptional_count() > 0; ++step) {
        if (step >= opt.max_steps) return stuck(std::move(r), "step limit reached");
        const Ambient& amb = r.config.ambient();
        const int off = amb.exceptional_offset();
        std::vector<Candidate> gens, fibres;
        for (int i = off; i < amb.rank(); ++i) {
            HomologyClass e = generator(amb, i);
            gens.push_back({area(e, r.w), BlowupType::Exterior, e});
            HomologyClass f = generator(amb, 1) - e;
            fibres.push_back({area(f, r.w), BlowupType::Exterior, f});
        }
        // smallest area first, later generators first on ties
        auto order = [](const Candidate& x, const Candidate& y) {
            if (x.area != y.area) return x.area < y.area;
            return y.cls < x.cls;
        };
        std::stable_sort(gens.begin(), gens.end(), order);
        std::stable_sort(fibres.begin(), fibres.end(), order);
        bool moved = false;
        for (const auto* list : {&gens, &fibres}) {
            for (const auto& c : *list) {
                auto t = classify_blowdown(r.config, c.cls);
                if (!t) continue;
                record(r, blowdown(r.config, c.cls),
                       (list == &gens ? "exceptional generator " : "fibre difference ") + c.cls.str());
                moved = true;
                break;
            }
            if (moved) break;
        }
        if (!moved) return stuck(std::move(r), "neither E_j nor F-E_j can be blown down");
    }
    r.trace.terminal = TraceTerminal::MinimalRuled;
    return r;
}

DivisorConfig replay_trace(const DivisorConfig& terminal, const ReductionTrace& trace) {
    DivisorConfig c = terminal;
    for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) c = replay_blowdown(c, it->move);
    return c;
}

}  // namespace symdiv
