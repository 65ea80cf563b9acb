#include "symdiv/cusp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace symdiv {

WeightSequence weight_sequence(int64_t p, int64_t q) {
    WeightSequence w{p, q, {}};
    if ((p == 1 && q == 0) || (p == 0 && q == 1)) return w;
    if (p < 1 || q < 1) throw std::invalid_argument("cusp type needs positive entries");
    if (std::gcd(p, q) != 1)
        throw std::invalid_argument("(" + std::to_string(p) + "," + std::to_string(q) + ") is not coprime");
    while (true) {
        w.weights.push_back(std::min(p, q));
        if (p == q) break;
        int64_t np = p > q ? p - q : q - p;
        q = std::min(p, q);
        p = np;
    }
    return w;
}

std::vector<int64_t> associated_sequence(const std::vector<int64_t>& a) {
    std::vector<int64_t> c;
    if (a.empty()) return c;
    c.push_back(1);
    if (a.size() > 1) c.push_back(a[0]);
    for (size_t i = 2; i < a.size(); ++i) c.push_back(a[i - 1] * c[i - 1] - c[i - 2]);
    return c;
}

Admissible admissible_check(const std::vector<int64_t>& a) {
    Admissible r;
    r.a = a;
    if (a.empty()) {
        r.rejection = "empty sequence";
        return r;
    }
    r.c = associated_sequence(a);
    const size_t k = a.size();
    for (size_t i = 0; i < k; ++i) {
        if (r.c[i] < 0) {
            r.rejection = "c_" + std::to_string(i + 1) + " = " + std::to_string(r.c[i]) + " < 0";
            return r;
        }
    }
    int64_t prev = k >= 2 ? r.c[k - 2] : 0;
    r.p = prev - r.c[k - 1] * a[k - 1];
    r.q = r.c[k - 1];
    if (r.p <= 0) {
        r.rejection = "c_{k-1} - c_k a_k = " + std::to_string(r.p) + " is not positive";
        return r;
    }
    if (std::gcd(r.p, r.q) != 1)
        throw std::logic_error("admissible sequence produced non-coprime (" + std::to_string(r.p) + "," +
                               std::to_string(r.q) + ")");
    r.accepted = true;
    return r;
}

std::vector<Check> cusp_identities(const DivisorConfig& config, const HomologyClass& A, int64_t p, int64_t q,
                                   const std::string& da, const std::string& db) {
    std::vector<Check> out;
    auto eq = [](const std::string& name, int64_t got, int64_t want) {
        return Check{name, got == want, std::to_string(got) + (got == want ? " == " : " != ") + std::to_string(want)};
    };
    if (!da.empty()) out.push_back(eq("A.D_a = p", pair(A, config.component(da).cls), p));
    if (!db.empty()) out.push_back(eq("A.D_b = q", pair(A, config.component(db).cls), q));
    Check others{"A.D_j = 0 otherwise", true, "all zero"};
    for (const auto& c : config.components()) {
        if (c.id == da || c.id == db) continue;
        if (int64_t v = pair(A, c.cls); v != 0) {
            others = {others.name, false, "A." + c.id + " = " + std::to_string(v)};
            break;
        }
    }
    out.push_back(others);
    out.push_back(eq("A^2 = pq", square(A), p * q));
    out.push_back(eq("A.K = -p-q-1", pair(A, canonical(A.ambient())), -p - q - 1));
    return out;
}

CuspClass cusp_class(const DivisorConfig& config, const std::vector<std::string>& order, const Admissible& adm) {
    if (!adm.accepted) throw std::invalid_argument("subchain is not admissible: " + adm.rejection);
    const size_t k = adm.c.size();
    if (order.size() < k + 1) throw std::invalid_argument("chain is shorter than k+1");
    for (size_t i = 0; i + 1 < order.size(); ++i)
        if (config.multiplicity(order[i], order[i + 1]) != 1)
            throw std::invalid_argument(order[i] + " and " + order[i + 1] + " are not adjacent");
    HomologyClass A(config.ambient());
    for (size_t i = 0; i < k; ++i) A += adm.c[i] * config.component(order[i]).cls;
    CuspClass out{A, adm.p, adm.q, order[k - 1], order[k], {}};
    out.checks = cusp_identities(config, A, adm.p, adm.q, out.da, out.db);
    return out;
}

namespace {

std::string free_label(const Ambient& amb, int& counter) {
    while (true) {
        std::string l = "R" + std::to_string(++counter);
        if (amb.index_of(l) < 0) return l;
    }
}

}  // namespace

Resolution resolve_pattern(const DivisorConfig& config, const HomologyClass& A, const std::string& da,
                           const std::string& db, int64_t p, int64_t q, const AreaVector* w) {
    if (config.index_of(da) < 0) throw std::invalid_argument("unknown component " + da);
    WeightSequence ws = weight_sequence(p, q);
    const Ambient& amb = config.ambient();
    std::vector<HomologyClass> ident;
    for (int i = 0; i < amb.rank(); ++i) ident.push_back(generator(amb, i));
    Resolution res{config, w ? std::optional<AreaVector>(*w) : std::nullopt, LatticeMap{amb, amb, ident}, {}, {}, {},
                   da, A, {}};

    int counter = 0;
    std::string x = da, y = db;
    int64_t px = p, py = q;
    HomologyClass cur = A;
    std::optional<Rational> last_eps;
    while (px > 0 && py > 0) {
        if (res.config.multiplicity(x, y) < 1) throw std::invalid_argument("no intersection " + x + "--" + y);
        const int64_t m = std::min(px, py);
        BlowupMove mv{BlowupType::Toric, x, y, false, "", free_label(res.config.ambient(), counter)};
        mv.new_id = "e_" + mv.new_label;
        std::optional<Rational> bound;
        if (res.w) bound = blowup_area_threshold(res.config, *res.w, mv);
        BlowupResult br = blowup(res.config, mv);
        if (res.w) {
            Rational eps = bound ? Rational(*bound / 4) : Rational(1, 4);
            if (last_eps && *last_eps / 4 < eps) eps = *last_eps / 4;
            last_eps = eps;
            res.w = extend_areas(*res.w, br.ext, eps);
        }
        std::vector<HomologyClass> imgs;
        for (const auto& img : res.embed.images) imgs.push_back(br.ext.embed.apply(img));
        res.embed = LatticeMap{amb, br.ext.to, imgs};
        for (auto& e : res.exceptional) e = br.ext.embed.apply(e);
        cur = br.ext.embed.apply(cur) - m * br.ext.e;
        res.config = std::move(br.config);
        res.weights.push_back(m);
        res.exceptional.push_back(br.ext.e);
        res.exceptional_ids.push_back(br.new_component);
        if (px > py) {
            y = br.new_component;
            px -= m;
        } else if (px < py) {
            x = br.new_component;
            py -= m;
        } else {
            px = py = 0;
        }
    }
    res.a_tilde = cur;

    auto eq = [](const std::string& name, int64_t got, int64_t want) {
        return Check{name, got == want, std::to_string(got) + (got == want ? " == " : " != ") + std::to_string(want)};
    };
    int64_t s1 = 0, s2 = 0;
    for (int64_t m : res.weights) {
        s1 += m;
        s2 += m * m;
    }
    const bool degenerate = res.weights.empty();
    if (!degenerate) {
        res.checks.push_back(eq("weights: sum m^2 = pq", s2, p * q));
        res.checks.push_back(eq("weights: sum m = p+q-1", s1, p + q - 1));
        if (res.weights != ws.weights) res.checks.push_back({"weights match W(p,q)", false, "resolution disagrees"});
    }
    res.checks.push_back(eq("A~^2 = 0", square(cur), 0));
    res.checks.push_back(eq("A~.K~ = -2", pair(cur, canonical(cur.ambient())), -2));
    if (!degenerate) {
        const std::string& last = res.exceptional_ids.back();
        res.checks.push_back(eq("A~.E_last = 1", pair(cur, res.config.component(last).cls), 1));
        Check others{"A~.(other components) = 0", true, "all zero"};
        for (const auto& c : res.config.components()) {
            if (c.id == last) continue;
            if (int64_t v = pair(cur, c.cls); v != 0) {
                others = {others.name, false, "A~." + c.id + " = " + std::to_string(v)};
                break;
            }
        }
        res.checks.push_back(others);
    }
    return res;
}

PositiveCombination positive_combination(const DivisorConfig& original, const Resolution& res, int64_t q,
                                         const std::string& da) {
    const Ambient& amb = res.config.ambient();
    HomologyClass before = res.embed.apply(original.component(da).cls);
    HomologyClass target = q * (before - res.config.component(da).cls);
    for (size_t i = 0; i < res.weights.size(); ++i) target -= res.weights[i] * res.exceptional[i];

    PositiveCombination out{{}, target, true, false};
    // The exceptional components are unitriangular in the exceptional
    // generators, so forward substitution finds the unique coefficients.
    HomologyClass rest = target;
    for (size_t i = 0; i < res.exceptional.size(); ++i) {
        int idx = -1;
        for (int j = 0; j < amb.rank(); ++j)
            if (res.exceptional[i][j] != 0) idx = j;
        const auto& comp = res.config.component(res.exceptional_ids[i]);
        int64_t lam = rest[idx] / comp.cls[idx];
        out.coefficients[comp.id] = lam;
        if (lam < 0) out.nonnegative = false;
        rest -= lam * comp.cls;
    }
    HomologyClass sum(amb);
    for (const auto& [id, lam] : out.coefficients) sum += lam * res.config.component(id).cls;
    out.reproduces = sum == target && rest.is_zero();
    return out;
}

CuspState blowup_cusp_point(const CuspState& s, const std::string& e_id, int64_t* multiplicity) {
    const int64_t m = std::min(s.p, s.q);
    if (multiplicity) *multiplicity = m;
    if (m == 0) return s;
    if (s.p > s.q) return {s.p - m, m, s.da, e_id};
    if (s.p < s.q) return {m, s.q - m, e_id, s.db};
    return {1, 0, e_id, ""};
}

}  // namespace symdiv
