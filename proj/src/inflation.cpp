#include "symdiv/inflation.hpp"

#include <algorithm>
#include <stdexcept>

namespace symdiv {

std::vector<std::string> region_violations(const NormalizedVector& v, std::optional<int> g) {
    std::vector<std::string> out;
    if (v.empty()) return {"empty vector"};
    const size_t n = v.size() - 1;
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i] <= 0) out.push_back((i == 0 ? std::string("delta_B") : "delta_" + std::to_string(i)) + " > 0");
    Rational sum = 0, sum_sq = 0;
    for (size_t i = 1; i <= n; ++i) {
        sum += v[i];
        sum_sq += v[i] * v[i];
    }
    if (n == 0) {
        if (g && v[0] <= *g) out.push_back("delta_B > " + std::to_string(*g));
        return out;
    }
    if (g) {
        if (Rational(2 - 2 * *g + 2 * v[0] - sum) <= 0) out.push_back("2 - 2g + 2 delta_B - sum delta_i > 0");
    } else if (Rational(2 * v[0] - sum_sq) <= 0) {
        out.push_back("2 delta_B - sum delta_i^2 > 0");
    }
    if (n == 1) {
        if (v[1] >= 1) out.push_back("delta_1 < 1");
        return out;
    }
    if (Rational(v[1] + v[2]) >= 1) out.push_back("delta_1 + delta_2 < 1");
    for (size_t i = 1; i < n; ++i)
        if (v[i] < v[i + 1])
            out.push_back("delta_" + std::to_string(i) + " >= delta_" + std::to_string(i + 1));
    return out;
}

bool in_region(const NormalizedVector& v, std::optional<int> g) { return region_violations(v, g).empty(); }

std::optional<Rational> inflation_bound(const AreaVector& a, const HomologyClass& z) {
    const int64_t sq = square(z);
    if (sq >= 0) return std::nullopt;
    return Rational(area(z, a) / (-sq));
}

AreaVector shift_areas(const AreaVector& a, const HomologyClass& z, const Rational& t) {
    const Ambient& amb = a.ambient();
    if (z.ambient() != amb) throw std::invalid_argument("inflation class lives on another lattice");
    std::vector<Rational> out = a.values();
    for (int i = 0; i < amb.rank(); ++i) out[i] += t * pair(z, generator(amb, i));
    return AreaVector(amb, std::move(out));
}

AreaVector inflate_step(const AreaVector& a, const HomologyClass& z, const Rational& t) {
    if (t < 0) throw std::domain_error("negative inflation time " + to_string(t));
    if (area(z, a) <= 0) throw std::domain_error(z.str() + " has non-positive area");
    auto lam = inflation_bound(a, z);
    if (lam && t >= *lam)
        throw std::domain_error("t = " + to_string(t) + " is not below the bound " + to_string(*lam) + " for " + z.str());
    AreaVector out = shift_areas(a, z, t);
    for (int i = 0; i < out.ambient().rank(); ++i)
        if (out[i] <= 0)
            throw std::domain_error("area of " + out.ambient().basis()[i] + " becomes " + to_string(out[i]));
    return out;
}

NormalizedVector normalize(const AreaVector& a) {
    const Rational f = a[1];
    if (f <= 0) throw std::domain_error("fibre area " + to_string(f) + " is not positive");
    NormalizedVector v{Rational(a[0] / f)};
    for (int i = 2; i < a.ambient().rank(); ++i) v.push_back(a[i] / f);
    return v;
}

AreaVector unnormalized(int g, const NormalizedVector& v) {
    if (v.empty()) throw std::invalid_argument("empty vector");
    std::vector<Rational> w{v[0], Rational(1)};
    w.insert(w.end(), v.begin() + 1, v.end());
    return AreaVector(Ambient::ruled_trivial(g, static_cast<int>(v.size()) - 1), std::move(w));
}

AreaVector zigzag(const AreaVector& a, const HomologyClass& z1, const HomologyClass& z2, const Rational& t,
                  int64_t substeps, bool* ok) {
    if (substeps < 1) throw std::invalid_argument("zig-zag needs at least one substep");
    const Rational s = t / substeps;
    AreaVector cur = a;
    bool good = true;
    for (int64_t i = 0; i < substeps; ++i) {
        for (const auto* z : {&z1, &z2}) {
            try {
                cur = inflate_step(cur, *z, s);
            } catch (const std::domain_error&) {
                good = false;
                cur = shift_areas(cur, *z, s);
            }
        }
    }
    if (ok) *ok = good;
    return cur;
}

bool operator==(const PlanNode& a, const PlanNode& b) {
    if (a.kind != b.kind || a.seed != b.seed || a.epsilon != b.epsilon || a.z != b.z || a.z2 != b.z2 || a.t != b.t ||
        a.substeps != b.substeps)
        return false;
    if (!a.sub || !b.sub) return !a.sub && !b.sub;
    return *a.sub == *b.sub;
}

bool operator==(const InflationPlan& a, const InflationPlan& b) {
    return a.g == b.g && a.n == b.n && a.target == b.target && a.nodes == b.nodes && a.assumptions == b.assumptions;
}

namespace {

const char* kSmallBlowup = "small blowup of a Kahler class remains Kahler";
const char* kRayBase =
    "vectors near the ray (x,1), x > 1/2, are Kahler classes for the one-point blowup of the ruled surface with a "
    "section of square one";

HomologyClass cls(const Ambient& amb, std::initializer_list<std::pair<const char*, int64_t>> terms) {
    HomologyClass c(amb);
    for (const auto& [name, k] : terms) c += k * generator(amb, name);
    return c;
}

std::string e(size_t i) { return "E" + std::to_string(i); }

// Largest epsilon worth trying: a quarter of the tightest strict inequality.
Rational epsilon0(const NormalizedVector& d) {
    const size_t n = d.size() - 1;
    Rational sum = 0;
    for (size_t i = 1; i <= n; ++i) sum += d[i];
    Rational slack = 2 * d[0] - sum;
    slack = std::min(slack, d[n]);
    if (n == 1) slack = std::min(slack, Rational(1 - d[1]));
    if (n >= 2) slack = std::min(slack, Rational(1 - d[1] - d[2]));
    return slack / 4;
}

PlanNode inflate_node(const HomologyClass& z, const Rational& t) {
    PlanNode node;
    node.kind = PlanNode::Kind::Inflate;
    node.z = z;
    node.t = t;
    return node;
}

InflationPlan build(const NormalizedVector& d, int g, const Rational& shrink) {
    const auto viol = region_violations(d, 1);
    if (!viol.empty()) throw std::domain_error("intermediate target violates " + viol.front());
    InflationPlan plan;
    plan.g = g;
    plan.n = static_cast<int>(d.size()) - 1;
    plan.target = d;
    const size_t n = d.size() - 1;
    const Ambient amb = Ambient::ruled_trivial(g, static_cast<int>(n));
    const Rational eps = epsilon0(d) * shrink;

    PlanNode seed;
    seed.kind = PlanNode::Kind::Seed;
    if (n == 0) {
        seed.seed = d;
        plan.nodes.push_back(seed);
        plan.assumptions.push_back("product forms realise every positive section area");
        return plan;
    }
    if (n == 1) {
        // Inflating along B divides by 1+t; pick the seed so the quotient is d.
        const Rational top = 1 - eps;
        const Rational t = top / d[1] - 1;
        seed.seed = {Rational(d[0] * top / d[1]), top};
        seed.epsilon = eps;
        plan.nodes.push_back(seed);
        plan.nodes.push_back(inflate_node(generator(amb, "B"), t));
        plan.assumptions.push_back(kRayBase);
        return plan;
    }
    if (n % 2 == 0) {
        NormalizedVector w(d.begin(), d.end() - 1);
        w[0] = d[0] - d[n] + eps;
        w[n - 1] = d[n - 1] - d[n] + eps;
        seed.sub = std::make_shared<const InflationPlan>(build(w, g, shrink));
        seed.seed = w;
        seed.seed.push_back(eps);
        seed.epsilon = eps;
        plan.nodes.push_back(seed);
        plan.nodes.push_back(
            inflate_node(cls(amb, {{"F", 1}, {e(n - 1).c_str(), -1}, {e(n).c_str(), -1}}), Rational(d[n] - eps)));
        plan.assumptions.push_back(kSmallBlowup);
        return plan;
    }

    // n = 2k-1 >= 3
    const size_t k = (n + 1) / 2;
    const Rational t = (d[n] - eps) / (1 - d[n]);
    NormalizedVector v(n + 1);
    v[0] = (1 + t) * d[0] - Rational(static_cast<long long>(k - 1)) * t;
    v[1] = (1 + t) * d[1];
    for (size_t i = 2; i <= n; ++i) v[i] = (1 + t) * d[i] - t;
    if (v[n] != eps) throw std::logic_error("odd seed does not end in epsilon");
    seed.sub = std::make_shared<const InflationPlan>(build(NormalizedVector(v.begin(), v.end() - 1), g, shrink));
    seed.seed = v;
    seed.epsilon = eps;
    plan.nodes.push_back(seed);
    plan.nodes.push_back(inflate_node(cls(amb, {{"F", 1}, {e(n).c_str(), -1}}), t));

    AreaVector cur = shift_areas(unnormalized(g, v), *plan.nodes.back().z, t);
    for (size_t l = 2; l + 1 <= k; ++l) {
        PlanNode zz;
        zz.kind = PlanNode::Kind::ZigZag;
        zz.z = generator(amb, e(2 * l));
        zz.z2 = cls(amb, {{"F", 1}, {e(2 * l - 1).c_str(), -1}, {e(2 * l).c_str(), -1}});
        zz.t = t;
        bool ok = false;
        for (zz.substeps = 1; zz.substeps <= (int64_t{1} << 24); zz.substeps *= 2) {
            zigzag(cur, *zz.z, *zz.z2, t, zz.substeps, &ok);
            if (ok) break;
        }
        if (!ok) throw std::domain_error("zig-zag substep search exhausted");
        cur = zigzag(cur, *zz.z, *zz.z2, t, zz.substeps);
        plan.nodes.push_back(zz);
    }
    HomologyClass last = generator(amb, "B");
    for (size_t j = 1; j + 1 <= k; ++j) last -= generator(amb, e(2 * j));
    plan.nodes.push_back(inflate_node(last, t));
    plan.assumptions.push_back(kSmallBlowup);
    return plan;
}

std::string node_label(const PlanNode& node, size_t idx) {
    std::string s = "node " + std::to_string(idx + 1);
    switch (node.kind) {
        case PlanNode::Kind::Seed: return s + " seed";
        case PlanNode::Kind::Inflate: return s + " inflate " + node.z->str();
        case PlanNode::Kind::ZigZag: return s + " zig-zag " + node.z->str() + " / " + node.z2->str();
    }
    return s;
}

void verify_into(const InflationPlan& plan, const std::string& prefix, std::vector<Check>& out) {
    auto add = [&](const std::string& name, bool ok, const std::string& detail = "") {
        out.push_back({prefix + name, ok, detail});
    };
    const auto viol = region_violations(plan.target, 1);
    add("target in region (g=1)", viol.empty(), viol.empty() ? "" : viol.front());
    if (static_cast<int>(plan.target.size()) != plan.n + 1) {
        add("target length", false, std::to_string(plan.target.size()));
        return;
    }
    if (plan.nodes.empty() || plan.nodes.front().kind != PlanNode::Kind::Seed) {
        add("plan starts with a seed", false);
        return;
    }
    const Ambient amb = Ambient::ruled_trivial(plan.g, plan.n);
    std::optional<AreaVector> cur;
    for (size_t i = 0; i < plan.nodes.size(); ++i) {
        const PlanNode& node = plan.nodes[i];
        const std::string label = node_label(node, i) + ": ";
        if (node.kind == PlanNode::Kind::Seed) {
            if (i != 0) {
                add(label + "seed only at the start", false);
                continue;
            }
            if (node.seed.size() != plan.target.size()) {
                add(label + "seed length", false, std::to_string(node.seed.size()));
                return;
            }
            const auto sv = region_violations(node.seed, 1);
            add(label + "seed in region (g=1)", sv.empty(), sv.empty() ? "" : sv.front());
            if (node.sub) {
                const InflationPlan& sub = *node.sub;
                add(label + "epsilon > 0", node.epsilon > 0, to_string(node.epsilon));
                bool prefix_ok = sub.n + 1 == plan.n && sub.g == plan.g &&
                                 NormalizedVector(node.seed.begin(), node.seed.end() - 1) == sub.target &&
                                 node.seed.back() == node.epsilon;
                add(label + "seed extends the sub-plan endpoint by epsilon", prefix_ok);
                verify_into(sub, prefix + "n=" + std::to_string(sub.n) + " ", out);
            } else if (plan.n == 1) {
                add(label + "epsilon > 0", node.epsilon > 0, to_string(node.epsilon));
                add(label + "seed near the ray (x,1), x > 1/2",
                    node.seed[0] > Rational(1, 2) && node.seed[1] == 1 - node.epsilon, to_string(node.seed[0]));
            } else if (plan.n > 1) {
                add(label + "seed has a sub-plan", false);
            }
            cur = unnormalized(plan.g, node.seed);
            continue;
        }
        if (!node.z || node.z->ambient() != amb || (node.kind == PlanNode::Kind::ZigZag && (!node.z2 || node.z2->ambient() != amb))) {
            add(label + "class on the plan lattice", false);
            return;
        }
        if (node.kind == PlanNode::Kind::Inflate) {
            try {
                cur = inflate_step(*cur, *node.z, node.t);
                add(label + "within bound, areas positive", true, "t = " + to_string(node.t));
            } catch (const std::domain_error& err) {
                add(label + "within bound, areas positive", false, err.what());
                cur = shift_areas(*cur, *node.z, node.t);
            }
        } else {
            bool ok = false;
            AreaVector end = zigzag(*cur, *node.z, *node.z2, node.t, node.substeps, &ok);
            add(label + std::to_string(node.substeps) + " substeps within bound", ok, "t = " + to_string(node.t));
            // (1+t)d_i + (1+t)d_j - t < 1 at the pair, i.e. z2 keeps positive area.
            Rational room = area(*node.z2, end);
            add(label + "slack of the pair below the fibre", room > 0, to_string(room));
            cur = end;
        }
    }
    try {
        NormalizedVector got = normalize(*cur);
        add("endpoint equals target", got == plan.target, "");
    } catch (const std::domain_error& err) {
        add("endpoint equals target", false, err.what());
    }
}

}  // namespace

std::vector<Check> verify_plan(const InflationPlan& plan) {
    std::vector<Check> out;
    verify_into(plan, "", out);
    return out;
}

InflationPlan plan_kahler(const NormalizedVector& target, int g) {
    if (g < 1) throw std::invalid_argument("base genus must be >= 1");
    const auto viol = region_violations(target, 1);
    if (!viol.empty()) throw std::invalid_argument("target violates " + viol.front());
    Rational shrink = 1;
    for (int attempt = 0; attempt < 16; ++attempt, shrink /= 4) {
        try {
            InflationPlan plan = build(target, g, shrink);
            if (all_pass(verify_plan(plan))) return plan;
        } catch (const std::domain_error&) {
        }
    }
    throw std::runtime_error("no verified plan after shrinking epsilon 16 times");
}

}  // namespace symdiv
