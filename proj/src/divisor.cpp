#include "symdiv/divisor.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace symdiv {

namespace {

std::pair<std::string, std::string> ordered(const std::string& a, const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

void DivisorConfig::add_component(Component c, int position) {
    if (index_of(c.id) >= 0) throw std::invalid_argument("duplicate component id " + c.id);
    if (c.cls.ambient() != amb_) throw std::invalid_argument("component " + c.id + " lives in another ambient");
    if (position < 0 || position > static_cast<int>(comps_.size())) comps_.push_back(std::move(c));
    else comps_.insert(comps_.begin() + position, std::move(c));
}

void DivisorConfig::remove_component(const std::string& id) {
    int i = index_of(id);
    if (i < 0) throw std::invalid_argument("no component " + id);
    comps_.erase(comps_.begin() + i);
    std::erase_if(edges_, [&](const Edge& e) { return e.a == id || e.b == id; });
}

void DivisorConfig::add_edge(const std::string& a, const std::string& b, int mult) {
    if (mult <= 0) throw std::invalid_argument("edge multiplicity must be positive");
    auto [x, y] = ordered(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(x, y),
                               [](const Edge& e, const std::pair<std::string, std::string>& k) {
                                   return std::tie(e.a, e.b) < std::tie(k.first, k.second);
                               });
    if (it != edges_.end() && it->a == x && it->b == y) it->mult += mult;
    else edges_.insert(it, Edge{x, y, mult});
}

void DivisorConfig::remove_edge(const std::string& a, const std::string& b, int mult) {
    auto [x, y] = ordered(a, b);
    for (auto it = edges_.begin(); it != edges_.end(); ++it) {
        if (it->a == x && it->b == y) {
            if (it->mult < mult) break;
            it->mult -= mult;
            if (it->mult == 0) edges_.erase(it);
            return;
        }
    }
    throw std::invalid_argument("no edge " + a + "--" + b + " to remove");
}

int DivisorConfig::index_of(const std::string& id) const {
    for (size_t i = 0; i < comps_.size(); ++i)
        if (comps_[i].id == id) return static_cast<int>(i);
    return -1;
}

const Component& DivisorConfig::component(const std::string& id) const {
    int i = index_of(id);
    if (i < 0) throw std::invalid_argument("no component " + id);
    return comps_[i];
}

Component& DivisorConfig::component(const std::string& id) {
    int i = index_of(id);
    if (i < 0) throw std::invalid_argument("no component " + id);
    return comps_[i];
}

int DivisorConfig::multiplicity(const std::string& a, const std::string& b) const {
    auto [x, y] = ordered(a, b);
    for (const auto& e : edges_)
        if (e.a == x && e.b == y) return e.mult;
    return 0;
}

std::vector<std::string> DivisorConfig::neighbors(const std::string& id) const {
    std::vector<std::string> out;
    for (const auto& c : comps_)
        if (c.id != id && multiplicity(id, c.id) > 0) out.push_back(c.id);
    return out;
}

int DivisorConfig::degree(const std::string& id) const {
    int d = 0;
    for (const auto& e : edges_)
        if (e.a == id || e.b == id) d += e.mult;
    return d;
}

bool operator==(const DivisorConfig& x, const DivisorConfig& y) {
    if (x.amb_ != y.amb_ || x.comps_.size() != y.comps_.size() || x.edges_ != y.edges_) return false;
    for (size_t i = 0; i < x.comps_.size(); ++i) {
        const auto& a = x.comps_[i];
        const auto& b = y.comps_[i];
        if (a.id != b.id || a.cls != b.cls || a.genus != b.genus) return false;
    }
    return true;
}

std::vector<std::string> validate(const DivisorConfig& config, const AreaVector* w) {
    std::vector<std::string> issues;
    const auto& comps = config.components();
    if (comps.empty()) issues.push_back("configuration has no components");
    std::set<std::string> ids;
    for (const auto& c : comps) {
        if (!ids.insert(c.id).second) issues.push_back("duplicate component id " + c.id);
        if (c.cls.ambient() != config.ambient()) {
            issues.push_back("component " + c.id + " is not in the configuration's ambient");
            continue;
        }
        if (c.genus < 0) issues.push_back("component " + c.id + " has negative genus");
        auto g = adjunction_genus(c.cls);
        if (!g) issues.push_back("component " + c.id + " class " + c.cls.str() + " has no embedded genus");
        else if (*g != c.genus)
            issues.push_back("component " + c.id + " declares genus " + std::to_string(c.genus) +
                             ", adjunction gives " + std::to_string(*g));
        if (w && area(c.cls, *w) <= 0)
            issues.push_back("component " + c.id + " has non-positive area " + to_string(area(c.cls, *w)));
    }
    for (const auto& e : config.edges()) {
        if (e.a == e.b) issues.push_back("self-edge on " + e.a);
        if (!ids.count(e.a) || !ids.count(e.b)) issues.push_back("edge " + e.a + "--" + e.b + " names a missing component");
    }
    for (size_t i = 0; i < comps.size(); ++i) {
        for (size_t j = i + 1; j < comps.size(); ++j) {
            if (comps[i].cls.ambient() != config.ambient() || comps[j].cls.ambient() != config.ambient()) continue;
            int64_t p = pair(comps[i].cls, comps[j].cls);
            int m = config.multiplicity(comps[i].id, comps[j].id);
            if (p < 0)
                issues.push_back("components " + comps[i].id + " and " + comps[j].id + " pair negatively (" +
                                 std::to_string(p) + ")");
            else if (p != m)
                issues.push_back("edge count between " + comps[i].id + " and " + comps[j].id + " is " +
                                 std::to_string(m) + ", pairing is " + std::to_string(p));
        }
    }
    if (w) {
        for (auto& s : check_areas(*w)) issues.push_back(s);
    }
    return issues;
}

HomologyClass total_class(const DivisorConfig& config) {
    HomologyClass t(config.ambient());
    for (const auto& c : config.components()) t += c.cls;
    return t;
}

std::vector<std::vector<std::string>> connected_parts(const DivisorConfig& config) {
    const auto& comps = config.components();
    std::map<std::string, int> idx;
    for (size_t i = 0; i < comps.size(); ++i) idx[comps[i].id] = static_cast<int>(i);
    std::vector<int> parent(comps.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& e : config.edges()) {
        if (!idx.count(e.a) || !idx.count(e.b)) continue;
        parent[find(idx[e.a])] = find(idx[e.b]);
    }
    std::map<int, std::vector<std::string>> groups;
    std::vector<int> order;
    for (size_t i = 0; i < comps.size(); ++i) {
        int r = find(static_cast<int>(i));
        if (!groups.count(r)) order.push_back(r);
        groups[r].push_back(comps[i].id);
    }
    std::vector<std::vector<std::string>> out;
    for (int r : order) out.push_back(groups[r]);
    return out;
}

bool is_connected(const DivisorConfig& config) { return connected_parts(config).size() == 1; }

int64_t cycle_rank(const DivisorConfig& config) {
    int64_t edges = 0;
    for (const auto& e : config.edges()) edges += e.mult;
    return edges - static_cast<int64_t>(config.components().size()) +
           static_cast<int64_t>(connected_parts(config).size());
}

GenusReport total_genus(const DivisorConfig& config) {
    GenusReport r;
    // negative values occur for disconnected divisors: 1 + sum over parts of (g - 1)
    const HomologyClass a = total_class(config);
    const int64_t twice = square(a) + pair(canonical(a.ambient()), a) + 2;
    if (twice % 2 == 0) r.closed = twice / 2;
    int64_t genera = 0, edges = 0;
    for (const auto& c : config.components()) genera += c.genus;
    for (const auto& e : config.edges()) edges += e.mult;
    r.graph = genera + edges - static_cast<int64_t>(config.components().size()) + 1;
    r.agree = r.closed && *r.closed == r.graph;
    return r;
}

std::vector<SmoothedSurface> smooth_all(const DivisorConfig& config) {
    std::vector<SmoothedSurface> out;
    for (const auto& part : connected_parts(config)) {
        std::set<std::string> in(part.begin(), part.end());
        HomologyClass cls(config.ambient());
        int64_t g = 0, edges = 0;
        for (const auto& id : part) {
            cls += config.component(id).cls;
            g += config.component(id).genus;
        }
        for (const auto& e : config.edges())
            if (in.count(e.a)) edges += e.mult;
        g += edges - static_cast<int64_t>(part.size()) + 1;
        out.push_back({cls, g, part});
    }
    return out;
}

Rational hypothesis_value(const DivisorConfig& config, const AreaVector& w) {
    return area(canonical(config.ambient()) + total_class(config), w);
}

bool check_hypothesis(const DivisorConfig& config, const AreaVector& w) { return hypothesis_value(config, w) < 0; }

std::vector<std::string> check_tree_of_spheres(const DivisorConfig& config, const AreaVector& w) {
    std::vector<std::string> issues;
    if (!config.ambient().is_rational()) issues.push_back("ambient is not rational");
    if (!is_connected(config)) issues.push_back("configuration is not connected");
    if (!check_hypothesis(config, w)) issues.push_back("area(K+[D]) is not negative");
    for (const auto& c : config.components())
        if (c.genus != 0) issues.push_back("component " + c.id + " has genus " + std::to_string(c.genus));
    if (cycle_rank(config) != 0) issues.push_back("dual graph has a loop");
    HomologyClass d = total_class(config);
    int64_t v = square(d) + pair(canonical(config.ambient()), d);
    if (v != -2) issues.push_back("[D]^2 + K.[D] = " + std::to_string(v) + ", expected -2");
    return issues;
}

}  // namespace symdiv
