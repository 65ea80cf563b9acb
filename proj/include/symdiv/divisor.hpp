#pragma once

#include "symdiv/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace symdiv {

struct Component {
    std::string id;
    HomologyClass cls;
    int64_t genus = 0;
};

// Unordered pair stored with a < b.
struct Edge {
    std::string a, b;
    int mult = 1;
    friend bool operator==(const Edge&, const Edge&) = default;
};

class DivisorConfig {
public:
    explicit DivisorConfig(Ambient amb) : amb_(std::move(amb)) {}

    const Ambient& ambient() const { return amb_; }
    const std::vector<Component>& components() const { return comps_; }
    std::vector<Component>& components() { return comps_; }
    // Sorted by (a, b); multiplicities merged.
    const std::vector<Edge>& edges() const { return edges_; }

    void add_component(Component c, int position = -1);
    void remove_component(const std::string& id);  // also drops its edges
    void add_edge(const std::string& a, const std::string& b, int mult = 1);
    void remove_edge(const std::string& a, const std::string& b, int mult = 1);

    int index_of(const std::string& id) const;  // -1 if absent
    const Component& component(const std::string& id) const;
    Component& component(const std::string& id);
    int multiplicity(const std::string& a, const std::string& b) const;
    // Distinct neighbours of a component, in component order.
    std::vector<std::string> neighbors(const std::string& id) const;
    int degree(const std::string& id) const;  // edge count with multiplicity

    friend bool operator==(const DivisorConfig& x, const DivisorConfig& y);

private:
    Ambient amb_;
    std::vector<Component> comps_;
    std::vector<Edge> edges_;
};

std::vector<std::string> validate(const DivisorConfig& config, const AreaVector* w = nullptr);

HomologyClass total_class(const DivisorConfig& config);

struct GenusReport {
    std::optional<int64_t> closed;  // from adjunction on the total class
    int64_t graph = 0;              // sum of genera + b1 - b0 + 1
    bool agree = false;
};
GenusReport total_genus(const DivisorConfig& config);

struct SmoothedSurface {
    HomologyClass cls;
    int64_t genus;
    std::vector<std::string> sources;
};
std::vector<SmoothedSurface> smooth_all(const DivisorConfig& config);

// Groups of component ids, one per connected part of the dual graph.
std::vector<std::vector<std::string>> connected_parts(const DivisorConfig& config);
bool is_connected(const DivisorConfig& config);
// First Betti number of the dual graph (multi-edges count).
int64_t cycle_rank(const DivisorConfig& config);

bool check_hypothesis(const DivisorConfig& config, const AreaVector& w);
Rational hypothesis_value(const DivisorConfig& config, const AreaVector& w);

std::vector<std::string> check_tree_of_spheres(const DivisorConfig& config, const AreaVector& w);

}  // namespace symdiv
