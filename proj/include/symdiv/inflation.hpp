#pragma once

#include "symdiv/exceptional.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace symdiv {

// (delta_B, delta_1, ..., delta_n) with the fibre area scaled to 1.
using NormalizedVector = std::vector<Rational>;

// Violated strict inequalities of the region; g = nullopt selects the
// symplectic region, g >= 1 the region with negative K.omega.
std::vector<std::string> region_violations(const NormalizedVector& v, std::optional<int> g);
bool in_region(const NormalizedVector& v, std::optional<int> g);

// Sup of admissible t for inflating along z; nullopt when unbounded.
std::optional<Rational> inflation_bound(const AreaVector& a, const HomologyClass& z);
// a(c) + t (z.c) on every generator, without checks.
AreaVector shift_areas(const AreaVector& a, const HomologyClass& z, const Rational& t);
// Throws std::domain_error when t is outside [0, bound), z has non-positive
// area, or a generator area becomes non-positive.
AreaVector inflate_step(const AreaVector& a, const HomologyClass& z, const Rational& t);

// Throws std::domain_error when the fibre area is not positive.
NormalizedVector normalize(const AreaVector& a);
// Areas on RuledTrivial(g, n) with fibre area 1.
AreaVector unnormalized(int g, const NormalizedVector& v);

struct InflationPlan;

struct PlanNode {
    enum class Kind { Seed, Inflate, ZigZag };
    Kind kind = Kind::Inflate;

    // Seed: either a base vector or the endpoint of `sub` with epsilon appended.
    std::shared_ptr<const InflationPlan> sub;
    NormalizedVector seed;
    Rational epsilon = 0;

    // Inflate uses z; ZigZag alternates z then z2, each by t / substeps.
    std::optional<HomologyClass> z, z2;
    Rational t = 0;
    int64_t substeps = 1;
};

struct InflationPlan {
    int g = 1;
    int n = 0;
    NormalizedVector target;
    std::vector<PlanNode> nodes;
    std::vector<std::string> assumptions;
};

bool operator==(const PlanNode& a, const PlanNode& b);
bool operator==(const InflationPlan& a, const InflationPlan& b);

// Throws std::invalid_argument naming the violated inequality when the target
// is outside the g = 1 region, std::runtime_error when no epsilon in the retry
// range yields a verified plan.
InflationPlan plan_kahler(const NormalizedVector& target, int g = 1);

std::vector<Check> verify_plan(const InflationPlan& plan);

// Endpoint of a zig-zag replay; `ok` reports whether every substep stayed
// within its bound.
AreaVector zigzag(const AreaVector& a, const HomologyClass& z1, const HomologyClass& z2, const Rational& t,
                  int64_t substeps, bool* ok = nullptr);

}  // namespace symdiv
