#pragma once

#include "symdiv/exceptional.hpp"
#include "symdiv/moves.hpp"

#include <optional>
#include <string>
#include <vector>

namespace symdiv {

enum class TraceTerminal { QuasiMinimalFirstKind, QuasiMinimalSecondKind, SmallB2, MinimalRuled, Stuck };
std::string terminal_name(TraceTerminal t);

struct TraceStep {
    BlowdownResult move;
    DivisorConfig before;
    AreaVector w_before;
    AreaVector w_after;
    bool hypothesis_after = false;
    Rational value_after;  // area(K+[D]) after the step
    std::string reason;
};

struct ReductionTrace {
    std::vector<TraceStep> steps;
    TraceTerminal terminal = TraceTerminal::Stuck;
    std::string stuck_reason;
    std::vector<std::string> notes;
};

struct Reduction {
    DivisorConfig config;
    AreaVector w;
    ReductionTrace trace;
};

struct ReduceOptions {
    int64_t coeff_bound = kDefaultCoeffBound;
    int max_steps = 512;
};

// b2 of the ambient (rank of its lattice).
int b2(const Ambient& amb);

Reduction quasi_minimal_reduce(const DivisorConfig& config, const AreaVector& w, const ReduceOptions& opt = {});

enum class PairKind { FirstKind, SecondKind };

struct KindVerdict {
    PairKind kind;
    HomologyClass e_min;
    std::string carrier;  // component carrying e_min (second kind only)
};
// Throws std::logic_error when -[D]-K is not the unique minimal class or
// does not pair 2 with [D].
KindVerdict classify_kind(const DivisorConfig& config, const AreaVector& w, int64_t coeff_bound = kDefaultCoeffBound);

Reduction partially_minimal_reduce(const DivisorConfig& config, const AreaVector& w, const ReduceOptions& opt = {});

// Component ids in chain order, starting from the end listed first; nullopt
// when the dual graph is not a simple chain.
std::optional<std::vector<std::string>> chain_order(const DivisorConfig& config);

// Whether a cyclic self-intersection sequence contracts, through (-1) entries
// only, to one of the minimal cycle patterns.
bool cycle_reduces_to_minimal(const SelfIntSeq& cycle);

struct GoodChain {
    std::vector<std::string> order;  // D_1 .. D_l
    int k = 0;
    int bullet = 1;                  // 1: leading entries <= -2, 2: (-1, 0) start
    std::vector<int64_t> a;          // -[D_i]^2 for i <= k
};
// All good labelings, best first (largest k, then the forward orientation).
std::vector<GoodChain> good_chains(const DivisorConfig& config);
std::optional<GoodChain> good_chain(const DivisorConfig& config);

Reduction second_kind_reduce(const DivisorConfig& config, const AreaVector& w, const ReduceOptions& opt = {});

std::vector<Check> ruled_validate(const DivisorConfig& config);
Reduction ruled_reduce(const DivisorConfig& config, const AreaVector& w, const ReduceOptions& opt = {});

// Blows the terminal configuration back up along the reversed trace.
DivisorConfig replay_trace(const DivisorConfig& terminal, const ReductionTrace& trace);

struct MinimalModelTag {
    std::string id;                  // "A1" .. "C3", "A1'" .. "C3'"
    int64_t k = 0;
    int components = 0;
    std::vector<std::string> order;  // component ids playing D_1, D_2, ...
};
std::optional<MinimalModelTag> classify_minimal_model(const DivisorConfig& config);

}  // namespace symdiv
