#pragma once

#include "symdiv/exceptional.hpp"
#include "symdiv/moves.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace symdiv {

struct WeightSequence {
    int64_t p = 1, q = 1;
    std::vector<int64_t> weights;
};

// Multiplicities of the exceptional curves resolving a (p,q)-cusp. (1,0) and
// (0,1) give the empty sequence. Throws std::invalid_argument otherwise when
// p, q are not coprime positive integers.
WeightSequence weight_sequence(int64_t p, int64_t q);

std::vector<int64_t> associated_sequence(const std::vector<int64_t>& a);

struct Admissible {
    bool accepted = false;
    std::string rejection;
    std::vector<int64_t> a, c;
    int64_t p = 0, q = 0;
};
Admissible admissible_check(const std::vector<int64_t>& a);

struct CuspClass {
    HomologyClass A;
    int64_t p = 0, q = 0;
    std::string da, db;
    std::vector<Check> checks;
};
// A = sum c_i [D_i] over the first k entries of `order`; D_a = D_k, D_b = D_{k+1}.
CuspClass cusp_class(const DivisorConfig& config, const std::vector<std::string>& order, const Admissible& adm);

// The five identities for a class A with A.D_a = p and A.D_b = q (db may be
// empty in the degenerate (1,0) case).
std::vector<Check> cusp_identities(const DivisorConfig& config, const HomologyClass& A, int64_t p, int64_t q,
                                   const std::string& da, const std::string& db);

struct Resolution {
    DivisorConfig config;               // total transform
    std::optional<AreaVector> w;
    LatticeMap embed;                   // original lattice -> resolved lattice
    std::vector<int64_t> weights;       // multiplicity of each exceptional class, in blowup order
    std::vector<HomologyClass> exceptional;
    std::vector<std::string> exceptional_ids;
    std::string da_branch;              // id whose proper transform loses the D_a multiplicities
    HomologyClass a_tilde;
    std::vector<Check> checks;
};

// Toric blowups resolving a (p,q)-cusp of a curve in class A placed at
// D_a \cap D_b. Exceptional generators are labelled R1, R2, ...; areas, when
// supplied, are extended with a quarter of each step's admissible bound.
Resolution resolve_pattern(const DivisorConfig& config, const HomologyClass& A, const std::string& da,
                           const std::string& db, int64_t p, int64_t q, const AreaVector* w = nullptr);

struct PositiveCombination {
    std::map<std::string, int64_t> coefficients;  // component id -> coefficient
    HomologyClass target;
    bool nonnegative = false;
    bool reproduces = false;
};
// Writes q([D_a] - [D~_a]) - sum m_i E_i over the exceptional components of
// the resolution.
PositiveCombination positive_combination(const DivisorConfig& original, const Resolution& res, int64_t q,
                                         const std::string& da);

// Pairing update when the cusp point itself is blown up: returns the new
// (p, q, D_a, D_b) and the multiplicity subtracted from A.
struct CuspState {
    int64_t p = 0, q = 0;
    std::string da, db;
};
CuspState blowup_cusp_point(const CuspState& s, const std::string& e_id, int64_t* multiplicity);

}  // namespace symdiv
