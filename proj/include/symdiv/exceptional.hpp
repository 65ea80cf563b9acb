#pragma once

#include "symdiv/divisor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace symdiv {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

bool all_pass(const std::vector<Check>& checks);

constexpr int64_t kDefaultCoeffBound = 12;

struct ExceptionalSet {
    Ambient ambient;
    std::vector<HomologyClass> classes;  // sorted by area, then coefficients
    std::vector<Rational> areas;
    int64_t coeff_bound = kDefaultCoeffBound;
    std::optional<Rational> area_bound;  // nullopt = unbounded
    bool incomplete = false;             // classes beyond coeff_bound may satisfy the area bound
};

// Smallest area among the exceptional generators, if any.
std::optional<Rational> default_area_bound(const AreaVector& w);

ExceptionalSet enumerate_exceptional(const AreaVector& w, std::optional<Rational> area_bound,
                                     int64_t coeff_bound = kDefaultCoeffBound);
// Single-threaded reference for the parallel enumeration.
ExceptionalSet enumerate_exceptional_serial(const AreaVector& w, std::optional<Rational> area_bound,
                                            int64_t coeff_bound = kDefaultCoeffBound);

std::vector<HomologyClass> minimal_area(const ExceptionalSet& set);
// Minimal-area exceptional classes, enumerated under the default area bound.
std::vector<HomologyClass> minimal_exceptional(const AreaVector& w, int64_t coeff_bound = kDefaultCoeffBound);

enum class TerminalTag { ProductOfSpheres, OnePointBlowup };

struct SecondaryChain {
    std::vector<HomologyClass> chain;  // E_2, ..., E_n
    HomologyClass e1, e1_prime;
    TerminalTag tag;
    bool incomplete = false;
};
SecondaryChain secondary_chain(const AreaVector& w, int64_t coeff_bound = kDefaultCoeffBound);

bool sw_nonzero(const HomologyClass& a, const AreaVector& w);

std::vector<Check> d_good(const HomologyClass& a, const DivisorConfig& config, const AreaVector& w,
                          const ExceptionalSet& set);

// Unimodular change of basis: new coefficients = matrix * old coefficients.
struct Normalization {
    std::vector<std::vector<int64_t>> matrix;
    std::vector<std::vector<int64_t>> inverse;
    std::vector<std::string> labels;  // exceptional labels after the change of basis
    int reflections = 0;
    int index = -1;  // basis index of the image of e (always the last generator)
};
Normalization normalize_to_basis(const HomologyClass& e, int max_steps = 256);
std::vector<int64_t> apply_matrix(const std::vector<std::vector<int64_t>>& m, const std::vector<int64_t>& v);

}  // namespace symdiv
