#pragma once

#include "symdiv/cusp.hpp"
#include "symdiv/reduction.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symdiv {

// Failure of one pipeline stage; `stage` names it for reports.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& what)
        : std::runtime_error(what), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

struct CertifyOptions {
    int64_t coeff_bound = kDefaultCoeffBound;
    std::optional<Rational> area_bound;  // for the exceptional pairing check; nullopt = cheapest exceptional generator
};

struct Stage {
    std::string name;
    ReductionTrace trace;
};

struct AffineRuledCertificate {
    // Every class and configuration starts out on the input ambient.
    AffineRuledCertificate(const DivisorConfig& in, const AreaVector& areas);

    DivisorConfig input;
    AreaVector w;
    Rational hypothesis_value;
    std::vector<Stage> stages;
    DivisorConfig terminal;
    AreaVector w_terminal;

    std::string route;  // admissible-subchain | minimal-model | comb | A3'-special | ruled-fiber
    std::optional<MinimalModelTag> model;
    std::vector<std::string> chain;  // good labelling, admissible route only
    int k = 0;
    std::vector<int64_t> a, c;

    // Configuration carrying the cusp: the terminal, or its completion.
    DivisorConfig cusp_config;
    AreaVector w_cusp;
    HomologyClass A;
    int64_t p = 0, q = 0;
    std::string da, db;

    HomologyClass A_input;        // A pushed into the input lattice
    CuspState transported;        // cusp data on the input configuration
    HomologyClass A_transported;
    bool transport_applies = false;

    WeightSequence weights;
    DivisorConfig resolved;
    AreaVector w_resolved;
    HomologyClass a_tilde;
    std::vector<std::string> exceptional_ids;
    std::map<std::string, int64_t> combination;

    CertifyOptions options;
    std::vector<Check> checks;
    std::vector<std::string> assumptions;
    std::vector<std::string> interpretations;
    std::vector<std::string> notes;
};

AffineRuledCertificate certify_affine_ruled(const DivisorConfig& config, const AreaVector& w,
                                            const CertifyOptions& opt = {});

// Recomputes every stored quantity from the input and the recorded trace, and
// returns the full checklist.
std::vector<Check> verify_certificate(const AffineRuledCertificate& cert);

// Configurations along the pipeline, input first, for graph output.
std::vector<std::pair<std::string, DivisorConfig>> pipeline_configs(const AffineRuledCertificate& cert);

}  // namespace symdiv
