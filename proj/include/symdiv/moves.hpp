#pragma once

#include "symdiv/divisor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace symdiv {

enum class BlowupType { Exterior, Toric, NonToric, HalfToric };
std::string type_name(BlowupType t);
std::optional<BlowupType> parse_type(const std::string& s);

// Linear map of lattices given by the images of the source basis.
struct LatticeMap {
    Ambient from, to;
    std::vector<HomologyClass> images;
    HomologyClass apply(const HomologyClass& c) const;
};

struct BlowupMove {
    BlowupType type = BlowupType::Exterior;
    std::string a, b;             // Toric: the edge; NonToric/HalfToric: a
    bool with_component = false;  // Exterior only: keep the exceptional sphere as a component
    std::string new_id;           // id of a created component (generated when empty)
    std::string new_label;        // label of the new generator (generated when empty)
};

// Ambient with one more exceptional generator, the embedding of the old
// lattice and the new exceptional class.
struct LatticeExtension {
    Ambient to;
    LatticeMap embed;
    HomologyClass e;
};
LatticeExtension extend_lattice(const Ambient& amb, const std::string& label = "");

struct BlowupResult {
    DivisorConfig config;
    LatticeExtension ext;
    std::string new_component;  // empty when no component was added
};

BlowupResult blowup(const DivisorConfig& config, const BlowupMove& move);

// The graph/class rewrite with a prescribed embedding and exceptional class.
DivisorConfig apply_blowup(const DivisorConfig& config, const LatticeMap& embed, const HomologyClass& e,
                           const BlowupMove& move, int insert_position = -1);

// Areas on the extended lattice agreeing with w on the embedded classes and
// giving the new exceptional class the area e_area.
AreaVector extend_areas(const AreaVector& w, const LatticeExtension& ext, const Rational& e_area);

// Supremum of exceptional areas keeping area(K+[D]) < 0 and every affected
// component area positive; nullopt when unbounded.
std::optional<Rational> blowup_area_threshold(const DivisorConfig& config, const AreaVector& w,
                                              const BlowupMove& move);

struct BlowdownResult {
    DivisorConfig config;
    BlowupType type = BlowupType::Exterior;
    HomologyClass target;              // in the pre-blowdown lattice
    std::string removed_component;     // empty if the class was not a component
    int removed_position = -1;
    std::vector<std::string> incident; // components whose class gains +target
    LatticeMap embed;                  // post lattice -> pre lattice
    int reflections = 0;
};

std::optional<BlowupType> classify_blowdown(const DivisorConfig& config, const HomologyClass& e,
                                            std::string* why = nullptr);
BlowdownResult blowdown(const DivisorConfig& config, const HomologyClass& e);
AreaVector transport_areas(const AreaVector& w_pre, const LatticeMap& embed);
// Rebuilds the pre-blowdown configuration from the post configuration.
DivisorConfig replay_blowdown(const DivisorConfig& post, const BlowdownResult& step);
BlowupMove inverse_move(const BlowdownResult& step);

using SelfIntSeq = std::vector<int64_t>;

// Toric blowup between entries k and k+1 (1-based).
SelfIntSeq toric_seq_blowup(const SelfIntSeq& seq, int k);

struct ToricSeqVerdict {
    bool reachable = false;
    std::vector<int> witness;  // positions applied in order starting from (0,0)
};
ToricSeqVerdict is_toric_blowup_seq(const SelfIntSeq& seq);
SelfIntSeq replay_toric_witness(const std::vector<int>& witness);

}  // namespace symdiv
