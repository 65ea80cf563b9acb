#pragma once

#include "symdiv/certify.hpp"
#include "symdiv/inflation.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace symdiv {

using Json = nlohmann::ordered_json;

inline constexpr const char* kConfigSchema = "symdiv/config/1";
inline constexpr const char* kCertificateSchema = "symdiv/certificate/1";
inline constexpr const char* kPlanSchema = "symdiv/plan/1";

// Malformed document; `field` is a JSON-pointer-like path such as "areas[3]".
class ParseError : public std::runtime_error {
public:
    ParseError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

Json ambient_to_json(const Ambient& amb);
Ambient ambient_from_json(const Json& j, const std::string& path = "ambient");

Json areas_to_json(const AreaVector& w);
AreaVector areas_from_json(const Ambient& amb, const Json& j, const std::string& path = "areas");

struct ConfigDocument {
    DivisorConfig config;
    std::optional<AreaVector> areas;
};

Json config_to_json(const DivisorConfig& config, const AreaVector* w = nullptr);
ConfigDocument config_from_json(const Json& j, const std::string& path = "");

Json checks_to_json(const std::vector<Check>& checks);

Json certificate_to_json(const AffineRuledCertificate& cert);
// Rebuilds every step's configuration by replaying the recorded moves from the
// terminal configuration.
AffineRuledCertificate certificate_from_json(const Json& j);

Json plan_to_json(const InflationPlan& plan, bool with_checks = true);
InflationPlan plan_from_json(const Json& j, const std::string& path = "");

// Graphviz dual graph with nodes in component order and sorted edges.
std::string to_dot(const DivisorConfig& config, const std::string& name);

// Reads a file and parses it as JSON; ParseError on failure.
Json read_json_file(const std::string& path);

}  // namespace symdiv
