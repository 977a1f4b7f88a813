#pragma once

#include <string>

#include "crysta/construct.hpp"
#include "crysta/invariants.hpp"
#include "crysta/moves.hpp"

#include <json.hpp>

namespace crysta {

using Json = nlohmann::json;

/// Envelope shared by every command: schema version, tool version, command
/// name and input digest. All numbers are integers; the schema is stable
/// across patch versions.
Json report_envelope(const std::string& command, const std::string& input_name,
                     const std::string& input_bytes);

Json to_json(const ResidueTable& t);
Json to_json(const GenusSpectrum& gs);
Json to_json(const HomologyProfile& h);
Json to_json(const SimplicityCertificate& cert);
Json to_json(const InvariantReport& rep);
Json catalog_entry_json(const CatalogEntry& e);

inline const char* kToolVersion = "0.1.0";

}  // namespace crysta
