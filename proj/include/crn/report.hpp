#pragma once

#include "json.hpp"

#include "crn/compose.hpp"
#include "crn/ddesim.hpp"

namespace crn {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kToolVersion = "0.1.0";

std::string sha256_hex(const std::string& data);

/// The certificate document: byte-deterministic apart from the meta block.
nlohmann::json certificate_document(const ReactionNetwork& net,
                                    const PersistenceCertificate& cert,
                                    const Decomposition& dec);

nlohmann::json run_report_json(const ReactionNetwork& net,
                               const RunReport& report);

std::string boundary_to_string(const BoundaryClass& b);
std::string case_to_string(CaseLabel label);

}  // namespace crn
