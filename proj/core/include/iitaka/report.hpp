#pragma once

#include <string>

#include "json.hpp"

#include "iitaka/config.hpp"
#include "iitaka/locus.hpp"

namespace iitaka {

using Json = nlohmann::ordered_json;

struct CommandOutcome {
    Json report;
    int exit_code = 0;
};

/// `"empty" | "all" | {"points": [...]}`, per the report schema.
Json locus_json(const LocusResult& l);
Json locus_entry(const LocusResult& l);  // locus + stabilized + certificate

/// Report envelope: schema_version, tool, command, config echo, seed.
Json report_shell(const std::string& command, const ScenarioConfig& cfg);

CommandOutcome cmd_loci(const ScenarioConfig& cfg);
CommandOutcome cmd_classify(const ScenarioConfig& cfg);
CommandOutcome cmd_kodaira(const ScenarioConfig& cfg);
CommandOutcome cmd_bott(const ScenarioConfig& cfg);
/// name: lemma | torsion | double-cover | euler | abelian.
CommandOutcome cmd_verify(const std::string& name, const ScenarioConfig& cfg);

}  // namespace iitaka
