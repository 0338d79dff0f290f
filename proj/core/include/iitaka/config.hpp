#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iitaka/bundles.hpp"
#include "iitaka/curve.hpp"

namespace iitaka {

/// Parsed form of the flat key=value scenario format. Tokens split on
/// whitespace, `#` comments run to end of line, `summand=` may repeat.
struct ScenarioConfig {
    std::optional<CurveModel> model;
    std::vector<std::string> summand_specs;
    std::string bundle;  // catalogued name: euler-q | double-cover-pullback | cotangent
    std::optional<std::string> ample_spec;
    int m_max = 8;
    int q_max = 4;
    int k_max = 3;
    int samples = 5;
    std::uint64_t seed = 17;
    bool require_stable = false;
    // bott weight parameters
    std::optional<int> bott_n;
    std::optional<int> bott_m;
    std::optional<long> bott_k;
};

ScenarioConfig parse_config(const std::string& text);

CurvePoint parse_point(const CurveModel& model, const std::string& token);

/// `deg:<d>`, `bideg:<d1>,<d2>`, or a `point:mult,point:mult` list.
Divisor parse_divisor(const CurveModel& model, const std::string& spec);

/// Split bundle from the config (explicit summands or the catalogued
/// cotangent); throws parse_error when no bundle is described.
SplitBundle build_bundle(const ScenarioConfig& cfg);

/// Ample twist class: the `ample=` divisor when present, else the model default.
DivisorClass build_ample(const ScenarioConfig& cfg);

}  // namespace iitaka
