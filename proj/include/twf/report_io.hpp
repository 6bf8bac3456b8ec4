#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "twf/assumptions.hpp"
#include "twf/model.hpp"
#include "twf/oracle.hpp"
#include "twf/profile.hpp"
#include "twf/thresholds.hpp"

namespace twf {

using Json = nlohmann::ordered_json;

/// Model file: {"name": ..., "f": [...], "D": [...], "g": [...]} with
/// coefficients constant term first, or {"preset": NAME}.
[[nodiscard]] ModelSpec parse_model_spec(const Json& j);
[[nodiscard]] ModelSpec load_model_spec(const std::string& path);

/// Finite numbers as numbers; infinities as the strings "inf" / "-inf";
/// NaN as null.
[[nodiscard]] Json number(double x);
[[nodiscard]] Json number(const std::optional<double>& x);
/// 17 significant digits.
[[nodiscard]] std::string format_double(double x);

[[nodiscard]] Json to_json(const AssumptionReport& r);
[[nodiscard]] Json to_json(const SpeedBounds& b);
[[nodiscard]] Json to_json(const CriticalSpeedResult& r, const std::string& witness_csv = {});
[[nodiscard]] Json to_json(const BetaResult& r);
[[nodiscard]] Json to_json(const ShootingResult& s);
[[nodiscard]] Json to_json(const EndpointSlope& s);
[[nodiscard]] Json to_json(const FrontProfile& p);
[[nodiscard]] Json to_json(const FactCheck& c);
[[nodiscard]] Json to_json(const ReferenceResult& r);
[[nodiscard]] Json to_json(const RegressionCheck& c);
[[nodiscard]] Json to_json(const PropertyReport& r);
[[nodiscard]] Json to_json(const BaselineEntry& e);
[[nodiscard]] BaselineEntry baseline_from_json(const Json& j);

[[nodiscard]] std::vector<BaselineEntry> load_baselines(const std::string& path);
void save_baselines(const std::string& path, const std::vector<BaselineEntry>& entries);

/// Writes '#'-prefixed comment lines, a column header and the rows.
void write_csv(const std::string& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& header, const std::vector<std::vector<double>>& columns);

/// (phi, z, zdot) samples of a shot.
void write_shot_csv(const std::string& path, const ShootingResult& s, const std::string& model_name);
/// (xi, phi, dphi) samples of a profile.
void write_profile_csv(const std::string& path, const FrontProfile& p, const std::string& model_name);

}  // namespace twf
