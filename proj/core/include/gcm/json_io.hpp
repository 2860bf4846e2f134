#pragma once

#include "gcm/corr.hpp"
#include "gcm/dataset.hpp"
#include "gcm/generator.hpp"
#include "gcm/mpole.hpp"
#include "gcm/verify.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace gcm {

/// Every machine-readable document carries this as "format_version".
inline constexpr int kFormatVersion = 1;

nlohmann::json to_json(const ColumnStats& stats, const std::vector<std::string>& names);
nlohmann::json to_json(const CorrMatrix& c, const std::vector<std::string>& names);
nlohmann::json to_json(const MultipoleResult& r, const std::vector<std::string>& names);
nlohmann::json to_json(const Blueprint& b);
nlohmann::json to_json(const VerificationReport& r);

/// Throws Error(FormatError) on a missing field, wrong version, or
/// inconsistent dimensions.
Blueprint blueprint_from_json(const nlohmann::json& j);

void write_corr_csv(std::ostream& out, const CorrMatrix& c, const std::vector<std::string>& names,
                    char delimiter = ',');

nlohmann::json load_json(const std::filesystem::path& path);
void save_json(const nlohmann::json& j, const std::filesystem::path& path);

}  // namespace gcm
