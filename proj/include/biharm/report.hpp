#pragma once

// JSON form of check reports. Layout version is the "schema" field.

#include "json.hpp"
#include <optional>

#include "biharm/biharmonic.hpp"

namespace biharm {

inline constexpr int kReportSchema = 1;

nlohmann::json report_to_json(const BiharmonicReport& report, std::optional<Verdict> expected = std::nullopt);

std::string summarize(const BiharmonicReport& report);

}  // namespace biharm
