#pragma once

#include <string>

#include "apsc/conditions.hpp"

namespace apsc {

/// One row per condition:
///   model,condition,status,witness_kind,witness,value,fitted,detail
/// preceded by '#' comment lines carrying `config` and the report metadata.
std::string report_csv(const ConditionReport& r, const std::string& config = "");

/// Aligned human-readable table with the same content.
std::string report_text(const ConditionReport& r, const std::string& config = "");

std::string csv_escape(const std::string& s);

/// %.17g, or empty for nullopt.
std::string format_optional(const std::optional<double>& x);

}  // namespace apsc
