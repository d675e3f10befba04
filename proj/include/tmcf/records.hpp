#pragma once

// JSON-lines certificate records and their key=value text rendering. Both
// forms carry exactly the same strings.

#include <string>
#include <string_view>

#include <json.hpp>

#include "tmcf/approx.hpp"

namespace tmcf::records {

using Record = nlohmann::ordered_json;

enum class Format { json, text };

/// Throws InvalidArgument for anything but "json" or "text".
Format parse_format(std::string_view name);

inline constexpr int kDecimalDigits = 30;

Record witness(const approx::WitnessRecord& w);
Record acceptability(const approx::AcceptabilityCertificate& c);
Record scan_row(const approx::ScanRow& row);
Record quality(const approx::ApproxPair& pair, const approx::QualityReport& q);

/// One line, no trailing newline. Text mode prints `key=value` pairs
/// separated by spaces; arrays become comma-joined lists, null becomes none.
std::string render(const Record& rec, Format fmt);

}  // namespace tmcf::records
