#pragma once

#include "stepline/matrix.hpp"
#include "stepline/pipeline.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace stepline {

enum class ExportFormat { json, csv };

/// H, S, Sbar, T1, T2, families, moments.
const std::vector<std::string>& export_kinds();

/// RFC-4180 field: quoted when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view text);
std::string csv_line(const std::vector<std::string>& fields);

/// One line per row, entries as "num/den".
std::string matrix_csv(const Matrix& m);
nlohmann::ordered_json matrix_json(const Matrix& m);

/// Document for one export kind, restricted to the target depth of the
/// workspace. JSON documents carry "schema_version": 1.
std::string export_text(const Workspace& ws, const std::string& kind, ExportFormat format);

/// Writes <dir>/<kind>.<json|csv> and returns the path. Throws std::runtime_error on I/O failure.
std::filesystem::path export_to(const Workspace& ws, const std::string& kind, ExportFormat format,
                                const std::filesystem::path& dir);

} // namespace stepline
