#include "stepline/export.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace stepline {

const std::vector<std::string>& export_kinds() {
  static const std::vector<std::string> kinds{"H", "S", "Sbar", "T1", "T2", "families", "moments"};
  return kinds;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + csv_field(fields[i]);
  return line + "\r\n";
}

std::string matrix_csv(const Matrix& m) {
  std::string out;
  std::vector<std::string> row(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) row[c] = to_string(m(r, c));
    out += csv_line(row);
  }
  return out;
}

nlohmann::ordered_json matrix_json(const Matrix& m) {
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

nlohmann::ordered_json header(const Workspace& ws, const std::string& kind) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["kind"] = kind;
  j["q"] = ws.F.q;
  j["p"] = ws.F.p;
  j["depth"] = ws.depth;
  return j;
}

std::string families_csv(const Workspace& ws) {
  std::string out = csv_line({"family", "n", "component", "position", "coefficient"});
  auto emit = [&](const char* fam, const std::vector<std::vector<BiPoly>>& polys) {
    for (std::size_t n = 0; n < ws.depth; ++n)
      for (std::size_t c = 0; c < polys[n].size(); ++c)
        for (const auto& [K, v] : polys[n][c].terms())
          out += csv_line({fam, std::to_string(n), std::to_string(c + 1), std::to_string(K), to_string(v)});
  };
  emit("A", ws.A.cols);
  emit("B", ws.B.rows);
  return out;
}

nlohmann::ordered_json band_json(const RecurrenceMatrix& T, std::size_t D, bool rows) {
  auto out = nlohmann::ordered_json::array();
  for (std::size_t n = 0; n < D; ++n) {
    const Band b = rows ? T.row_band(n) : T.col_band(n);
    out.push_back({{"n", n}, {"first", b.first}, {"last", b.last}});
  }
  return out;
}

} // namespace

std::string export_text(const Workspace& ws, const std::string& kind, ExportFormat format) {
  const std::size_t D = ws.depth;
  if (std::find(export_kinds().begin(), export_kinds().end(), kind) == export_kinds().end())
    throw std::invalid_argument("unknown export kind '" + kind + "'");

  if (format == ExportFormat::csv) {
    if (kind == "H") {
      std::string out;
      for (std::size_t i = 0; i < D; ++i) out += csv_line({to_string(ws.F.H[i])});
      return out;
    }
    if (kind == "S") return matrix_csv(ws.F.S.leading(D));
    if (kind == "Sbar") return matrix_csv(ws.F.Sbar.leading(D));
    if (kind == "T1") return matrix_csv(ws.T1.window(D, D));
    if (kind == "T2") return matrix_csv(ws.T2.window(D, D));
    if (kind == "moments") return matrix_csv(ws.M.data.leading(D));
    return families_csv(ws);
  }

  auto j = header(ws, kind);
  if (kind == "H") {
    j["data"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < D; ++i) j["data"].push_back(to_string(ws.F.H[i]));
  } else if (kind == "S") {
    j["data"] = matrix_json(ws.F.S.leading(D));
  } else if (kind == "Sbar") {
    j["data"] = matrix_json(ws.F.Sbar.leading(D));
  } else if (kind == "T1" || kind == "T2") {
    const auto& T = kind == "T1" ? ws.T1 : ws.T2;
    j["data"] = matrix_json(T.window(D, D));
    j["row_bands"] = band_json(T, D, true);
    j["col_bands"] = band_json(T, D, false);
  } else if (kind == "moments") {
    j["data"] = matrix_json(ws.M.data.leading(D));
  } else {
    auto [A, B] = extract_families(ws.F, D);
    j["A"] = to_json(A);
    j["B"] = to_json(B);
  }
  return j.dump(2) + "\n";
}

std::filesystem::path export_to(const Workspace& ws, const std::string& kind, ExportFormat format,
                                const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto path = dir / (kind + (format == ExportFormat::json ? ".json" : ".csv"));
  const std::string text = export_text(ws, kind, format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
  return path;
}

} // namespace stepline
