#include "stepline/cli.hpp"

#include "stepline/export.hpp"
#include "stepline/pipeline.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace stepline {

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

nlohmann::ordered_json decimal_matrix(const Matrix& m) {
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_decimal(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

struct Options {
  bool render_decimal = false;
  bool timing = false;
  std::string config;
  std::size_t depth = 0;
  std::string out_dir;
  std::string checks;
  std::optional<std::uint64_t> seed;
  std::size_t n = 0;
  std::string x, y;
};

int cmd_compute(const Options& o, std::ostream& out) {
  RunConfig cfg = load_config(o.config);
  if (o.depth) cfg.depth = o.depth;
  cfg.timing = o.timing;
  const std::filesystem::path dir = !o.out_dir.empty() ? o.out_dir : (!cfg.output.empty() ? cfg.output : "out");

  std::optional<Workspace> ws;
  const RunResult res = run(cfg, &ws);
  std::filesystem::create_directories(dir);
  {
    std::ofstream rep(dir / "report.json", std::ios::binary);
    rep << res.report.dump(2) << "\n";
    if (!rep) throw std::runtime_error("cannot write report in '" + dir.string() + "'");
  }
  if (!ws) {
    out << "factorization breakdown at index " << res.report["breakdown_index"].get<std::size_t>() << "\n";
    return res.exit_code;
  }
  for (const auto& kind : export_kinds()) {
    export_to(*ws, kind, ExportFormat::json, dir);
    export_to(*ws, kind, ExportFormat::csv, dir);
  }
  out << "depth " << cfg.depth << " (extended " << ws->extended << "), q=" << cfg.q << " p=" << cfg.p << "\n";
  for (std::size_t i = 0; i < cfg.depth; ++i)
    out << "H[" << i << "] = " << (o.render_decimal ? to_decimal(ws->F.H[i]) : to_string(ws->F.H[i])) << "\n";
  out << "status: " << res.report["status"].get<std::string>() << "\n";
  return res.exit_code;
}

int cmd_verify(const Options& o, std::ostream& out) {
  RunConfig cfg = load_config(o.config);
  cfg.timing = o.timing;
  if (!o.checks.empty()) {
    cfg.checks.clear();
    for (const auto& name : split_list(o.checks)) {
      if (std::find(all_checks().begin(), all_checks().end(), name) == all_checks().end())
        throw ConfigError("--checks: unknown check '" + name + "'");
      if (std::find(cfg.checks.begin(), cfg.checks.end(), name) == cfg.checks.end()) cfg.checks.push_back(name);
    }
  }
  if (cfg.checks.empty()) cfg.checks = all_checks();
  if (o.seed) cfg.seed = *o.seed;
  const RunResult res = run(cfg);
  out << res.report.dump(2) << "\n";
  return res.exit_code;
}

int cmd_kernel(const Options& o, std::ostream& out) {
  RunConfig cfg = load_config(o.config);
  Point x, y;
  try {
    x = parse_point(o.x);
    y = parse_point(o.y);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("--x/--y: ") + e.what());
  }
  const MeasureMatrix mm(cfg.q, cfg.p, cfg.measures);
  const Workspace ws = build_workspace(mm, std::max(cfg.depth, o.n + 1));
  const Matrix K = kernel_eval(ws.A, ws.B, o.n, x, y);
  nlohmann::ordered_json entry;
  entry["n"] = o.n;
  entry["x"] = {to_string(x.x1), to_string(x.x2)};
  entry["y"] = {to_string(y.x1), to_string(y.x2)};
  entry["matrix"] = matrix_json(K);
  if (o.render_decimal) entry["matrix_decimal"] = decimal_matrix(K);
  out << nlohmann::ordered_json::array({entry}).dump(2) << "\n";
  return kPass;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mixed multiple orthogonal polynomials on the step-line: factorization, families, "
               "recurrences and Christoffel-Darboux kernels in exact arithmetic"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--render-decimal", o.render_decimal, "Also print decimal approximations in human-oriented output");
  app.add_flag("--timing", o.timing, "Print per-check wall time to stderr");

  auto* compute = app.add_subcommand("compute", "Build the pipeline, run configured checks, write exports");
  compute->add_option("--config", o.config, "JSON config path")->required();
  compute->add_option("--depth", o.depth, "Override the target depth")->check(CLI::PositiveNumber);
  compute->add_option("--out", o.out_dir, "Output directory");

  auto* verify = app.add_subcommand("verify", "Run checks and print the JSON report");
  verify->add_option("--config", o.config, "JSON config path")->required();
  verify->add_option("--checks", o.checks, "Comma-separated check names (default: config, else all)");
  verify->add_option("--seed", o.seed, "Seed for random evaluation points");

  auto* kernel = app.add_subcommand("kernel", "Evaluate the Christoffel-Darboux kernel K^[n](x, y)");
  kernel->add_option("--config", o.config, "JSON config path")->required();
  kernel->add_option("--n", o.n, "Kernel index")->required();
  kernel->add_option("--x", o.x, "Point \"x1,x2\"")->required();
  kernel->add_option("--y", o.y, "Point \"y1,y2\"")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (*compute) return cmd_compute(o, out);
    if (*verify) return cmd_verify(o, out);
    return cmd_kernel(o, out);
  } catch (const BreakdownError& e) {
    err << "error: " << e.what() << "\n";
    return kBreakdown;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

} // namespace stepline
