// Acceptance runner: one PASS/FAIL line per criterion. Every identity is
// exact (zero tolerance); only the runtime limits below are tolerances.

#include "stepline/cdkernel.hpp"
#include "stepline/cli.hpp"
#include "stepline/pipeline.hpp"

#include "support.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace stepline;
namespace fs = std::filesystem;

namespace {

constexpr double kLimitIndexSeconds = 5.0;
constexpr double kLimitFactorizationSeconds = 120.0;
constexpr double kLimitCdSeconds = 180.0;

constexpr std::size_t kSystems = 50;
constexpr std::size_t kDepth = 20;
constexpr std::size_t kOracleDepth = 12;
constexpr std::size_t kRecurrenceMaxN = 14;
constexpr std::size_t kRecurrencePoints = 10;
constexpr std::size_t kCdMaxN = 10;
constexpr std::size_t kAbcPairs = 10;
constexpr std::size_t kProjectionMaxI = 3;
constexpr std::size_t kExampleDepth = 14;  // extended depth 24 covers both displays

const std::pair<std::size_t, std::size_t> kShapes[] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 3}};

struct Outcome {
  bool pass = true;
  std::string detail;
  std::optional<double> limit;
};

// Collects failures; only the first few are printed.
struct Tally {
  std::size_t conditions = 0;
  std::size_t failures = 0;
  std::vector<std::string> first;

  void expect(bool ok, const std::string& what) {
    ++conditions;
    if (ok) return;
    ++failures;
    if (first.size() < 5) first.push_back(what);
  }
  void absorb(const CheckReport& r, const std::string& where) {
    conditions += r.checked;
    failures += r.violation_count;
    for (const auto& v : r.violations)
      if (first.size() < 5) first.push_back(where + ": " + v);
  }
  std::string summary() const {
    std::string s = std::to_string(conditions) + " conditions, " + std::to_string(failures) + " failed";
    for (const auto& f : first) s += "; " + f;
    return s;
  }
};

struct System {
  std::size_t q, p;
  bool symmetric;
  MeasureMatrix mm;
};

// Seeded draw of the 50 systems: shapes in rotation, half of the square
// shapes symmetric, regenerated on breakdown at the extended depth.
std::vector<System> draw_systems() {
  std::vector<System> out;
  for (std::size_t i = 0; i < kSystems; ++i) {
    const auto [q, p] = kShapes[i % std::size(kShapes)];
    const bool symmetric = q == p && (i / std::size(kShapes)) % 2 == 0;
    RationalSampler rng(7919 + i);
    out.push_back({q, p, symmetric,
                   testsupport::factorizable_system(rng, q, p, required_depth(kDepth, q, p), symmetric)});
  }
  return out;
}

std::string label(const System& s, std::size_t i) {
  return "system " + std::to_string(i) + " (" + std::to_string(s.q) + "," + std::to_string(s.p) + ")";
}

// --- 1 ---------------------------------------------------------------------

Outcome criterion_index() {
  Tally t;
  for (std::size_t r = 1; r <= 3; ++r)
    for (Axis k : {Axis::x1, Axis::x2}) {
      const std::string tag = " r=" + std::to_string(r) + " k=" + std::to_string(axis_index(k));
      std::set<std::size_t> image;
      std::size_t prev = 0;
      for (std::size_t n = 0; n < 1000; ++n) {
        const std::size_t m = n_plus(n, r, k);
        t.expect(n == 0 || m > prev, "n_plus not increasing at n=" + std::to_string(n) + tag);
        t.expect(n_plus_inverse(m, r, k) == n, "n_plus inverse at n=" + std::to_string(n) + tag);
        image.insert(m);
        prev = m;
        const std::size_t j = n_minus_big(n, r, k);
        t.expect(n_plus(j, r, k) >= n && (j == 0 || n_plus(j - 1, r, k) < n),
                 "n_minus_big not minimal at n=" + std::to_string(n) + tag);
      }
      for (std::size_t m = 0; m < prev; ++m)
        t.expect(in_complement_J(m, r, k) == (image.count(m) == 1), "J membership at " + std::to_string(m) + tag);
    }
  // Step-line: (0,0), (1,0), (1,1), (2,0), ...
  std::size_t I = 0;
  for (std::size_t i = 0; I < 1000; ++i)
    for (std::size_t j = 0; j <= i && I < 1000; ++j, ++I) {
      t.expect(pos_of(i, j) == I, "pos_of(" + std::to_string(i) + "," + std::to_string(j) + ")");
      const auto g = pair_of(I);
      t.expect(g.i == i && g.j == j, "pair_of(" + std::to_string(I) + ")");
    }
  // Positions read off the printed displays.
  using Ones = std::vector<std::pair<std::size_t, std::size_t>>;
  t.expect(pos_of(2, 1) == 4, "pos_of(2,1) = 4");
  t.expect(pair_of(4).i == 2 && pair_of(4).j == 1, "pair_of(4) = (2,1)");
  t.expect(n_plus(2, 1, Axis::x1) == 4, "T1 row 2 has its 1 in column 4");
  t.expect(n_plus(1, 1, Axis::x2) == 4, "T2 row 1 has its 1 in column 4");
  t.expect(!in_complement_J(2, 1, Axis::x1), "2 lies in J for r=1, k=1");
  t.expect(n_minus_big(4, 2, Axis::x1) == 2, "T1 rows 4-5 start at column 2");
  t.expect(n_minus_big(3, 2, Axis::x1) == 1, "T1 row 3 starts at column 1");
  t.expect(shift_operator(1, Axis::x1, 4).ones == Ones{{0, 1}, {1, 3}, {2, 4}, {3, 6}}, "T1 ones in rows 0-3");
  return {t.failures == 0, t.summary(), kLimitIndexSeconds};
}

// --- 2 ---------------------------------------------------------------------

Outcome criterion_factorization() {
  Tally t;
  std::size_t symmetric = 0;
  const auto systems = draw_systems();
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const auto& s = systems[i];
    const std::size_t W = required_depth(kDepth, s.q, s.p);
    const auto M = assemble_moments(s.mm, W);
    const auto F = factorize(M);
    t.expect(F.reconstruct() == M.data, label(s, i) + ": reconstruction");
    for (std::size_t d = 1; d <= W; ++d) {
      const auto G = factorize(M.data.leading(d), s.q, s.p);
      const auto L = F.leading(d);
      t.expect(G.S == L.S && G.Sbar == L.Sbar && G.H == L.H, label(s, i) + ": nesting at d=" + std::to_string(d));
    }
    if (s.symmetric) {
      ++symmetric;
      t.expect(F.S == F.Sbar, label(s, i) + ": S = Sbar");
    }
  }
  t.expect(symmetric > 0, "no symmetric systems drawn");

  const MeasureMatrix zero_minor(1, 2, {RectDensity{-1, 1, -1, 1, BiPoly::constant(1)},
                                        RectDensity{-1, 1, -1, 1, BiPoly::monomial(1)}});
  for (int run = 0; run < 2; ++run) {
    std::optional<std::size_t> at;
    try {
      factorize(assemble_moments(zero_minor, 8));
    } catch (const BreakdownError& e) {
      at = e.index;
    }
    t.expect(at == std::optional<std::size_t>(2), "constructed zero minor breaks down at index 2");
  }
  return {t.failures == 0, std::to_string(systems.size()) + " systems (" + std::to_string(symmetric) +
                               " symmetric); " + t.summary(),
          kLimitFactorizationSeconds};
}

// --- 3 ---------------------------------------------------------------------

Outcome criterion_orthogonality() {
  Tally t;
  const auto systems = draw_systems();
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const auto& s = systems[i];
    const auto ws = build_workspace(s.mm, kDepth);
    const auto orth = check_orthogonality(ws.A, ws.B, ws.moments, kDepth);
    t.absorb(orth, label(s, i));
    t.expect(orth.unchecked == 0, label(s, i) + ": unchecked orthogonality conditions");
    t.absorb(check_biorthogonality(ws.A, ws.B, ws.moments, kDepth), label(s, i));

    const Matrix M = testsupport::oracle_moment_matrix(s.mm, kOracleDepth);
    for (std::size_t n = 0; n < kOracleDepth; ++n) {
      const auto a = testsupport::oracle_A_coefficients(M, n);
      const auto b = testsupport::oracle_B_coefficients(M, n);
      bool same = true;
      for (std::size_t idx = 0; idx < kOracleDepth; ++idx) {
        const Rational ea = idx <= n ? a[idx] : Rational(0);
        const Rational eb = idx <= n ? b[idx] : Rational(0);
        same = same && ws.A(n, idx % s.p).coefficient(idx / s.p) == ea &&
               ws.B(n, idx % s.q).coefficient(idx / s.q) == eb;
      }
      t.expect(same, label(s, i) + ": oracle mismatch at n=" + std::to_string(n));
    }
  }
  return {t.failures == 0, t.summary(), std::nullopt};
}

// --- 4 ---------------------------------------------------------------------

// Largest K with K r + c <= n, or -1.
std::int64_t last_position(std::size_t n, std::size_t c, std::size_t r) {
  return n < c ? -1 : static_cast<std::int64_t>((n - c) / r);
}

std::int64_t position(const BiPoly& f) {
  const auto pos = f.grlex_pos();
  return pos ? static_cast<std::int64_t>(*pos) : -1;
}

Outcome criterion_degree() {
  Tally t;
  std::size_t equalities = 0;
  const auto systems = draw_systems();
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const auto& s = systems[i];
    const auto ws = build_workspace(s.mm, kDepth);
    const auto [A, B] = extract_families(ws.F, kDepth);
    t.absorb(validate_degree_structure(A, B), label(s, i));
    for (std::size_t n = 0; n < kDepth; ++n) {
      const std::string at = label(s, i) + " n=" + std::to_string(n);
      for (std::size_t b = 0; b < s.q; ++b) {
        const auto bound = last_position(n, b, s.q);
        t.expect(position(B(n, b)) <= bound, at + ": B bound");
        if (n % s.q == b) {
          ++equalities;
          t.expect(position(B(n, b)) == bound, at + ": B equality");
        }
      }
      for (std::size_t a = 0; a < s.p; ++a) {
        const auto bound = last_position(n, a, s.p);
        t.expect(position(A(n, a)) <= bound, at + ": A bound");
        if (n % s.p == a) {
          ++equalities;
          t.expect(position(A(n, a)) == bound, at + ": A equality");
          t.expect(A(n, a).coefficient(n / s.p) == 1, at + ": A monic");
        }
      }
    }
  }
  return {t.failures == 0, std::to_string(equalities) + " equality indices; " + t.summary(), std::nullopt};
}

// --- 5 ---------------------------------------------------------------------

Outcome criterion_recurrence() {
  Tally t;
  const auto systems = draw_systems();
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const auto& s = systems[i];
    const auto ws = build_workspace(s.mm, kDepth);
    RationalSampler rng(104729 + i);
    std::vector<Point> pts;
    for (std::size_t j = 0; j < kRecurrencePoints; ++j) pts.push_back(rng.point());
    for (Axis k : {Axis::x1, Axis::x2}) {
      const std::string where = label(s, i) + " k=" + std::to_string(axis_index(k));
      t.expect(check_hankel_symmetry(ws.M, k), where + ": Hankel symmetry");
      t.absorb(check_dual_form(ws.T(k), ws.F), where);
      t.absorb(validate_band(ws.T(k), ws.F.H), where);
      t.absorb(check_recurrences(ws.T(k), ws.A_rec, ws.B_rec, pts, kRecurrenceMaxN), where);
    }
  }
  return {t.failures == 0, "relations on the H-scaled pair; " + t.summary(), std::nullopt};
}

// --- 6 ---------------------------------------------------------------------

Outcome criterion_cd() {
  Tally t;
  std::size_t projections = 0;
  const auto systems = draw_systems();
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const auto& s = systems[i];
    const auto ws = build_workspace(s.mm, kDepth);
    RationalSampler rng(1299709 + i);
    std::vector<std::pair<Point, Point>> pairs;
    for (std::size_t j = 0; j < kAbcPairs; ++j) {
      const Point x = rng.point();
      pairs.emplace_back(x, rng.point());
    }
    const std::vector<std::pair<Point, Point>> one_pair(pairs.begin(), pairs.begin() + 1);
    for (std::size_t n = 0; n <= kCdMaxN; ++n) {
      const std::string where = label(s, i) + " n=" + std::to_string(n);
      for (Axis k : {Axis::x1, Axis::x2})
        t.absorb(check_cd_grid(cd_blocks(ws.T(k), ws.A_rec, ws.B_rec, n), ws.A_rec, ws.B_rec),
                 where + " k=" + std::to_string(axis_index(k)));
      t.absorb(check_abc(ws.moments, ws.A, ws.B, n, pairs), where);
      t.absorb(check_reproduction(ws.A, ws.B, ws.moments, n, one_pair), where);
    }
    auto next = [&] { return rng.next(); };
    for (std::size_t I = 0; I <= kProjectionMaxI; ++I) {
      const std::size_t n = I * s.p + s.p - 1;
      const auto r = check_projection(ws.A, ws.B, ws.moments, n, random_monic(s.p, I, next), I);
      t.expect(r.status == ProjectionStatus::holds, label(s, i) + " projection I=" + std::to_string(I) + ": " +
                                                        to_string(r.status) + " " + r.detail);
      const std::size_t nd = I * s.q + s.q - 1;
      const auto d = check_projection_dual(ws.A, ws.B, ws.moments, nd, random_monic(s.q, I, next), I);
      t.expect(d.status == ProjectionStatus::holds, label(s, i) + " dual projection I=" + std::to_string(I) +
                                                        ": " + to_string(d.status) + " " + d.detail);
      projections += 2;
    }
  }
  return {t.failures == 0, std::to_string(projections) + " projections; " + t.summary(), kLimitCdSeconds};
}

// --- 7 ---------------------------------------------------------------------

// Printed displays for q = 1, p = 2. '*' any value, '0' exact zero, '1' exact
// one, 'B' nonzero and equal to H_row / H_col.
const std::vector<std::string> kT1Display = {
    "*1000000000000", "***10000000000", "B***1000000000", "0B****10000000", "00*****1000000",
    "00******100000", "00B*******1000", "000B*******100", "0000B*******10", "00000B*******1",
    "000000********", "000000********", "000000B*******", "0000000B******", "00000000B*****",
    "000000000B****", "0000000000B***"};
const std::vector<std::string> kT2Display = {
    "*1000000000000", "****1000000000", "*****100000000", "B******1000000", "0B******100000",
    "00*******10000", "00*********100", "00B*********10", "000B*********1", "0000B*********",
    "00000B********", "000000********", "000000********", "000000B*******", "0000000B******",
    "00000000B*****", "000000000B****", "0000000000B***"};

bool matches(char label, const Rational& v, const Rational& ratio) {
  switch (label) {
    case '0': return v == 0;
    case '1': return v == 1;
    case 'B': return v != 0 && v == ratio;
    default: return true;
  }
}

std::vector<std::string> compare_display(const RecurrenceMatrix& T, const std::vector<Rational>& H,
                                         const std::vector<std::string>& display, std::size_t row0 = 0,
                                         std::size_t col0 = 0) {
  std::vector<std::string> bad;
  for (std::size_t r = 0; r < display.size(); ++r)
    for (std::size_t c = 0; c < display[r].size(); ++c) {
      const std::size_t m = row0 + r, n = col0 + c;
      if (!T.known(m, n)) {
        bad.push_back("(" + std::to_string(m) + "," + std::to_string(n) + ") unavailable");
        continue;
      }
      if (!matches(display[r][c], T(m, n), H[m] / H[n]))
        bad.push_back("(" + std::to_string(m) + "," + std::to_string(n) + ") shows '" + display[r][c] +
                      "', computed " + to_string(T(m, n)));
    }
  return bad;
}

std::string describe(const std::string& name, const std::vector<std::string>& bad) {
  if (bad.empty()) return name + " matches";
  std::string s = name + " differs at " + std::to_string(bad.size()) + " cells";
  for (std::size_t i = 0; i < std::min<std::size_t>(bad.size(), 4); ++i) s += (i ? ", " : ": ") + bad[i];
  return s;
}

Outcome criterion_worked_example() {
  const auto ws = build_workspace(testsupport::generic_q1p2(), kExampleDepth);
  const auto& H = ws.F.H;
  const auto t1 = compare_display(ws.T1, H, kT1Display);
  const auto t2 = compare_display(ws.T2, H, kT2Display);

  // Block displays at n = 3 for k = 1.
  const auto blk = cd_blocks(ws.T1, ws.A_rec, ws.B_rec, 3);
  std::vector<std::string> blocks;
  const auto shape = [&](const Band& b, std::size_t first, std::size_t last, const std::string& what) {
    if (b.first != first || b.last != last)
      blocks.push_back(what + " spans [" + std::to_string(b.first) + "," + std::to_string(b.last) + "]");
  };
  shape(blk.tgt_rows, 4, 7, "target rows");
  shape(blk.tgt_cols, 2, 3, "target columns");
  shape(blk.src_rows, 2, 3, "source rows");
  shape(blk.src_cols, 4, 6, "source columns");
  for (const auto& s : compare_display(ws.T1, H, {"**", "**", "B*", "0B"}, 4, 2)) blocks.push_back("target " + s);
  for (const auto& s : compare_display(ws.T1, H, {"100", "**1"}, 2, 4)) blocks.push_back("source " + s);
  if (blk.B_src.rows() != 3) blocks.push_back("source B block has " + std::to_string(blk.B_src.rows()) + " rows");
  RationalSampler rng(31);
  for (int i = 0; i < 5; ++i) {
    const Point x = rng.point(), y = rng.point();
    if (!check_cd_formula(blk, ws.A_rec, ws.B_rec, x, y)) blocks.push_back("CD expansion fails at a sample pair");
  }

  const bool pass = t1.empty() && t2.empty() && blocks.empty();
  return {pass, describe("T1 (17x14)", t1) + "; " + describe("T2 (18x14)", t2) + "; " +
                    describe("n=3 blocks", blocks),
          std::nullopt};
}

// --- 8 ---------------------------------------------------------------------

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion_cli() {
  Tally t;
  const fs::path tests = STEPLINE_TEST_DIR;
  const auto data = [&](const char* name) { return (tests / "data" / name).string(); };
  const auto golden = [&](const char* name) { return slurp(tests / "golden" / name); };

  const auto leb = cli({"verify", "--config", data("lebesgue.json")});
  t.expect(leb.code == 0, "pass exits 0");
  t.expect(leb.out == golden("verify_lebesgue.json"), "verify report matches golden (lebesgue)");
  const std::vector<std::string> q1p2{"verify", "--config", data("q1p2.json"), "--checks",
                                      "recurrence,projection,cd,abc"};
  const auto a = cli(q1p2), b = cli(q1p2);
  t.expect(a.out == b.out, "verify reruns are byte-identical");
  t.expect(a.out == golden("verify_q1p2.json"), "verify report matches golden (q1p2)");

  t.expect(cli({"verify", "--config", data("breakdown.json")}).code == 2, "breakdown exits 2");
  t.expect(cli({"verify", "--config", (tests / "data" / "missing.json").string()}).code == 3, "missing config exits 3");
  t.expect(cli({"verify", "--config", data("lebesgue.json"), "--checks", "bogus"}).code == 3, "unknown check exits 3");
  t.expect(cli({"frobnicate"}).code == 3, "usage error exits 3");

  const fs::path base = fs::temp_directory_path() / "stepline_acceptance";
  fs::remove_all(base);
  const fs::path one = base / "one", two = base / "two";
  const auto c1 = cli({"compute", "--config", data("q1p2.json"), "--out", one.string()});
  const auto c2 = cli({"compute", "--config", data("q1p2.json"), "--out", two.string()});
  t.expect(c1.code == 0 && c2.code == 0 && c1.out == c2.out, "compute exits 0 with identical stdout");
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(one)) {
    ++files;
    const auto name = entry.path().filename();
    t.expect(slurp(entry.path()) == slurp(two / name), "compute output differs: " + name.string());
    if (name.extension() == ".json") {
      const auto j = nlohmann::ordered_json::parse(slurp(entry.path()));
      t.expect(j.value("schema_version", 0) == 1, "schema_version missing in " + name.string());
    }
  }
  t.expect(files == 15, "expected report plus 14 exports, found " + std::to_string(files));
  t.expect(slurp(one / "T1.json") == golden("T1_q1p2.json"), "T1 export matches golden");
  t.expect(slurp(one / "families.csv") == golden("families_q1p2.csv"), "families export matches golden");
  fs::remove_all(base);
  return {t.failures == 0, t.summary(), std::nullopt};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-8)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all = {
      {1, "index suite", criterion_index},
      {2, "factorization suite", criterion_factorization},
      {3, "orthogonality and biorthogonality", criterion_orthogonality},
      {4, "degree structure", criterion_degree},
      {5, "recurrence", criterion_recurrence},
      {6, "CD, ABC, reproduction, projection", criterion_cd},
      {7, "worked example displays", criterion_worked_example},
      {8, "CLI contract", criterion_cli},
  };
  bool all_pass = true;
  for (const auto& c : all) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), std::nullopt};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << secs << " s";
    if (o.limit) {
      time << ", limit " << *o.limit << " s";
      if (secs >= *o.limit) {
        o.pass = false;
        o.detail += "; runtime limit exceeded";
      }
    }
    std::cout << "criterion " << c.id << " [" << c.name << "]: " << (o.pass ? "PASS" : "FAIL") << " (" << time.str()
              << ") " << o.detail << std::endl;
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
