// helixspan: exact 5'-3' distance distributions of RNA secondary structures.
//
// Subcommands: dist, table, limit, check, compare, plot. Exit codes:
// 0 success, 1 invariant failure, 2 usage or input error. Option values
// fall back to HELIXSPAN_* environment variables, then to defaults.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "helixspan/checks.hpp"
#include "helixspan/diagram.hpp"
#include "helixspan/io.hpp"
#include "helixspan/limitlaw.hpp"
#include "helixspan/oracle.hpp"
#include "helixspan/series.hpp"
#include "helixspan/svg.hpp"
#include "helixspan/tableaux.hpp"

namespace {

using nlohmann::ordered_json;
using namespace helixspan;

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty())
    std::cout << payload;
  else
    atomic_write(out_path, payload);
}

std::string dumped(const ordered_json& doc) { return doc.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// dist

struct DistOpts {
  std::string structure;
  std::string in_path;
  std::string out_path;
  std::string format = "csv";
  bool strict = false;
};

int cmd_dist(const DistOpts& opt) {
  std::vector<std::pair<int, std::string>> lines;
  if (!opt.structure.empty() && !opt.in_path.empty()) {
    std::cerr << "error: give either a structure argument or --in, not both\n";
    return 2;
  }
  if (!opt.structure.empty())
    lines.emplace_back(1, opt.structure);
  else if (!opt.in_path.empty())
    lines = read_dot_bracket_file(opt.in_path);
  else
    lines = read_dot_bracket_lines(std::cin);

  struct Row {
    int line;
    int n;
    long long d;
    long long d_tableau;
    long long irreducibles;
    int isolated;
    std::optional<int> min_stack;
  };
  std::vector<Row> rows;
  std::vector<std::pair<int, std::string>> errors;
  int internal_mismatches = 0;

  for (const auto& [line_no, text] : lines) {
    try {
      const SecondaryStructure s = parse_dot_bracket(text);
      const Tableau t = beta(s);
      Row row;
      row.line = line_no;
      row.n = s.n();
      row.d = bfs_distance(s);
      row.d_tableau = tableau_distance(t);
      row.irreducibles = static_cast<long long>(irreducible_blocks(t).size());
      // Isolated vertices outside every arc: the V in d = 2I + V - 1.
      row.isolated = static_cast<int>(census(t).count_plain);
      row.min_stack = min_stack_length(s);
      if (row.d != row.d_tableau) {
        ++internal_mismatches;
        std::cerr << "line " << line_no
                  << ": BFS and tableau distances disagree (" << row.d
                  << " vs " << row.d_tableau << ")\n";
      }
      rows.push_back(row);
    } catch (const Error& e) {
      errors.emplace_back(line_no, e.what());
      std::cerr << "line " << line_no << ": " << e.what() << '\n';
    }
  }

  std::string payload;
  if (opt.format == "json") {
    ordered_json doc;
    auto out_rows = ordered_json::array();
    for (const Row& row : rows) {
      ordered_json item;
      item["line"] = row.line;
      item["n"] = row.n;
      item["d"] = row.d;
      item["d_tableau"] = row.d_tableau;
      item["irreducibles"] = row.irreducibles;
      item["isolated"] = row.isolated;
      if (row.min_stack)
        item["min_stack"] = *row.min_stack;
      else
        item["min_stack"] = nullptr;
      out_rows.push_back(std::move(item));
    }
    doc["rows"] = std::move(out_rows);
    auto out_errors = ordered_json::array();
    for (const auto& [line_no, message] : errors) {
      ordered_json item;
      item["line"] = line_no;
      item["error"] = message;
      out_errors.push_back(std::move(item));
    }
    doc["errors"] = std::move(out_errors);
    payload = dumped(doc);
  } else {
    std::ostringstream csv;
    csv << "line,n,d,d_tableau,irreducibles,isolated,min_stack\n";
    for (const Row& row : rows) {
      csv << row.line << ',' << row.n << ',' << row.d << ',' << row.d_tableau
          << ',' << row.irreducibles << ',' << row.isolated << ',';
      if (row.min_stack) csv << *row.min_stack;
      csv << '\n';
    }
    payload = csv.str();
  }
  emit(payload, opt.out_path);

  if (internal_mismatches > 0) return 1;
  return opt.strict && !errors.empty() ? 1 : 0;
}

// ---------------------------------------------------------------------------
// table

struct TableOpts {
  int N = 0;
  int r = 1;
  int d_max = -1;
  int cap = 5000;
  std::string format = "csv";
  std::string out_path;
};

int cmd_table(const TableOpts& opt) {
  if (opt.N > opt.cap) {
    std::cerr << "error: N = " << opt.N << " exceeds the table cap "
              << opt.cap << " (raise with --cap)\n";
    return 2;
  }
  // The arrangement-counting path is much faster for the common r = 1 case;
  // the bivariate path covers general r. Both are proven identical by the
  // specialization check suite.
  const DistanceTable table = opt.r == 1
                                  ? claim2_table(opt.N, opt.d_max)
                                  : distance_table(opt.r, opt.N, opt.d_max);
  emit(opt.format == "json" ? dumped(table_json(table)) : table_csv(table),
       opt.out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// limit

struct LimitOpts {
  int D = 60;
  unsigned bits = kDefaultPrecisionBits;
  std::string format = "csv";
  std::string out_path;
};

int cmd_limit(const LimitOpts& opt) {
  const LimitLaw law = q_series(opt.D);
  emit(opt.format == "json" ? dumped(limit_json(law, opt.bits))
                            : limit_csv(law, opt.bits),
       opt.out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// check

struct CheckOpts {
  int n_max = 14;
  std::vector<int> rs = {1, 2, 3};
  unsigned bits = kDefaultPrecisionBits;
  std::string out_path;
};

int cmd_check(const CheckOpts& opt) {
  set_real_precision_bits(opt.bits);
  const std::vector<CheckReport> reports = run_all_checks(opt.n_max, opt.rs);
  auto doc = ordered_json::array();
  bool all_passed = true;
  for (const CheckReport& report : reports) {
    std::cerr << (report.passed ? "PASS " : "FAIL ") << report.check
              << " (max deviation " << report.max_deviation << ", tolerance "
              << report.tolerance << ")\n";
    all_passed = all_passed && report.passed;
    doc.push_back(report_json(report));
  }
  emit(dumped(doc), opt.out_path);
  return all_passed ? 0 : 1;
}

// ---------------------------------------------------------------------------
// compare

struct CompareOpts {
  std::string in_path;
  std::string out_path;
  std::string format = "csv";
  std::string reference;  // "", "exact-n" or "limit"
  int r = 1;
  int cap = 5000;
  bool strict = false;
};

int cmd_compare(const CompareOpts& opt) {
  const auto lines = read_dot_bracket_file(opt.in_path);
  std::vector<SecondaryStructure> structures;
  int parse_errors = 0;
  for (const auto& [line_no, text] : lines) {
    try {
      structures.push_back(parse_dot_bracket(text));
    } catch (const Error& e) {
      ++parse_errors;
      std::cerr << "line " << line_no << ": " << e.what() << '\n';
    }
  }
  if (structures.empty())
    throw Error(ErrorCode::EmptyInput, "no parseable structures in " +
                                           opt.in_path);

  std::map<int, long long> length_freq;
  std::map<int, long long> distance_counts;
  long long noncanonical = 0;
  for (const SecondaryStructure& s : structures) {
    ++length_freq[s.n()];
    ++distance_counts[bfs_distance(s)];
    if (!is_r_canonical(s, opt.r)) ++noncanonical;
  }
  const bool uniform = length_freq.size() == 1;
  // Modal length; ties resolve to the smaller length.
  int n_modal = 0;
  long long best = -1;
  for (const auto& [n, freq] : length_freq)
    if (freq > best) {
      best = freq;
      n_modal = n;
    }
  if (noncanonical > 0)
    std::cerr << "warning: " << noncanonical << " structure(s) have a stack "
              << "shorter than r = " << opt.r << '\n';

  std::string reference = opt.reference;
  if (reference.empty()) {
    reference = uniform ? "exact-n" : "limit";
    if (!uniform)
      std::cerr << "warning: mixed lengths in input; comparing against the "
                   "limit law\n";
  } else if (reference == "exact-n" && !uniform) {
    std::cerr << "error: --reference exact-n requires all structures to have "
                 "the same length\n";
    return 2;
  }

  const long long total = static_cast<long long>(structures.size());
  const int d_top = distance_counts.rbegin()->first;

  PrecisionGuard guard(128);
  struct Row {
    int d;
    std::string empirical;
    std::string reference;
    std::string difference;
  };
  std::vector<Row> rows;
  const auto add_row = [&](int d, long long count, const Real& ref) {
    const Real emp = to_real(Rat(count, total));
    rows.push_back({d, format_real(emp, 12), format_real(ref, 12),
                    format_real(emp - ref, 12)});
  };

  if (reference == "exact-n") {
    if (n_modal > opt.cap) {
      std::cerr << "error: length " << n_modal << " exceeds the table cap "
                << opt.cap << " (raise with --cap)\n";
      return 2;
    }
    const DistanceTable table = opt.r == 1 ? claim2_table(n_modal)
                                           : distance_table(opt.r, n_modal);
    for (int d = 0; d < n_modal; ++d) {
      const auto it = distance_counts.find(d);
      const long long count = it == distance_counts.end() ? 0 : it->second;
      const Int& w = table.w(n_modal, d);
      if (count == 0 && w == 0) continue;
      add_row(d, count, to_real(Rat(w, table.row_total(n_modal))));
    }
  } else {
    const LimitLaw law = q_series(std::max(1, d_top));
    for (int d = 0; d <= d_top; ++d) {
      const auto it = distance_counts.find(d);
      const long long count = it == distance_counts.end() ? 0 : it->second;
      add_row(d, count, law.q[d].value(128));
    }
  }

  std::string payload;
  if (opt.format == "json") {
    ordered_json doc;
    doc["reference"] = reference;
    doc["r"] = opt.r;
    if (reference == "exact-n")
      doc["n"] = n_modal;
    else
      doc["n"] = nullptr;
    doc["count"] = total;
    auto out_rows = ordered_json::array();
    for (const Row& row : rows) {
      ordered_json item;
      item["d"] = row.d;
      item["empirical"] = std::stod(row.empirical);
      item["reference"] = std::stod(row.reference);
      item["difference"] = std::stod(row.difference);
      out_rows.push_back(std::move(item));
    }
    doc["rows"] = std::move(out_rows);
    payload = dumped(doc);
  } else {
    std::ostringstream csv;
    csv << "d,empirical,reference,difference\n";
    for (const Row& row : rows)
      csv << row.d << ',' << row.empirical << ',' << row.reference << ','
          << row.difference << '\n';
    payload = csv.str();
  }
  emit(payload, opt.out_path);
  return opt.strict && parse_errors > 0 ? 1 : 0;
}

// ---------------------------------------------------------------------------
// plot

struct PlotOpts {
  std::string in_path;
  std::string out_path;
  bool allow_empty = false;
};

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

std::string rstrip(std::string line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n' ||
                           line.back() == ' ' || line.back() == '\t'))
    line.pop_back();
  return line;
}

// Overlay of the limit law at the same abscissas as the table points.
PlotSeries limit_overlay(const std::vector<std::pair<double, double>>& points) {
  PlotSeries overlay;
  overlay.label = "q(d)";
  int d_top = 0;
  for (const auto& [d, p] : points) d_top = std::max(d_top, static_cast<int>(d));
  if (d_top < 1) return overlay;
  const LimitLaw law = q_series(d_top);
  for (const auto& [d, p] : points) {
    const int di = static_cast<int>(d);
    overlay.points.emplace_back(
        d, static_cast<double>(law.q[di].value(kDefaultPrecisionBits)));
  }
  return overlay;
}

struct PlotData {
  std::vector<PlotSeries> series;
  std::string title;
  std::string x_label = "d";
  std::string y_label = "probability";
};

PlotData plot_data_from_json(const std::string& content) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(content);
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorCode::SchemaMismatch,
                std::string("cannot parse JSON: ") + e.what());
  }
  if (!doc.contains("rows") || !doc["rows"].is_array())
    throw Error(ErrorCode::SchemaMismatch, "JSON input carries no rows array");
  const auto& rows = doc["rows"];

  PlotData data;
  if (!rows.empty() && rows.front().contains("w")) {
    // Distance table: plot the largest length present, overlay the limit.
    int n_top = 0;
    for (const auto& row : rows) n_top = std::max(n_top, row.at("n").get<int>());
    PlotSeries main;
    main.label = "p(n=" + std::to_string(n_top) + ",d)";
    for (const auto& row : rows)
      if (row.at("n").get<int>() == n_top)
        main.points.emplace_back(row.at("d").get<double>(),
                                 row.at("p").get<double>());
    data.title = "distance distribution, n = " + std::to_string(n_top);
    data.series.push_back(std::move(main));
    data.series.push_back(limit_overlay(data.series.front().points));
  } else if (!rows.empty() && rows.front().contains("q_decimal")) {
    PlotSeries main;
    main.label = "q(d)";
    for (const auto& row : rows)
      main.points.emplace_back(row.at("d").get<double>(),
                               row.at("q_decimal").get<double>());
    data.title = "limit distance law";
    data.y_label = "q(d)";
    data.series.push_back(std::move(main));
  } else if (!rows.empty() && rows.front().contains("empirical")) {
    PlotSeries emp, ref;
    emp.label = "empirical";
    ref.label = "reference";
    for (const auto& row : rows) {
      emp.points.emplace_back(row.at("d").get<double>(),
                              row.at("empirical").get<double>());
      ref.points.emplace_back(row.at("d").get<double>(),
                              row.at("reference").get<double>());
    }
    data.title = "empirical vs reference distance distribution";
    data.series.push_back(std::move(emp));
    data.series.push_back(std::move(ref));
  } else if (rows.empty()) {
    data.title = "empty input";
  } else {
    throw Error(ErrorCode::SchemaMismatch, "unrecognized JSON row fields");
  }
  return data;
}

PlotData plot_data_from_csv(const std::string& content) {
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line))
    throw Error(ErrorCode::SchemaMismatch, "input file is empty");
  const std::string header = rstrip(line);

  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    const std::string text = rstrip(line);
    if (text.empty() || text[0] == '#') continue;
    rows.push_back(split_csv_row(text));
  }

  const auto field = [&](const std::vector<std::string>& row,
                         std::size_t i) -> double {
    try {
      return std::stod(row.at(i));
    } catch (const std::exception&) {
      throw Error(ErrorCode::SchemaMismatch, "malformed numeric field");
    }
  };

  PlotData data;
  if (header == "r,n,d,w,p") {
    int n_top = 0;
    for (const auto& row : rows) {
      if (row.size() != 5)
        throw Error(ErrorCode::SchemaMismatch, "malformed table row");
      n_top = std::max(n_top, static_cast<int>(field(row, 1)));
    }
    PlotSeries main;
    main.label = "p(n=" + std::to_string(n_top) + ",d)";
    for (const auto& row : rows)
      if (static_cast<int>(field(row, 1)) == n_top)
        main.points.emplace_back(field(row, 2), field(row, 4));
    data.title = "distance distribution, n = " + std::to_string(n_top);
    data.series.push_back(std::move(main));
    data.series.push_back(limit_overlay(data.series.front().points));
  } else if (header == "d,q_exact,q_decimal") {
    PlotSeries main;
    main.label = "q(d)";
    for (const auto& row : rows) {
      if (row.size() != 3)
        throw Error(ErrorCode::SchemaMismatch, "malformed limit row");
      main.points.emplace_back(field(row, 0), field(row, 2));
    }
    data.title = "limit distance law";
    data.y_label = "q(d)";
    data.series.push_back(std::move(main));
  } else if (header == "d,empirical,reference,difference") {
    PlotSeries emp, ref;
    emp.label = "empirical";
    ref.label = "reference";
    for (const auto& row : rows) {
      if (row.size() != 4)
        throw Error(ErrorCode::SchemaMismatch, "malformed comparison row");
      emp.points.emplace_back(field(row, 0), field(row, 1));
      ref.points.emplace_back(field(row, 0), field(row, 2));
    }
    data.title = "empirical vs reference distance distribution";
    data.series.push_back(std::move(emp));
    data.series.push_back(std::move(ref));
  } else {
    throw Error(ErrorCode::SchemaMismatch,
                "unrecognized CSV header: " + header);
  }
  return data;
}

int cmd_plot(const PlotOpts& opt) {
  std::ifstream in(opt.in_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << opt.in_path << " for reading\n";
    return 2;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();

  const std::size_t first = content.find_first_not_of(" \t\r\n");
  const bool looks_json = first != std::string::npos && content[first] == '{';
  const PlotData data =
      looks_json ? plot_data_from_json(content) : plot_data_from_csv(content);

  const std::string svg = render_svg(data.series, data.title, data.x_label,
                                     data.y_label, opt.allow_empty);

  std::string out_path = opt.out_path;
  if (out_path.empty()) {
    const std::size_t dot = opt.in_path.find_last_of('.');
    out_path = (dot == std::string::npos ? opt.in_path
                                         : opt.in_path.substr(0, dot)) +
               ".svg";
  }
  atomic_write(out_path, svg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "helixspan: exact 5'-3' distance distributions of RNA secondary "
      "structures"};
  app.require_subcommand(1);

  DistOpts dist_opts;
  CLI::App* dist = app.add_subcommand(
      "dist", "Per-structure distances and shape statistics");
  dist->add_option("structure", dist_opts.structure,
                   "a single dot-bracket string");
  dist->add_option("--in", dist_opts.in_path, "dot-bracket file (default: stdin)")
      ->envname("HELIXSPAN_IN");
  dist->add_option("--out", dist_opts.out_path, "output path (default: stdout)")
      ->envname("HELIXSPAN_OUT");
  dist->add_option("--format", dist_opts.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->envname("HELIXSPAN_FORMAT");
  dist->add_flag("--strict", dist_opts.strict,
                 "exit 1 when any input line fails to parse")
      ->envname("HELIXSPAN_STRICT");

  TableOpts table_opts;
  CLI::App* table =
      app.add_subcommand("table", "Exact distance table w_r(n,d) up to N");
  table->add_option("--n,--N", table_opts.N, "table size N")
      ->required()
      ->check(CLI::Range(1, 1 << 30))
      ->envname("HELIXSPAN_N");
  table->add_option("--r", table_opts.r, "minimum stack length")
      ->check(CLI::Range(1, 1 << 20))
      ->envname("HELIXSPAN_R");
  table->add_option("--d-max", table_opts.d_max,
                    "truncate distance columns (-1 = full)")
      ->check(CLI::Range(-1, 1 << 30))
      ->envname("HELIXSPAN_D_MAX");
  table->add_option("--cap", table_opts.cap, "maximum allowed N")
      ->envname("HELIXSPAN_CAP");
  table->add_option("--format", table_opts.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->envname("HELIXSPAN_FORMAT");
  table->add_option("--out", table_opts.out_path, "output path")
      ->envname("HELIXSPAN_OUT");

  LimitOpts limit_opts;
  CLI::App* limit =
      app.add_subcommand("limit", "Limit law q(d) with exact Q(sqrt5) values");
  limit->add_option("--d-max", limit_opts.D, "largest d")
      ->check(CLI::Range(1, 1 << 20))
      ->envname("HELIXSPAN_D_MAX");
  limit->add_option("--precision-bits", limit_opts.bits, "decimal precision")
      ->check(CLI::Range(53, 1 << 20))
      ->envname("HELIXSPAN_PRECISION_BITS");
  limit->add_option("--format", limit_opts.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->envname("HELIXSPAN_FORMAT");
  limit->add_option("--out", limit_opts.out_path, "output path")
      ->envname("HELIXSPAN_OUT");

  CheckOpts check_opts;
  CLI::App* check =
      app.add_subcommand("check", "Run every invariant suite; exit 0 iff all pass");
  check->add_option("--n", check_opts.n_max, "enumeration bound")
      ->check(CLI::Range(1, kDefaultEnumerationCap))
      ->envname("HELIXSPAN_N");
  check->add_option("--r", check_opts.rs, "r values for the oracle suite")
      ->delimiter(',')
      ->envname("HELIXSPAN_R");
  check->add_option("--precision-bits", check_opts.bits, "working precision")
      ->check(CLI::Range(53, 1 << 20))
      ->envname("HELIXSPAN_PRECISION_BITS");
  check->add_option("--out", check_opts.out_path, "JSON report path")
      ->envname("HELIXSPAN_OUT");

  CompareOpts compare_opts;
  CLI::App* compare = app.add_subcommand(
      "compare", "Empirical distance distribution of a file vs a reference");
  compare->add_option("--in", compare_opts.in_path, "dot-bracket file")
      ->required()
      ->envname("HELIXSPAN_IN");
  compare->add_option("--reference", compare_opts.reference,
                      "exact-n or limit (default: exact-n when lengths are "
                      "uniform, else limit)")
      ->check(CLI::IsMember({"exact-n", "limit"}));
  compare->add_option("--r", compare_opts.r, "minimum stack length")
      ->check(CLI::Range(1, 1 << 20))
      ->envname("HELIXSPAN_R");
  compare->add_option("--cap", compare_opts.cap, "maximum exact-n length")
      ->envname("HELIXSPAN_CAP");
  compare->add_option("--format", compare_opts.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->envname("HELIXSPAN_FORMAT");
  compare->add_option("--out", compare_opts.out_path, "output path")
      ->envname("HELIXSPAN_OUT");
  compare->add_flag("--strict", compare_opts.strict,
                    "exit 1 when any input line fails to parse")
      ->envname("HELIXSPAN_STRICT");

  PlotOpts plot_opts;
  CLI::App* plot = app.add_subcommand(
      "plot", "Render a table/limit/comparison file as a deterministic SVG");
  plot->add_option("--in", plot_opts.in_path, "source file (CSV or JSON)")
      ->required()
      ->envname("HELIXSPAN_IN");
  plot->add_option("--out", plot_opts.out_path,
                   "SVG path (default: source with .svg suffix)")
      ->envname("HELIXSPAN_OUT");
  plot->add_flag("--allow-empty", plot_opts.allow_empty,
                 "emit an empty-axes chart for inputs without rows")
      ->envname("HELIXSPAN_ALLOW_EMPTY");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (dist->parsed()) return cmd_dist(dist_opts);
    if (table->parsed()) return cmd_table(table_opts);
    if (limit->parsed()) return cmd_limit(limit_opts);
    if (check->parsed()) return cmd_check(check_opts);
    if (compare->parsed()) return cmd_compare(compare_opts);
    if (plot->parsed()) return cmd_plot(plot_opts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
