#include "helixspan/io.hpp"

#include <unistd.h>

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <mpfr.h>

namespace helixspan {

namespace {

std::string trimmed(const std::string& line) {
  std::size_t begin = 0;
  std::size_t end = line.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(line[begin])))
    ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(line[end - 1])))
    --end;
  return line.substr(begin, end - begin);
}

}  // namespace

std::vector<std::pair<int, std::string>> read_dot_bracket_lines(
    std::istream& in) {
  std::vector<std::pair<int, std::string>> lines;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string text = trimmed(raw);
    if (text.empty() || text[0] == '>' || text[0] == '#') continue;
    lines.emplace_back(line_no, text);
  }
  return lines;
}

std::vector<std::pair<int, std::string>> read_dot_bracket_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path + " for reading");
  return read_dot_bracket_lines(in);
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  const fs::path tmp =
      dir / (target.filename().string() + ".tmp" + std::to_string(::getpid()));

  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("short write to " + tmp.string());
    }
  }

  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw std::runtime_error("cannot move " + tmp.string() + " onto " + path +
                             ": " + ec.message());
  }
}

std::string format_real(const Real& x, int digits) {
  if (digits < 2) digits = 2;
  const mpfr_srcptr raw = x.backend().data();
  if (!mpfr_number_p(raw)) return mpfr_nan_p(raw) ? "nan" : "inf";
  if (mpfr_zero_p(raw)) return "0";

  mpfr_exp_t exp = 0;
  char* digits_cstr =
      mpfr_get_str(nullptr, &exp, 10, static_cast<std::size_t>(digits), raw,
                   MPFR_RNDN);
  std::string mantissa(digits_cstr);
  mpfr_free_str(digits_cstr);

  const bool negative = !mantissa.empty() && mantissa[0] == '-';
  if (negative) mantissa.erase(0, 1);
  while (mantissa.size() > 1 && mantissa.back() == '0') mantissa.pop_back();

  // Value is 0.mantissa * 10^exp; render like printf %g.
  const long point = static_cast<long>(exp);
  const long sci_exp = point - 1;  // exponent of the leading digit
  std::string out;
  if (sci_exp < -4 || sci_exp >= digits) {
    out = mantissa.substr(0, 1);
    if (mantissa.size() > 1) out += "." + mantissa.substr(1);
    std::string magnitude = std::to_string(sci_exp < 0 ? -sci_exp : sci_exp);
    if (magnitude.size() < 2) magnitude.insert(0, "0");
    out += (sci_exp < 0 ? "e-" : "e+") + magnitude;
  } else if (point > 0) {
    if (static_cast<long>(mantissa.size()) <= point)
      out = mantissa + std::string(point - mantissa.size(), '0');
    else
      out = mantissa.substr(0, point) + "." + mantissa.substr(point);
  } else {
    out = "0." + std::string(-point, '0') + mantissa;
  }
  return negative ? "-" + out : out;
}

std::string format_rat_decimal(const Rat& x, int digits) {
  PrecisionGuard guard(static_cast<unsigned>(digits) * 4 + 32);
  return format_real(to_real(x), digits);
}

std::string table_csv(const DistanceTable& t, int digits) {
  std::ostringstream out;
  out << "r,n,d,w,p\n";
  for (int n = 1; n <= t.N(); ++n) {
    const Int& total = t.row_total(n);
    const int top = std::min(n - 1, t.d_max());
    for (int d = 0; d <= top; ++d) {
      const Int& w = t.w(n, d);
      if (w == 0) continue;
      out << t.r() << ',' << n << ',' << d << ',' << w.str() << ','
          << format_rat_decimal(Rat(w, total), digits) << '\n';
    }
  }
  return out.str();
}

nlohmann::ordered_json table_json(const DistanceTable& t, int digits) {
  nlohmann::ordered_json doc;
  doc["r"] = t.r();
  doc["N"] = t.N();
  auto rows = nlohmann::ordered_json::array();
  for (int n = 1; n <= t.N(); ++n) {
    const Int& total = t.row_total(n);
    const int top = std::min(n - 1, t.d_max());
    for (int d = 0; d <= top; ++d) {
      const Int& w = t.w(n, d);
      if (w == 0) continue;
      nlohmann::ordered_json row;
      row["n"] = n;
      row["d"] = d;
      row["w"] = w.str();
      // Same digits as the CSV, so both formats carry identical numbers.
      row["p"] = std::stod(format_rat_decimal(Rat(w, total), digits));
      rows.push_back(std::move(row));
    }
  }
  doc["rows"] = std::move(rows);
  return doc;
}

std::string histogram_csv(const Histogram& h, int digits) {
  const Int total = h.total();
  std::ostringstream out;
  out << "r,n,d,w,p\n";
  for (const auto& [d, w] : h.counts) {
    if (w == 0) continue;
    out << h.r << ',' << h.n << ',' << d << ',' << w.str() << ','
        << format_rat_decimal(Rat(w, total), digits) << '\n';
  }
  return out.str();
}

namespace {

struct LimitConstants {
  std::string rho_exact;
  std::string rho_decimal;
  std::string inv_rho_exact;
  std::string inv_rho_decimal;
  std::string delta_decimal;
  std::string inv_delta_decimal;
};

LimitConstants limit_constants(unsigned bits, int digits) {
  PrecisionGuard guard(bits);
  LimitConstants c;
  const QSqrt5 r = rho();
  c.rho_exact = r.to_string();
  c.rho_decimal = format_real(r.value(bits), digits);
  c.inv_rho_exact = r.inverse().to_string();
  c.inv_rho_decimal = format_real(r.inverse().value(bits), digits);
  const Real d = delta(bits);
  c.delta_decimal = format_real(d, digits);
  c.inv_delta_decimal = format_real(1 / d, digits);
  return c;
}

}  // namespace

std::string limit_csv(const LimitLaw& law, unsigned bits, int digits) {
  std::ostringstream out;
  out << "d,q_exact,q_decimal\n";
  for (int d = 0; d <= law.D; ++d)
    out << d << ',' << law.q[d].to_string() << ','
        << format_real(law.q[d].value(bits), digits) << '\n';
  const LimitConstants c = limit_constants(bits, digits);
  out << "# rho = " << c.rho_exact << " = " << c.rho_decimal << '\n'
      << "# 1/rho = " << c.inv_rho_exact << " = " << c.inv_rho_decimal << '\n'
      << "# delta = " << c.delta_decimal << '\n'
      << "# 1/delta = " << c.inv_delta_decimal << '\n';
  return out.str();
}

nlohmann::ordered_json limit_json(const LimitLaw& law, unsigned bits,
                                  int digits) {
  nlohmann::ordered_json doc;
  doc["D"] = law.D;
  doc["precision_bits"] = bits;
  auto rows = nlohmann::ordered_json::array();
  for (int d = 0; d <= law.D; ++d) {
    nlohmann::ordered_json row;
    row["d"] = d;
    row["q_exact"] = law.q[d].to_string();
    row["q_decimal"] = std::stod(format_real(law.q[d].value(bits), digits));
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  const LimitConstants c = limit_constants(bits, digits);
  nlohmann::ordered_json constants;
  constants["rho_exact"] = c.rho_exact;
  constants["rho"] = std::stod(c.rho_decimal);
  constants["inv_rho_exact"] = c.inv_rho_exact;
  constants["inv_rho"] = std::stod(c.inv_rho_decimal);
  constants["delta"] = std::stod(c.delta_decimal);
  constants["inv_delta"] = std::stod(c.inv_delta_decimal);
  doc["constants"] = std::move(constants);
  return doc;
}

nlohmann::ordered_json report_json(const CheckReport& report) {
  nlohmann::ordered_json doc;
  doc["check"] = report.check;
  doc["passed"] = report.passed;
  doc["tolerance"] = report.tolerance;
  doc["max_deviation"] = report.max_deviation;
  auto rows = nlohmann::ordered_json::array();
  for (const CheckRow& row : report.rows) {
    nlohmann::ordered_json item;
    item["n_or_d"] = row.n_or_d;
    item["observed"] = row.observed;
    item["predicted"] = row.predicted;
    item["deviation"] = row.deviation;
    rows.push_back(std::move(item));
  }
  doc["rows"] = std::move(rows);
  doc["note"] = report.note;
  return doc;
}

}  // namespace helixspan
