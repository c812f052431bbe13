#pragma once

#include <istream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "helixspan/limitlaw.hpp"
#include "helixspan/oracle.hpp"
#include "helixspan/series.hpp"

namespace helixspan {

// Dot-bracket lines with their 1-based line numbers; lines starting with
// '>' or '#' (FASTA headers / comments) and blank lines are skipped.
// Whitespace is trimmed.
std::vector<std::pair<int, std::string>> read_dot_bracket_lines(std::istream& in);
std::vector<std::pair<int, std::string>> read_dot_bracket_file(const std::string& path);

// Write via a temp file in the same directory + rename, so readers never
// observe a partial file.
void atomic_write(const std::string& path, const std::string& content);

// Decimal rendering of an exact rational with the given number of
// significant digits (printf %g style).
std::string format_rat_decimal(const Rat& x, int digits);
std::string format_real(const Real& x, int digits);

// DistanceTable serialization. CSV schema: "r,n,d,w,p" with w an exact
// integer and p a decimal; zero cells are omitted. JSON mirrors it with w
// as a string (exact integers do not fit consumers' 64-bit ints).
std::string table_csv(const DistanceTable& t, int digits = 12);
nlohmann::ordered_json table_json(const DistanceTable& t, int digits = 12);

// Enumerated histograms share the DistanceTable row schema.
std::string histogram_csv(const Histogram& h, int digits = 12);

// Limit-law serialization. CSV schema: "d,q_exact,q_decimal" with q_exact
// like "7/2-3/2*sqrt5", plus footer comments carrying rho, 1/rho, delta,
// 1/delta; JSON mirrors it.
std::string limit_csv(const LimitLaw& law, unsigned bits, int digits = 12);
nlohmann::ordered_json limit_json(const LimitLaw& law, unsigned bits,
                                  int digits = 12);

nlohmann::ordered_json report_json(const CheckReport& report);

}  // namespace helixspan
