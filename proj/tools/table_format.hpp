#pragma once

#include <cstdio>
#include <sstream>
#include <string>

#include "axielast/harness.hpp"

namespace axielast {

// Numbers in 4-significant-digit scientific notation, rates with 1 decimal,
// matching the convergence-table layout.
inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3E", v);
  return buf;
}

inline std::string rate1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

inline std::string format_csv(const ErrorReport& report) {
  std::ostringstream os;
  os << "h,sigma_err,sigma_rate,u_err,u_rate,asym_err,asym_rate\n";
  for (size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    const bool has_rate = i + 1 < report.rows.size();
    os << sci(row.h) << ',' << sci(row.sigma_err) << ','
       << (has_rate ? rate1(report.sigma_rate[i]) : "") << ',' << sci(row.u_err) << ','
       << (has_rate ? rate1(report.u_rate[i]) : "") << ',' << sci(row.asym_err) << ','
       << (has_rate ? rate1(report.asym_rate[i]) : "") << '\n';
  }
  return os.str();
}

inline std::string format_markdown(const ErrorReport& report) {
  std::ostringstream os;
  os << "| h | sigma_err | sigma_rate | u_err | u_rate | asym_err | asym_rate |\n";
  os << "| --- | --- | --- | --- | --- | --- | --- |\n";
  for (size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    const bool has_rate = i + 1 < report.rows.size();
    os << "| " << sci(row.h) << " | " << sci(row.sigma_err) << " | "
       << (has_rate ? rate1(report.sigma_rate[i]) : "--") << " | " << sci(row.u_err) << " | "
       << (has_rate ? rate1(report.u_rate[i]) : "--") << " | " << sci(row.asym_err) << " | "
       << (has_rate ? rate1(report.asym_rate[i]) : "--") << " |\n";
  }
  return os.str();
}

}  // namespace axielast
