#include "qqg/diagnostics_csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace qqg::io {

namespace {

void append(std::string& s, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  s += buf;
}

}  // namespace

std::string diagnostics_header(std::size_t pair_count) {
  std::string h = "time,energy,enstrophy,casimir3,casimir4,omega_min,omega_max";
  for (std::size_t i = 0; i < pair_count; ++i) h += ",pair" + std::to_string(i) + "_rho";
  return h;
}

std::string diagnostics_row(const qg::Diagnostics& d, const std::vector<double>& pair_rho) {
  std::string row;
  const double values[] = {d.time, d.energy, d.enstrophy, d.casimir3, d.casimir4, d.omega_min, d.omega_max};
  for (std::size_t i = 0; i < std::size(values); ++i) {
    if (i > 0) row += ',';
    append(row, values[i]);
  }
  for (double r : pair_rho) {
    row += ',';
    append(row, r);
  }
  return row;
}

DiagnosticsWriter::DiagnosticsWriter(std::ostream& os, std::size_t pair_count) : os_(os), pairs_(pair_count) {
  os_ << diagnostics_header(pair_count) << '\n';
}

void DiagnosticsWriter::write(const qg::Diagnostics& d, const std::vector<double>& pair_rho) {
  if (pair_rho.size() != pairs_) throw std::invalid_argument("DiagnosticsWriter: pair column count mismatch");
  os_ << diagnostics_row(d, pair_rho) << '\n';
  os_.flush();
}

}  // namespace qqg::io
