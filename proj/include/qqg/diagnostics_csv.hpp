#pragma once
// Diagnostics CSV: header row then one row per output time, every value
// printed with 17 significant digits.
//   time,energy,enstrophy,casimir3,casimir4,omega_min,omega_max[,pair0_rho,...]

#include <ostream>
#include <string>
#include <vector>

#include "qqg/qg_dynamics.hpp"

namespace qqg::io {

std::string diagnostics_header(std::size_t pair_count);
std::string diagnostics_row(const qg::Diagnostics& d, const std::vector<double>& pair_rho = {});

class DiagnosticsWriter {
 public:
  DiagnosticsWriter(std::ostream& os, std::size_t pair_count);
  void write(const qg::Diagnostics& d, const std::vector<double>& pair_rho = {});

 private:
  std::ostream& os_;
  std::size_t pairs_;
};

}  // namespace qqg::io
