#pragma once
// Snapshot file: one line of UTF-8 JSON, '\n', then `count` little-endian
// IEEE-754 float64 coefficients of omega in l-major order (index l*l + l + m).
//
//   {"format_version":1,"lmax":L,"alpha2":..,"beta":..,"central_a":..,
//    "time":..,"field":"omega","layout":"real-sh-l-major","count":(L+1)^2}

#include <filesystem>
#include <stdexcept>
#include <string>

#include "qqg/qg_dynamics.hpp"

namespace qqg::io {

constexpr int kSnapshotVersion = 1;

struct SnapshotError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Snapshot {
  int lmax = 0;
  double alpha2 = 0.0;
  double beta = 0.0;
  double central_a = 0.0;
  double time = 0.0;
  sphere::SphField omega;

  /// State with f recovered under the stored parameters.
  qg::QGState state() const;
};

Snapshot snapshot_of(const qg::QGState& s, const qg::QGParams& p);

std::string encode_snapshot(const Snapshot& s);
Snapshot decode_snapshot(const std::string& bytes);

void write_snapshot(const qg::QGState& s, const qg::QGParams& p, const std::filesystem::path& path);
void write_snapshot(const Snapshot& s, const std::filesystem::path& path);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace qqg::io
