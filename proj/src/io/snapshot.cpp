#include "qqg/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace qqg::io {

namespace {

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
}

}  // namespace

qg::QGState Snapshot::state() const {
  qg::QGParams p;
  p.lmax = lmax;
  p.alpha2 = alpha2;
  p.beta = beta;
  p.central_a = central_a;
  return qg::state_from_omega(omega, p, time);
}

Snapshot snapshot_of(const qg::QGState& s, const qg::QGParams& p) {
  Snapshot out;
  out.lmax = s.omega.lmax();
  out.alpha2 = p.alpha2;
  out.beta = p.beta;
  out.central_a = s.central_a;
  out.time = s.time;
  out.omega = s.omega;
  return out;
}

std::string encode_snapshot(const Snapshot& s) {
  nlohmann::ordered_json h;
  h["format_version"] = kSnapshotVersion;
  h["lmax"] = s.lmax;
  h["alpha2"] = s.alpha2;
  h["beta"] = s.beta;
  h["central_a"] = s.central_a;
  h["time"] = s.time;
  h["field"] = "omega";
  h["layout"] = "real-sh-l-major";
  h["count"] = s.omega.size();
  std::string out = h.dump();
  out.push_back('\n');
  const auto c = s.omega.coeffs();
  const std::size_t header = out.size();
  out.resize(header + 8 * c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(c[i]));
    std::memcpy(out.data() + header + 8 * i, &bits, 8);
  }
  return out;
}

Snapshot decode_snapshot(const std::string& bytes) {
  const auto nl = bytes.find('\n');
  if (nl == std::string::npos) throw SnapshotError("snapshot: missing header line");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(bytes.substr(0, nl));
  } catch (const nlohmann::json::exception& e) {
    throw SnapshotError(std::string("snapshot: malformed header: ") + e.what());
  }
  try {
    const int version = h.at("format_version").get<int>();
    if (version != kSnapshotVersion) {
      throw SnapshotError("snapshot: format_version " + std::to_string(version) + " is not supported (expected " +
                          std::to_string(kSnapshotVersion) + ")");
    }
    if (h.at("field").get<std::string>() != "omega") throw SnapshotError("snapshot: field must be \"omega\"");
    if (h.at("layout").get<std::string>() != "real-sh-l-major") {
      throw SnapshotError("snapshot: unknown layout " + h.at("layout").dump());
    }
    Snapshot s;
    s.lmax = h.at("lmax").get<int>();
    if (s.lmax < 0) throw SnapshotError("snapshot: negative lmax");
    s.alpha2 = h.at("alpha2").get<double>();
    s.beta = h.at("beta").get<double>();
    s.central_a = h.at("central_a").get<double>();
    s.time = h.at("time").get<double>();
    const std::size_t count = h.at("count").get<std::size_t>();
    if (count != sphere::SphField::count(s.lmax)) {
      throw SnapshotError("snapshot: count " + std::to_string(count) + " does not match lmax " + std::to_string(s.lmax));
    }
    const std::size_t payload = bytes.size() - nl - 1;
    if (payload != 8 * count) {
      throw SnapshotError("snapshot: payload has " + std::to_string(payload) + " bytes, expected " +
                          std::to_string(8 * count) + (payload < 8 * count ? " (truncated)" : ""));
    }
    std::vector<double> c(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::uint64_t bits;
      std::memcpy(&bits, bytes.data() + nl + 1 + 8 * i, 8);
      c[i] = std::bit_cast<double>(to_little(bits));
    }
    s.omega = sphere::SphField(s.lmax, std::move(c));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw SnapshotError(std::string("snapshot: bad header field: ") + e.what());
  }
}

void write_snapshot(const qg::QGState& s, const qg::QGParams& p, const std::filesystem::path& path) {
  write_snapshot(snapshot_of(s, p), path);
}

void write_snapshot(const Snapshot& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SnapshotError("snapshot: cannot open " + path.string() + " for writing");
  const std::string bytes = encode_snapshot(s);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw SnapshotError("snapshot: write to " + path.string() + " failed");
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError("snapshot: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return decode_snapshot(ss.str());
}

}  // namespace qqg::io
