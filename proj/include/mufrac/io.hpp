#ifndef MUFRAC_IO_HPP
#define MUFRAC_IO_HPP

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "capacity.hpp"
#include "error.hpp"
#include "leaders.hpp"
#include "mfspec.hpp"
#include "synthesis.hpp"
#include "wavelet.hpp"

namespace mufrac {

/// Shortest decimal that round-trips; non-finite values as inf, -inf, nan.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

// ---------------------------------------------------------------------------
// base64 of little-endian float64 arrays

namespace detail {
inline constexpr char kB64[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

inline std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out += kB64[(v >> 18) & 63];
    out += kB64[(v >> 12) & 63];
    out += kB64[(v >> 6) & 63];
    out += kB64[v & 63];
  }
  if (i < bytes.size()) {
    std::uint32_t v = bytes[i] << 16;
    if (i + 1 < bytes.size()) v |= bytes[i + 1] << 8;
    out += kB64[(v >> 18) & 63];
    out += kB64[(v >> 12) & 63];
    out += i + 1 < bytes.size() ? kB64[(v >> 6) & 63] : '=';
    out += '=';
  }
  return out;
}

inline std::vector<std::uint8_t> base64_decode(const std::string& text) {
  auto value = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  if (text.size() % 4 != 0) throw FormatError("base64: length is not a multiple of 4");
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 4 * 3);
  for (std::size_t i = 0; i < text.size(); i += 4) {
    int v[4];
    int pad = 0;
    for (int t = 0; t < 4; ++t) {
      const char c = text[i + static_cast<std::size_t>(t)];
      if (c == '=' && i + 4 == text.size() && t >= 2) {
        v[t] = 0;
        ++pad;
        continue;
      }
      if (pad > 0 || (v[t] = value(c)) < 0) throw FormatError("base64: invalid character");
    }
    const std::uint32_t w = (v[0] << 18) | (v[1] << 12) | (v[2] << 6) | v[3];
    out.push_back(static_cast<std::uint8_t>(w >> 16));
    if (pad < 2) out.push_back(static_cast<std::uint8_t>((w >> 8) & 0xFF));
    if (pad < 1) out.push_back(static_cast<std::uint8_t>(w & 0xFF));
  }
  return out;
}

inline std::string pack_f64(const std::vector<std::vector<double>>& rows) {
  std::vector<std::uint8_t> bytes;
  for (const auto& row : rows)
    for (double v : row) {
      std::uint64_t u;
      std::memcpy(&u, &v, sizeof u);
      for (int b = 0; b < 8; ++b) bytes.push_back(static_cast<std::uint8_t>(u >> (8 * b)));
    }
  return base64_encode(bytes);
}

inline std::vector<double> unpack_f64(const std::string& text) {
  const auto bytes = base64_decode(text);
  if (bytes.size() % 8 != 0) throw FormatError("payload: byte count is not a multiple of 8");
  std::vector<double> out(bytes.size() / 8);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t u = 0;
    for (int b = 0; b < 8; ++b) u |= static_cast<std::uint64_t>(bytes[8 * i + static_cast<std::size_t>(b)]) << (8 * b);
    std::memcpy(&out[i], &u, sizeof u);
  }
  return out;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

inline void expect_format(const nlohmann::json& j, const std::string& format) {
  if (!j.is_object() || j.value("format", "") != format) throw FormatError("expected a " + format + " document");
  if (j.value("version", 0) != 1) throw FormatError(format + ": unsupported version");
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Capacity trees

inline nlohmann::json to_json(const CapacityTree& mu) {
  return {{"format", "mufrac-capacity"}, {"version", 1},          {"d", mu.dim()},
          {"J", mu.depth()},            {"monotone", mu.monotone()}, {"levels", mu.levels()}};
}

/// Parses and re-validates a capacity document.
inline CapacityTree capacity_from_json(const nlohmann::json& j) {
  detail::expect_format(j, "mufrac-capacity");
  try {
    return CapacityTree(j.at("d").get<int>(), j.at("J").get<int>(),
                        j.at("levels").get<std::vector<std::vector<double>>>(), j.at("monotone").get<bool>());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("capacity: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("capacity: ") + e.what());
  }
}

inline void save_capacity(const CapacityTree& mu, const std::string& path) {
  detail::write_text(path, to_json(mu).dump() + "\n");
}

inline CapacityTree load_capacity(const std::string& path) {
  try {
    return capacity_from_json(nlohmann::json::parse(detail::read_text(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Wavelet fields: JSON header plus base64 payload of all detail levels in
// level-major, row-major-k, orientation-minor order.

inline nlohmann::json to_json(const WaveletField& f) {
  return {{"format", "mufrac-wavelet-field"},
          {"version", 1},
          {"d", f.d},
          {"J", f.J},
          {"filter_name", f.filter_name},
          {"normalization", "Linf"},
          {"coarse", f.coarse},
          {"encoding", "base64-f64le"},
          {"payload", detail::pack_f64(f.details)}};
}

inline WaveletField field_from_json(const nlohmann::json& j) {
  detail::expect_format(j, "mufrac-wavelet-field");
  try {
    if (j.at("normalization").get<std::string>() != "Linf") throw FormatError("field: unsupported normalization");
    if (j.at("encoding").get<std::string>() != "base64-f64le") throw FormatError("field: unsupported encoding");
    auto f = WaveletField::zeros(j.at("d").get<int>(), j.at("J").get<int>(), j.at("filter_name").get<std::string>());
    f.coarse = j.at("coarse").get<double>();
    const auto flat = detail::unpack_f64(j.at("payload").get<std::string>());
    std::size_t pos = 0;
    for (auto& row : f.details) {
      if (pos + row.size() > flat.size()) throw FormatError("field: payload is too short");
      std::copy(flat.begin() + static_cast<std::ptrdiff_t>(pos), flat.begin() + static_cast<std::ptrdiff_t>(pos + row.size()), row.begin());
      pos += row.size();
    }
    if (pos != flat.size()) throw FormatError("field: payload is too long");
    validate(f);
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("field: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("field: ") + e.what());
  }
}

inline void save_field(const WaveletField& f, const std::string& path) {
  detail::write_text(path, to_json(f).dump() + "\n");
}

inline WaveletField load_field(const std::string& path) {
  try {
    return field_from_json(nlohmann::json::parse(detail::read_text(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline nlohmann::json to_json(const LeaderField& L) {
  return {{"format", "mufrac-leader-field"},
          {"version", 1},
          {"d", L.d},
          {"J_top", L.J_top},
          {"J", L.J},
          {"boundary", L.boundary == Boundary::clipped ? "clipped" : "periodic"},
          {"encoding", "base64-f64le"},
          {"payload", detail::pack_f64(L.levels)}};
}

/// Writes member_<i>.json for each member and a manifest.json into `dir`.
inline void save_split_family(const SplitFamily& fam, const std::string& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest = {{"format", "mufrac-split-family"}, {"version", 1}, {"d1", fam.size()}};
  manifest["members"] = nlohmann::json::array();
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const std::string name = "member_" + std::to_string(i) + ".json";
    save_field(fam[i], (std::filesystem::path(dir) / name).string());
    manifest["members"].push_back(name);
  }
  detail::write_text((std::filesystem::path(dir) / "manifest.json").string(), manifest.dump(2) + "\n");
}

inline SplitFamily load_split_family(const std::string& dir) {
  const auto manifest = nlohmann::json::parse(detail::read_text((std::filesystem::path(dir) / "manifest.json").string()));
  detail::expect_format(manifest, "mufrac-split-family");
  SplitFamily fam;
  for (const auto& name : manifest.at("members"))
    fam.push_back(load_field((std::filesystem::path(dir) / name.get<std::string>()).string()));
  if (fam.size() != manifest.at("d1").get<std::size_t>()) throw FormatError("split family: member count mismatch");
  return fam;
}

// ---------------------------------------------------------------------------
// CSV

inline void write_tau_csv(std::ostream& out, const ScalingFunction& t) {
  out << "q,tau,slope_residual\n";
  for (std::size_t i = 0; i < t.qgrid.size(); ++i)
    out << format_double(t.qgrid[i]) << ',' << format_double(t.tau[i]) << ','
        << format_double(t.diagnostics[i].residual) << '\n';
}

inline void write_spectrum_csv(std::ostream& out, const SpectrumCurve& s) {
  out << "h,sigma\n";
  for (std::size_t i = 0; i < s.hgrid.size(); ++i)
    out << format_double(s.hgrid[i]) << ',' << (is_empty_level(s.sigma[i]) ? "-inf" : format_double(s.sigma[i])) << '\n';
}

struct ExponentRow {
  std::vector<double> x;
  double h = 0.0;
  ExponentMethod method = ExponentMethod::regression;
  int jmin = 0;
  int jmax = 0;
};

/// Columns x (d = 1) or x0..x{d-1}, then h_estimate, method, jmin, jmax.
inline void write_exponent_csv(std::ostream& out, const std::vector<ExponentRow>& rows, int d) {
  if (d == 1) {
    out << "x";
  } else {
    for (int i = 0; i < d; ++i) out << (i ? ",x" : "x") << i;
  }
  out << ",h_estimate,method,jmin,jmax\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.x.size(); ++i) out << (i ? "," : "") << format_double(r.x[i]);
    out << ',' << format_double(r.h) << ',' << to_string(r.method) << ',' << r.jmin << ',' << r.jmax << '\n';
  }
}

}  // namespace mufrac

#endif  // MUFRAC_IO_HPP
