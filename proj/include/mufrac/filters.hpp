#ifndef MUFRAC_FILTERS_HPP
#define MUFRAC_FILTERS_HPP

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "mufrac/filters_data.hpp"  // generated from data/filters.json

namespace mufrac {

/// Orthonormal conjugate quadrature pair; highpass[n] = (-1)^n lowpass[L-1-n].
struct FilterPair {
  std::string name;
  std::vector<double> lowpass;
  std::vector<double> highpass;
  int vanishing_moments = 0;
  int support_length = 0;
};

/// Throws FormatError unless the pair satisfies the normalization, moment and
/// perfect-reconstruction identities.
inline void validate(const FilterPair& f) {
  const auto L = f.lowpass.size();
  auto fail = [&](const std::string& what) { throw FormatError("filter " + f.name + ": " + what); };
  if (L < 2 || L % 2 != 0 || f.highpass.size() != L) fail("need an even number of taps in both filters");
  if (static_cast<int>(L) != f.support_length) fail("support_length does not match the tap count");
  if (f.vanishing_moments < 1) fail("need at least one vanishing moment");
  double sum = 0.0;
  for (double h : f.lowpass) sum += h;
  if (std::abs(sum - std::sqrt(2.0)) > 1e-12) fail("lowpass does not sum to sqrt(2)");
  for (int m = 0; m < f.vanishing_moments; ++m) {
    double mom = 0.0;
    for (std::size_t k = 0; k < L; ++k) mom += std::pow(static_cast<double>(k), m) * f.highpass[k];
    if (std::abs(mom) > 1e-10) fail("highpass moment " + std::to_string(m) + " does not vanish");
  }
  for (std::size_t n = 0; n < L; ++n) {
    const double expect = (n % 2 == 0 ? 1.0 : -1.0) * f.lowpass[L - 1 - n];
    if (std::abs(f.highpass[n] - expect) > 1e-12) fail("highpass is not the conjugate of lowpass");
  }
  for (std::size_t shift = 0; shift < L; shift += 2) {
    double hh = 0.0, hg = 0.0;
    for (std::size_t n = 0; n + shift < L; ++n) {
      hh += f.lowpass[n] * f.lowpass[n + shift];
      hg += f.lowpass[n] * f.highpass[n + shift] + f.highpass[n] * f.lowpass[n + shift];
    }
    if (std::abs(hh - (shift == 0 ? 1.0 : 0.0)) > 1e-12) fail("lowpass is not orthonormal under even shifts");
    if (std::abs(hg) > 1e-12) fail("lowpass and highpass are not orthogonal");
  }
}

inline std::vector<FilterPair> parse_filter_table(const std::string& text) {
  std::vector<FilterPair> out;
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != "mufrac-filters") throw FormatError("filter table: unknown format");
    if (j.at("version").get<int>() != 1) throw FormatError("filter table: unsupported version");
    for (const auto& e : j.at("filters")) {
      FilterPair f;
      f.name = e.at("name").get<std::string>();
      f.lowpass = e.at("lowpass").get<std::vector<double>>();
      f.highpass = e.at("highpass").get<std::vector<double>>();
      f.vanishing_moments = e.at("vanishing_moments").get<int>();
      f.support_length = e.at("support_length").get<int>();
      validate(f);
      out.push_back(std::move(f));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("filter table: ") + e.what());
  }
  return out;
}

inline std::vector<FilterPair> load_filter_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open filter table " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_filter_table(ss.str());
}

/// The table shipped with the library.
inline const std::vector<FilterPair>& builtin_filters() {
  static const std::vector<FilterPair> table = parse_filter_table(detail::kFilterTableJson);
  return table;
}

inline std::vector<std::string> filter_names() {
  std::vector<std::string> names;
  for (const auto& f : builtin_filters()) names.push_back(f.name);
  return names;
}

inline const FilterPair& filter(const std::string& name) {
  for (const auto& f : builtin_filters())
    if (f.name == name) return f;
  throw InvalidArgument("unknown filter '" + name + "'");
}

}  // namespace mufrac

#endif  // MUFRAC_FILTERS_HPP
