#include <cmath>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "mufrac/io.hpp"

using namespace mufrac;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "mufrac_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Base64, KnownVectors) {
  auto enc = [](const std::string& s) { return detail::base64_encode(std::vector<std::uint8_t>(s.begin(), s.end())); };
  EXPECT_EQ(enc(""), "");
  EXPECT_EQ(enc("f"), "Zg==");
  EXPECT_EQ(enc("fo"), "Zm8=");
  EXPECT_EQ(enc("foobar"), "Zm9vYmFy");
  const auto dec = detail::base64_decode("Zm9vYg==");
  EXPECT_EQ(std::string(dec.begin(), dec.end()), "foob");
  EXPECT_THROW(detail::base64_decode("Zm9"), FormatError);
  EXPECT_THROW(detail::base64_decode("Zm9*"), FormatError);
}

TEST(Base64, Float64RoundTrip) {
  const std::vector<std::vector<double>> rows{{1.5, -0.0, 1e-300}, {}, {std::nextafter(1.0, 2.0)}};
  const auto back = detail::unpack_f64(detail::pack_f64(rows));
  ASSERT_EQ(back.size(), 4u);
  EXPECT_EQ(back[0], 1.5);
  EXPECT_TRUE(std::signbit(back[1]));
  EXPECT_EQ(back[2], 1e-300);
  EXPECT_EQ(back[3], std::nextafter(1.0, 2.0));
  // "AAAA" is three bytes, not a whole double.
  EXPECT_THROW(detail::unpack_f64("AAAA"), FormatError);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-2.0), "-2");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  EXPECT_EQ(format_double(-kInfinity), "-inf");
  const double x = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Capacity, RoundTrip) {
  const auto mu = bounded_random_env(2, 5, 0.2, 0.8, 3);
  const auto path = scratch("capacity.json").string();
  save_capacity(mu, path);
  EXPECT_EQ(load_capacity(path), mu);
}

TEST(Capacity, RejectsBadDocuments) {
  auto j = to_json(power_law_env(1, 3, 1.0));
  auto wrong = j;
  wrong["format"] = "mufrac-wavelet-field";
  EXPECT_THROW(capacity_from_json(wrong), FormatError);
  auto version = j;
  version["version"] = 2;
  EXPECT_THROW(capacity_from_json(version), FormatError);
  auto missing = j;
  missing.erase("levels");
  EXPECT_THROW(capacity_from_json(missing), FormatError);
  auto inconsistent = j;
  inconsistent["levels"][1][0] = 5.0;
  EXPECT_THROW(capacity_from_json(inconsistent), FormatError);
  const auto path = scratch("broken.json").string();
  detail::write_text(path, "{not json");
  EXPECT_THROW(load_capacity(path), FormatError);
  EXPECT_THROW(load_capacity(scratch("absent.json").string()), FormatError);
}

TEST(Field, RoundTripIsBitExact) {
  const auto mu = cascade_env(2, 5, std::vector<double>{0.1, 0.2, 0.3, 0.4});
  const auto f = random_bounded_field(mu, 6, 21, 2.0, 0.25, "db4");
  const auto path = scratch("field.json").string();
  save_field(f, path);
  const auto g = load_field(path);
  EXPECT_EQ(g, f);
  EXPECT_EQ(g.filter_name, "db4");
}

TEST(Field, RejectsCorruptPayloads) {
  const auto f = random_bounded_field(power_law_env(1, 6, 1.0), 6, 1);
  auto j = to_json(f);
  auto shorter = j;
  shorter["J"] = 7;
  EXPECT_THROW(field_from_json(shorter), FormatError);
  auto longer = j;
  longer["J"] = 5;
  EXPECT_THROW(field_from_json(longer), FormatError);
  auto norm = j;
  norm["normalization"] = "L2";
  EXPECT_THROW(field_from_json(norm), FormatError);
  auto enc = j;
  enc["encoding"] = "hex";
  EXPECT_THROW(field_from_json(enc), FormatError);
}

TEST(SplitFamily, DirectoryRoundTrip) {
  const auto g = saturating_field(cascade_env(1, 8, std::vector<double>{0.3, 0.7}), 2.0, 9);
  const auto fam = split_family(g, 3);
  const auto dir = scratch("family").string();
  std::filesystem::remove_all(dir);
  save_split_family(fam, dir);
  EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(dir) / "member_2.json"));
  EXPECT_EQ(load_split_family(dir), fam);
  std::filesystem::remove(std::filesystem::path(dir) / "member_1.json");
  EXPECT_THROW(load_split_family(dir), FormatError);
}

TEST(Csv, TauAndSpectrum) {
  ScalingFunction t;
  t.qgrid = {-1.0, 0.5};
  t.tau = {-2.0, -0.5};
  t.diagnostics = {{-1.0, 0.0, 1e-3}, {0.5, 0.0, 0.0}};
  std::ostringstream out;
  write_tau_csv(out, t);
  EXPECT_EQ(out.str(), "q,tau,slope_residual\n-1,-2,0.001\n0.5,-0.5,0\n");
  SpectrumCurve s;
  s.hgrid = {0.5, 1.0};
  s.sigma = {1.0, kEmptyLevelSet};
  std::ostringstream sp;
  write_spectrum_csv(sp, s);
  EXPECT_EQ(sp.str(), "h,sigma\n0.5,1\n1,-inf\n");
}

TEST(Csv, Exponents) {
  std::ostringstream one, two;
  write_exponent_csv(one, {{{0.25}, 0.5, ExponentMethod::min, 2, 9}}, 1);
  EXPECT_EQ(one.str(), "x,h_estimate,method,jmin,jmax\n0.25,0.5,min,2,9\n");
  write_exponent_csv(two, {{{0.25, 0.75}, kInfinity, ExponentMethod::regression, 3, 5}}, 2);
  EXPECT_EQ(two.str(), "x0,x1,h_estimate,method,jmin,jmax\n0.25,0.75,inf,regression,3,5\n");
}
