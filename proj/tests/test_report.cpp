#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "pfl/report.hpp"

using namespace pfl;

namespace {

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

bool same_bits(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (!same_bits(a(i).real(), b(i).real()) || !same_bits(a(i).imag(), b(i).imag())) return false;
  }
  return true;
}

}  // namespace

TEST(Report, MatrixRoundTripIsBitExact) {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
  std::uniform_int_distribution<int> exponent(-300, 300);
  std::uniform_int_distribution<int> size(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    Matrix m(size(rng), size(rng));
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      m(i) = Complex(std::ldexp(mantissa(rng), exponent(rng)), std::ldexp(mantissa(rng), exponent(rng) / 4));
    }
    const Json parsed = Json::parse(matrix_to_json(m).dump());
    ASSERT_TRUE(same_bits(matrix_from_json(parsed), m)) << "trial " << trial;
  }
}

TEST(Report, SpecialValues) {
  const double inf = std::numeric_limits<double>::infinity();
  const double tiny = std::numeric_limits<double>::denorm_min();
  Matrix m(1, 3);
  m << Complex(inf, -inf), Complex(tiny, -0.0), Complex(0.1, 1.0 / 3.0);
  const Matrix back = matrix_from_json(Json::parse(matrix_to_json(m).dump()));
  EXPECT_TRUE(same_bits(back, m));
  const Complex nan_z = complex_from_json(Json::parse(complex_to_json({std::nan(""), 1.0}).dump()));
  EXPECT_TRUE(std::isnan(nan_z.real()));
}

TEST(Report, DocumentRoundTrip) {
  ReportDocument doc;
  doc.command = "block";
  doc.parameters["gamma"] = complex_to_json({0.5, 0.25});
  doc.parameters["level"] = 2;
  Matrix a(2, 2);
  a << 0, 1, 0, Complex(0.0, 0.7);
  doc.matrices.emplace_back("a", a);
  doc.add_checks({make_check("nilpotency_a", 1e-17, 1e-10), make_check("bad", 1.0, 1e-10)}, "level2.");
  doc.data["note"] = "x";

  const Json j = doc.to_json();
  EXPECT_EQ(j["version"], kSchemaVersion);
  EXPECT_EQ(j["all_pass"], false);
  EXPECT_EQ(j["checks"][0]["name"], "level2.nilpotency_a");

  const ReportDocument back = ReportDocument::from_json(Json::parse(doc.dump()));
  EXPECT_EQ(back.command, "block");
  ASSERT_EQ(back.matrices.size(), 1u);
  EXPECT_TRUE(same_bits(back.matrices[0].second, a));
  ASSERT_EQ(back.checks.size(), 2u);
  EXPECT_TRUE(back.checks[0].pass);
  EXPECT_FALSE(back.checks[1].pass);
  EXPECT_EQ(back.dump(), doc.dump());
}

TEST(Report, MalformedInput) {
  EXPECT_THROW(complex_from_json(Json::array({1.0})), ParameterError);
  EXPECT_THROW(complex_from_json(Json::array({"oops", 1.0})), ParameterError);
  EXPECT_THROW(matrix_from_json(Json::parse("[[[1,0],[2,0]],[[1,0]]]")), ParameterError);
  EXPECT_THROW(matrix_from_json(Json::object()), ParameterError);
}
