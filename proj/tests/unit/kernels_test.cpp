#include <doctest.h>

#include <cstdint>
#include <cstring>
#include <random>
#include <vector>

#include "entorder/kernels.hpp"

using namespace entorder::kernels;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("serial and parallel condition flags agree") {
  const std::vector<CurveShape> shapes{{1, 1.0}, {4, 1.0}, {2, 1.7}};
  std::vector<std::uint8_t> s(200000), p(200000);
  serial::condition_flags(shapes, 0.0, 0.01, 0.0, s);
  parallel::condition_flags(shapes, 0.0, 0.01, 0.0, p);
  CHECK(s == p);
  CHECK(s[0] == 1);  // y = 0 is outside the domain
  CHECK(s.back() == 0);
}

TEST_CASE("serial and parallel curve values agree bit for bit") {
  for (CurveShape shape : {CurveShape{0, 1.0}, CurveShape{1, 1.0}, CurveShape{3, 2.5}}) {
    std::vector<double> s(50001), p(50001);
    serial::log_curve_values(shape, 3.79, 0.7, s);
    parallel::log_curve_values(shape, 3.79, 0.7, p);
    CHECK(same_bits(s, p));
  }
}

TEST_CASE("serial and parallel weight reconstruction agree") {
  std::vector<double> log_g(60001);
  serial::log_curve_values({2, 1.0}, 1.01, 0.3, log_g);
  for (double& v : log_g) v -= log_g[0];
  std::vector<double> s(60000), p(60000);
  serial::log_weights_from_tail(log_g, s);
  parallel::log_weights_from_tail(log_g, p);
  CHECK(same_bits(s, p));
}

TEST_CASE("serial and parallel log ratios agree") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z;
  std::vector<double> a(100000), b(100000);
  for (auto& v : a) v = z(rng);
  for (auto& v : b) v = z(rng);
  std::vector<double> s(a.size()), p(a.size());
  serial::log_ratio(a, b, s);
  parallel::log_ratio(a, b, p);
  CHECK(same_bits(s, p));
  CHECK(s[17] == a[17] - b[17]);
}
