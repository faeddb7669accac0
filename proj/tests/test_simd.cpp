#include <cmath>
#include <cstdlib>

#include "doctest.h"

#include "ects/classify/logistic.hpp"
#include "ects/core/rng.hpp"
#include "ects/error.hpp"
#include "ects/simd/kernels.hpp"
#include "ects/trigger/kernel_ridge.hpp"

using namespace ects;
using simd::Isa;

namespace {

std::vector<double> random_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal() * 3.0;
  return v;
}

bool close(double a, double b, double scale) { return std::abs(a - b) <= 1e-12 * std::max(1.0, scale); }

struct IsaGuard {
  Isa saved = simd::active_isa();
  ~IsaGuard() { simd::force_isa(saved); }
};

}  // namespace

TEST_CASE("scalar kernels match naive loops") {
  Rng rng(1);
  for (std::size_t n : {0u, 1u, 3u, 17u}) {
    const auto a = random_vector(rng, n);
    const auto b = random_vector(rng, n);
    double dot = 0.0, dist = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dot += a[i] * b[i];
      dist += (a[i] - b[i]) * (a[i] - b[i]);
      sum += a[i];
    }
    CHECK(simd::scalar::dot(a, b) == doctest::Approx(dot).epsilon(1e-14));
    CHECK(simd::scalar::squared_distance(a, b) == doctest::Approx(dist).epsilon(1e-14));
    CHECK(simd::scalar::sum(a) == doctest::Approx(sum).epsilon(1e-14));
  }
}

TEST_CASE("dispatcher rejects mismatched lengths") {
  std::vector<double> a(3), b(4);
  CHECK_THROWS_AS(simd::dot(a, b), PreconditionError);
  CHECK_THROWS_AS(simd::axpy(1.0, a, b), PreconditionError);
  CHECK_THROWS_AS(simd::squared_distance(a, b), PreconditionError);
}

TEST_CASE("scalar is always available and can be pinned") {
  IsaGuard guard;
  CHECK(simd::isa_available(Isa::Scalar));
  simd::force_isa(Isa::Scalar);
  CHECK(simd::active_isa() == Isa::Scalar);
  CHECK(simd::isa_name(Isa::Scalar) == "scalar");
}

#if defined(ECTS_HAVE_AVX2)
TEST_CASE("avx2 kernels agree with scalar to 1e-12 relative") {
  if (!simd::isa_available(Isa::Avx2)) {
    MESSAGE("CPU lacks AVX2+FMA; equivalence not exercised");
    return;
  }
  Rng rng(2);
  for (std::size_t n = 0; n <= 67; ++n) {
    const auto a = random_vector(rng, n);
    const auto b = random_vector(rng, n);
    double abs_dot = 0.0, abs_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      abs_dot += std::abs(a[i] * b[i]);
      abs_sum += std::abs(a[i]);
    }
    CHECK(close(simd::scalar::dot(a, b), simd::avx2::dot(a, b), abs_dot));
    CHECK(close(simd::scalar::sum(a), simd::avx2::sum(a), abs_sum));
    const double d = simd::scalar::squared_distance(a, b);
    CHECK(close(d, simd::avx2::squared_distance(a, b), d));

    auto y1 = b;
    auto y2 = b;
    simd::scalar::axpy(0.37, a, y1);
    simd::avx2::axpy(0.37, a, y2);
    for (std::size_t i = 0; i < n; ++i) CHECK(close(y1[i], y2[i], std::abs(y1[i]) + std::abs(0.37 * a[i])));
  }
}

TEST_CASE("logistic fit and kernel ridge agree across variants") {
  if (!simd::isa_available(Isa::Avx2)) return;
  IsaGuard guard;
  Rng rng(3);
  DesignMatrix x;
  x.rows = 61;
  for (int j = 0; j < 7; ++j) x.columns.push_back(random_vector(rng, x.rows));
  std::vector<ClassLabel> labels(x.rows);
  for (auto& l : labels) l = rng.below(3);

  simd::force_isa(Isa::Scalar);
  const auto m1 = fit_softmax(x, labels, 3, LogisticHyper{});
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 40; ++i) pts.push_back(random_vector(rng, 4));
  std::vector<double> targets = random_vector(rng, 40);
  const auto r1 = fit_kernel_ridge(pts, targets, 1e-2, 0.0);

  simd::force_isa(Isa::Avx2);
  const auto m2 = fit_softmax(x, labels, 3, LogisticHyper{});
  const auto r2 = fit_kernel_ridge(pts, targets, 1e-2, 0.0);

  for (std::size_t i = 0; i < m1.weights().size(); ++i) {
    CHECK(std::abs(m1.weights()[i] - m2.weights()[i]) <= 1e-9 * std::max(1.0, std::abs(m1.weights()[i])));
  }
  CHECK(r1.bandwidth() == doctest::Approx(r2.bandwidth()).epsilon(1e-12));
  for (const auto& p : pts) CHECK(r1.predict(p) == doctest::Approx(r2.predict(p)).epsilon(1e-9));
}
#endif
