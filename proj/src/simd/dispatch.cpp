#include <atomic>
#include <cstdlib>
#include <string>

#include "ects/error.hpp"
#include "ects/simd/kernels.hpp"

namespace ects::simd {
namespace {

struct KernelTable {
  double (*dot)(std::span<const double>, std::span<const double>);
  void (*axpy)(double, std::span<const double>, std::span<double>);
  double (*squared_distance)(std::span<const double>, std::span<const double>);
  double (*sum)(std::span<const double>);
};

constexpr KernelTable kScalarTable{scalar::dot, scalar::axpy, scalar::squared_distance, scalar::sum};
#if defined(ECTS_HAVE_AVX2)
constexpr KernelTable kAvx2Table{avx2::dot, avx2::axpy, avx2::squared_distance, avx2::sum};
#endif

const KernelTable& table_for(Isa isa) {
#if defined(ECTS_HAVE_AVX2)
  if (isa == Isa::Avx2) return kAvx2Table;
#endif
  (void)isa;
  return kScalarTable;
}

Isa detect() {
  if (const char* env = std::getenv("ECTS_SIMD")) {
    const std::string requested(env);
    if (requested == "scalar") return Isa::Scalar;
    if (requested == "avx2" && isa_available(Isa::Avx2)) return Isa::Avx2;
  }
  return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

const KernelTable& active() { return table_for(current().load(std::memory_order_relaxed)); }

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw PreconditionError("simd kernel: span lengths differ");
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(ECTS_HAVE_AVX2)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw PreconditionError("simd: variant '" + std::string(isa_name(isa)) + "' is not available");
  }
  current().store(isa, std::memory_order_relaxed);
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_sizes(a.size(), b.size());
  return active().dot(a, b);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  check_sizes(x.size(), y.size());
  active().axpy(alpha, x, y);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  check_sizes(a.size(), b.size());
  return active().squared_distance(a, b);
}

double sum(std::span<const double> x) { return active().sum(x); }

}  // namespace ects::simd
