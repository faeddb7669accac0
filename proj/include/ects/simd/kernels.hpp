#pragma once

// Data-parallel arithmetic kernels used by the hot loops of the library
// (logistic-regression gradients over samples, RBF Gram matrices, prefix
// moments). Each kernel has a scalar reference implementation and, on x86-64,
// an AVX2+FMA variant. The variant is picked once at runtime from CPUID and
// can be pinned with the ECTS_SIMD environment variable ("scalar" or "avx2")
// or with force_isa() from tests.
//
// The variants reorder reductions, so results agree to rounding only; all
// callers must tolerate that (tests compare at 1e-12 relative).

#include <cstddef>
#include <span>
#include <string_view>

namespace ects::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

// True when the running CPU can execute the given variant and it was compiled in.
bool isa_available(Isa isa);

// The variant currently used by the dispatching entry points below.
Isa active_isa();

// Pins the dispatch to `isa`. Throws PreconditionError if it is unavailable.
void force_isa(Isa isa);

// Sum of a[i] * b[i]. Spans must have equal length.
double dot(std::span<const double> a, std::span<const double> b);

// y[i] += alpha * x[i]. Spans must have equal length.
void axpy(double alpha, std::span<const double> x, std::span<double> y);

// Sum of (a[i] - b[i])^2. Spans must have equal length.
double squared_distance(std::span<const double> a, std::span<const double> b);

// Sum of x[i].
double sum(std::span<const double> x);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
double squared_distance(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> x);
}  // namespace scalar

#if defined(ECTS_HAVE_AVX2)
namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
double squared_distance(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> x);
}  // namespace avx2
#endif

}  // namespace ects::simd
