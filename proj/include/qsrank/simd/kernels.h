// Copyright 2026 The qsrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Vector kernels behind every dense inner loop in the library.
//
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2+FMA
// variant. The variant is chosen once at first use from CPUID; the environment
// variable QSRANK_SIMD=scalar forces the reference path. Reductions (Dot, Sum)
// in the AVX2 path accumulate in four lanes, so they may differ from the scalar
// result in the last few ulps. MaxAbsDiff, Axpy and Scale are elementwise and
// agree bit-for-bit except where FMA contraction changes rounding in Axpy.

#ifndef QSRANK_SIMD_KERNELS_H_
#define QSRANK_SIMD_KERNELS_H_

#include <span>
#include <string_view>

namespace qsrank::simd {

enum class Backend { kScalar, kAvx2 };

std::string_view BackendName(Backend backend);

// True when this binary carries the backend and the CPU can run it.
bool BackendAvailable(Backend backend);

Backend ActiveBackend();

// Switches the process-wide backend. Throws qsrank::Error (kDomain) if the
// backend is unavailable. Not meant to be called while other threads are
// running kernels.
void SetBackend(Backend backend);

struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum)(const double* a, std::size_t n);
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
  double (*max_abs)(const double* a, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  void (*scale)(double alpha, double* x, std::size_t n);
};

const KernelTable& Kernels(Backend backend);
const KernelTable& ActiveKernels();

// Convenience wrappers over ActiveKernels(). Spans must have equal extents.
double Dot(std::span<const double> a, std::span<const double> b);
double Sum(std::span<const double> a);
double MaxAbsDiff(std::span<const double> a, std::span<const double> b);
double MaxAbs(std::span<const double> a);
// y += alpha * x
void Axpy(double alpha, std::span<const double> x, std::span<double> y);
void Scale(double alpha, std::span<double> x);

namespace scalar {
double Dot(const double* a, const double* b, std::size_t n);
double Sum(const double* a, std::size_t n);
double MaxAbsDiff(const double* a, const double* b, std::size_t n);
double MaxAbs(const double* a, std::size_t n);
void Axpy(double alpha, const double* x, double* y, std::size_t n);
void Scale(double alpha, double* x, std::size_t n);
}  // namespace scalar

#if defined(QSRANK_HAVE_AVX2)
namespace avx2 {
double Dot(const double* a, const double* b, std::size_t n);
double Sum(const double* a, std::size_t n);
double MaxAbsDiff(const double* a, const double* b, std::size_t n);
double MaxAbs(const double* a, std::size_t n);
void Axpy(double alpha, const double* x, double* y, std::size_t n);
void Scale(double alpha, double* x, std::size_t n);
}  // namespace avx2
#endif

}  // namespace qsrank::simd

#endif  // QSRANK_SIMD_KERNELS_H_
