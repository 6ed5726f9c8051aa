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

#include <atomic>
#include <cassert>
#include <cstdlib>
#include <string>
#include <string_view>

#include "qsrank/errors.h"
#include "qsrank/simd/kernels.h"

namespace qsrank::simd {
namespace {

constexpr KernelTable kScalarTable = {
    &scalar::Dot,  &scalar::Sum,  &scalar::MaxAbsDiff,
    &scalar::MaxAbs, &scalar::Axpy, &scalar::Scale,
};

#if defined(QSRANK_HAVE_AVX2)
constexpr KernelTable kAvx2Table = {
    &avx2::Dot,  &avx2::Sum,  &avx2::MaxAbsDiff,
    &avx2::MaxAbs, &avx2::Axpy, &avx2::Scale,
};
#endif

bool CpuHasAvx2() {
#if defined(QSRANK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend DetectBackend() {
  if (const char* env = std::getenv("QSRANK_SIMD")) {
    if (std::string_view(env) == "scalar") return Backend::kScalar;
  }
  return CpuHasAvx2() ? Backend::kAvx2 : Backend::kScalar;
}

std::atomic<Backend>& Current() {
  static std::atomic<Backend> backend{DetectBackend()};
  return backend;
}

}  // namespace

std::string_view BackendName(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool BackendAvailable(Backend backend) {
  if (backend == Backend::kScalar) return true;
  return CpuHasAvx2();
}

Backend ActiveBackend() { return Current().load(std::memory_order_relaxed); }

void SetBackend(Backend backend) {
  if (!BackendAvailable(backend)) {
    throw Error(ErrorKind::kDomain, "SIMD backend '" +
                                        std::string(BackendName(backend)) +
                                        "' is not available on this machine");
  }
  Current().store(backend, std::memory_order_relaxed);
}

const KernelTable& Kernels(Backend backend) {
#if defined(QSRANK_HAVE_AVX2)
  if (backend == Backend::kAvx2) return kAvx2Table;
#endif
  (void)backend;
  return kScalarTable;
}

const KernelTable& ActiveKernels() { return Kernels(ActiveBackend()); }

double Dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return ActiveKernels().dot(a.data(), b.data(), a.size());
}

double Sum(std::span<const double> a) {
  return ActiveKernels().sum(a.data(), a.size());
}

double MaxAbsDiff(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return ActiveKernels().max_abs_diff(a.data(), b.data(), a.size());
}

double MaxAbs(std::span<const double> a) {
  return ActiveKernels().max_abs(a.data(), a.size());
}

void Axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  ActiveKernels().axpy(alpha, x.data(), y.data(), x.size());
}

void Scale(double alpha, std::span<double> x) {
  ActiveKernels().scale(alpha, x.data(), x.size());
}

}  // namespace qsrank::simd
