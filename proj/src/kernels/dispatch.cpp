// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <cstdlib>
#include <cstring>

#include "halfplane/kernels/kernels.hpp"

namespace halfplane::kernels {

#ifndef HALFPLANE_HAVE_AVX2
const Table* avx2_table() { return nullptr; }
#endif

bool cpu_has_avx2() {
#if defined(HALFPLANE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const Table* pick_default() {
  const char* env = std::getenv("HALFPLANE_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return &scalar_table();
  if (cpu_has_avx2() && avx2_table() != nullptr) return avx2_table();
  return &scalar_table();
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> t{pick_default()};
  return t;
}

}  // namespace

const Table& active() { return *current().load(std::memory_order_acquire); }

void select(Isa isa) {
  const Table* t = &scalar_table();
  if (isa == Isa::kAvx2 && cpu_has_avx2() && avx2_table() != nullptr) t = avx2_table();
  current().store(t, std::memory_order_release);
}

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

}  // namespace halfplane::kernels
