#include <atomic>
#include <cstdlib>
#include <string_view>

#include "msing/kernels.hpp"

namespace msing::kernels {

namespace {

const Backend kScalar{"scalar", &scalar::map_to_sphere, &scalar::chordal_distances};

#if defined(MSING_HAVE_AVX2)
const Backend kAvx2{"avx2", &avx2::map_to_sphere, &avx2::chordal_distances};
#endif

const Backend* auto_select() {
  if (const char* env = std::getenv("MSING_KERNELS");
      env != nullptr && std::string_view(env) == "scalar") {
    return &kScalar;
  }
  if (const Backend* b = avx2_backend()) return b;
  return &kScalar;
}

std::atomic<const Backend*>& current() {
  static std::atomic<const Backend*> backend{auto_select()};
  return backend;
}

}  // namespace

const Backend& scalar_backend() { return kScalar; }

const Backend* avx2_backend() {
#if defined(MSING_HAVE_AVX2)
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const Backend& active() { return *current().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  const Backend* chosen = nullptr;
  if (name == "auto") {
    chosen = auto_select();
  } else if (name == "scalar") {
    chosen = &kScalar;
  } else if (name == "avx2") {
    chosen = avx2_backend();
  }
  if (chosen == nullptr) return false;
  current().store(chosen, std::memory_order_release);
  return true;
}

}  // namespace msing::kernels
