#include <atomic>
#include <cstdlib>
#include <string>

#include "eulerperm/error.hpp"
#include "eulerperm/simd/kernels.hpp"

namespace eulerperm::simd {

#ifdef EULERPERM_HAVE_AVX2
extern const KernelTable kAvx2Table;
#endif

namespace {

bool cpu_has_avx2() {
#if defined(EULERPERM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Level initial_level() {
  if (const char* env = std::getenv("EULERPERM_SIMD")) {
    if (std::string(env) == "scalar") return Level::scalar;
  }
  return cpu_has_avx2() ? Level::avx2 : Level::scalar;
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> t{&table(initial_level())};
  return t;
}

}  // namespace

bool available(Level level) { return level == Level::scalar || cpu_has_avx2(); }

const KernelTable& table(Level level) {
  if (level == Level::scalar) return scalar_table();
#ifdef EULERPERM_HAVE_AVX2
  if (cpu_has_avx2()) return kAvx2Table;
#endif
  throw InvalidInput("AVX2 kernels are not available on this machine");
}

const KernelTable& kernels() { return *active().load(std::memory_order_acquire); }

void set_active_level(Level level) { active().store(&table(level), std::memory_order_release); }

Level active_level() { return kernels().level; }

Level parse_level(std::string_view text) {
  if (text == "scalar") return Level::scalar;
  if (text == "avx2") return Level::avx2;
  if (text == "auto") return cpu_has_avx2() ? Level::avx2 : Level::scalar;
  throw InvalidInput("unknown SIMD level: " + std::string(text));
}

}  // namespace eulerperm::simd
