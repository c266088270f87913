#include "dcoupler/kernels.hpp"

#include <cstdlib>
#include <string>

namespace dcoupler::kernels {
namespace {

bool cpu_has_avx2_fma() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Table& select() {
  const char* env = std::getenv("DCOUPLER_SIMD");
  const std::string mode = env ? env : "auto";
  if (mode == "scalar") return scalar_table();
  const Table* avx2 = avx2_table();
  if (avx2 && cpu_has_avx2_fma() && (mode == "auto" || mode == "avx2"))
    return *avx2;
  return scalar_table();
}

}  // namespace

const Table& active() {
  static const Table& table = select();
  return table;
}

}  // namespace dcoupler::kernels
