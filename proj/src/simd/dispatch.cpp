#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace ofdm::simd {
namespace {

#if defined(OFDMKIT_HAVE_AVX2)
bool cpu_has_avx2() {
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}
#endif

const KernelTable& select() {
  const char* env = std::getenv("OFDMKIT_SIMD");
  const std::string want = env ? env : "";
  if (want == "scalar") return scalar_kernels();
  if (const KernelTable* avx2 = avx2_kernels()) return *avx2;
  if (want == "avx2") throw std::runtime_error("OFDMKIT_SIMD=avx2 but AVX2 is unavailable");
  return scalar_kernels();
}

}  // namespace

const KernelTable* avx2_kernels() {
#if defined(OFDMKIT_HAVE_AVX2)
  if (cpu_has_avx2()) return &detail::avx2_table();
#endif
  return nullptr;
}

const KernelTable& active_kernels() {
  static const KernelTable& table = select();
  return table;
}

namespace {
void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": length mismatch");
}
}  // namespace

void cmul(std::span<const Complex> a, std::span<const Complex> b, std::span<Complex> out) {
  require_same(a.size(), b.size(), "cmul");
  require_same(a.size(), out.size(), "cmul");
  active_kernels().cmul(a.data(), b.data(), out.data(), a.size());
}

void caxpy(Complex h, std::span<const Complex> x, std::span<Complex> y) {
  require_same(x.size(), y.size(), "caxpy");
  active_kernels().caxpy(h, x.data(), y.data(), x.size());
}

void scale_real(std::span<const double> w, std::span<Complex> x) {
  require_same(w.size(), x.size(), "scale_real");
  active_kernels().scale_real(w.data(), x.data(), x.size());
}

void axpy_real(double s, std::span<const Complex> g, std::span<Complex> y) {
  require_same(g.size(), y.size(), "axpy_real");
  active_kernels().axpy_real(s, g.data(), y.data(), g.size());
}

PowerStats power_stats(std::span<const Complex> x) {
  return active_kernels().power_stats(x.data(), x.size());
}

void clip_magnitude(std::span<Complex> x, double limit) {
  active_kernels().clip_magnitude(x.data(), x.size(), limit);
}

}  // namespace ofdm::simd
