#include "eulerperm/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "eulerperm/error.hpp"

namespace eulerperm {

namespace {

// Plans are created once per size with FFTW_UNALIGNED and executed through the
// new-array interface, so any buffer may be used and results do not depend on
// allocation alignment.
struct PlanPair {
  fftw_plan forward;
  fftw_plan backward;
};

class PlanRegistry {
 public:
  static PlanRegistry& instance() {
    static PlanRegistry r;
    return r;
  }

  PlanPair get(int n) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    const std::size_t total = static_cast<std::size_t>(n) * n * n;
    fftw_complex* a = fftw_alloc_complex(total);
    fftw_complex* b = fftw_alloc_complex(total);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p{fftw_plan_dft_3d(n, n, n, a, b, FFTW_FORWARD, flags),
               fftw_plan_dft_3d(n, n, n, a, b, FFTW_BACKWARD, flags)};
    fftw_free(a);
    fftw_free(b);
    plans_.emplace(n, p);
    return p;
  }

  ~PlanRegistry() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

 private:
  std::mutex mu_;
  std::map<int, PlanPair> plans_;
};

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

Spectrum forward_transform(const Grid& g, std::span<const double> samples) {
  if (samples.size() != g.size()) throw InvalidInput("sample count does not match grid");
  Spectrum in(g.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i])) throw InvalidInput("field contains non-finite samples");
    in[i] = Complex(samples[i], 0.0);
  }
  Spectrum out(g.size());
  fftw_execute_dft(PlanRegistry::instance().get(g.n()).forward, as_fftw(in.data()), as_fftw(out.data()));
  return out;
}

void inverse_transform(const Grid& g, std::span<const Complex> coeffs, std::span<double> out) {
  if (coeffs.size() != g.size() || out.size() != g.size())
    throw InvalidInput("spectrum size does not match grid");
  Spectrum in(coeffs.begin(), coeffs.end());
  Spectrum res(g.size());
  fftw_execute_dft(PlanRegistry::instance().get(g.n()).backward, as_fftw(in.data()), as_fftw(res.data()));
  const double scale = 1.0 / static_cast<double>(g.size());
  for (std::size_t i = 0; i < res.size(); ++i) out[i] = res[i].real() * scale;
}

std::vector<double> inverse_transform(const Grid& g, std::span<const Complex> coeffs) {
  std::vector<double> out(g.size());
  inverse_transform(g, coeffs, out);
  return out;
}

}  // namespace eulerperm
