#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "blip/error.hpp"

namespace blip::detail {
namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n) {
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(n); it != plans_.end()) return it->second;
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) throw Error(ErrorKind::consistency, "FFTW plan creation failed");
    plans_.emplace(n, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void forward_dft(std::span<const Complex> in, std::span<Complex> out) {
  if (in.size() != out.size()) throw Error(ErrorKind::consistency, "forward_dft: size mismatch");
  fftw_plan plan = cache().get(in.size());
  // FFTW leaves the input untouched for out-of-place complex transforms.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data()));
  fftw_execute_dft(plan, src, reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace blip::detail
