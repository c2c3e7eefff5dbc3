#include "cmdnls/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace cmdnls::fft {
namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. FFTW_ESTIMATE keeps plan choice (and hence rounding) independent
// of timing, which the bit-reproducibility of sweep output relies on.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    auto* a = fftw_alloc_complex(n);
    auto* b = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), a, b, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(a);
    fftw_free(b);
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(const cplx* in, cplx* out, std::size_t n, int sign) {
  fftw_plan p = cache().get(n, sign);
  // fftw_execute_dft does not modify `in` for out-of-place complex plans.
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void forward(const cplx* in, cplx* out, std::size_t n) { run(in, out, n, FFTW_FORWARD); }
void backward(const cplx* in, cplx* out, std::size_t n) { run(in, out, n, FFTW_BACKWARD); }

}  // namespace cmdnls::fft
