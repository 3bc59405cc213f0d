#include "hcross/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

#include "hcross/errors.hpp"

namespace hcross::fft {

namespace {

struct PlanKey {
  std::vector<int> shape;
  int sign;
  auto operator<=>(const PlanKey&) const = default;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  // FFTW's planner is not re-entrant, execution is.
  fftw_plan get(const std::vector<int>& shape, int sign, fftw_complex* buffer) {
    std::lock_guard lock(mutex_);
    PlanKey key{shape, sign};
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    // FFTW_ESTIMATE never touches the buffer while planning.
    fftw_plan plan = fftw_plan_dft(static_cast<int>(shape.size()), shape.data(), buffer, buffer,
                                   sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw ResourceError("FFTW failed to create a plan");
    plans_.emplace(std::move(key), plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void transform(std::span<std::complex<double>> data, std::span<const int> shape, Direction dir) {
  std::size_t total = 1;
  for (int n : shape) {
    if (n < 1) throw InvalidArgument("FFT extents must be positive");
    total *= static_cast<std::size_t>(n);
  }
  if (total != data.size()) throw InvalidArgument("FFT buffer size does not match its shape");
  if (total == 1) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan plan = cache().get(std::vector<int>(shape.begin(), shape.end()), sign, buf);
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace hcross::fft
