#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pulsejitter::detail {

namespace {

// FFTW's planner is not thread-safe; plan execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Plan {
 public:
  Plan(std::size_t n, int sign) {
    std::vector<Complex> a(n), b(n);
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(a.data()),
                             reinterpret_cast<fftw_complex*>(b.data()), sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan_ == nullptr) throw std::runtime_error("fftw planning failed");
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }

  void execute(std::span<const Complex> in, std::span<Complex> out) const {
    // fftw takes a non-const input pointer but does not write to it for out-of-place plans.
    auto* src = const_cast<Complex*>(in.data());
    fftw_execute_dft(plan_, reinterpret_cast<fftw_complex*>(src), reinterpret_cast<fftw_complex*>(out.data()));
  }

 private:
  fftw_plan plan_ = nullptr;
};

const Plan& plan_for(std::size_t n, int sign) {
  thread_local std::map<std::pair<std::size_t, int>, Plan> cache;
  auto it = cache.find({n, sign});
  if (it == cache.end()) it = cache.try_emplace({n, sign}, n, sign).first;
  return it->second;
}

void run(std::span<const Complex> in, std::span<Complex> out, int sign) {
  if (in.size() != out.size()) throw std::invalid_argument("dft: size mismatch");
  if (in.data() == out.data()) throw std::invalid_argument("dft: in-place transform not supported");
  plan_for(in.size(), sign).execute(in, out);
}

}  // namespace

void dft_plus(std::span<const Complex> in, std::span<Complex> out) { run(in, out, FFTW_BACKWARD); }

void dft_minus(std::span<const Complex> in, std::span<Complex> out) { run(in, out, FFTW_FORWARD); }

}  // namespace pulsejitter::detail
