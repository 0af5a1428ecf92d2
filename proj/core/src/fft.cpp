#include "fibersim/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace fibersim::fft {

namespace {

std::mutex g_planner_mutex;
std::unordered_map<std::size_t, fftw_plan> g_forward_plans;
std::unordered_map<std::size_t, fftw_plan> g_backward_plans;

fftw_plan get_plan(std::size_t n, int sign) {
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  auto& cache = (sign == FFTW_FORWARD) ? g_forward_plans : g_backward_plans;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // FFTW_UNALIGNED lets the plan execute on any caller buffer via the
  // new-array interface; FFTW_ESTIMATE keeps planning deterministic.
  fftw_complex* buf = fftw_alloc_complex(n);
  if (!buf) throw std::bad_alloc();
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  if (!plan) throw std::runtime_error("fftw plan creation failed");
  cache.emplace(n, plan);
  return plan;
}

void execute(std::vector<cplx>& data, int sign) {
  if (data.empty()) return;
  fftw_plan plan = get_plan(data.size(), sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace

void forward_inplace(std::vector<cplx>& data) { execute(data, FFTW_FORWARD); }

void backward_inplace(std::vector<cplx>& data) { execute(data, FFTW_BACKWARD); }

void inverse_inplace(std::vector<cplx>& data) {
  execute(data, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= scale;
}

}  // namespace fibersim::fft
