#include "qths/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace qths {

namespace {

std::mutex plan_mutex; // FFTW planning is not thread-safe

void run(std::vector<int> dims, cplx* data, int sign) {
  if (dims.empty()) throw std::invalid_argument("fft: empty dims");
  fftw_complex* p = reinterpret_cast<fftw_complex*>(data);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), p, p, sign,
                         FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("fftw planning failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_destroy_plan(plan);
  }
}

} // namespace

void fft_forward(std::vector<int> dims, cplx* data) { run(std::move(dims), data, FFTW_FORWARD); }

void fft_backward(std::vector<int> dims, cplx* data) { run(std::move(dims), data, FFTW_BACKWARD); }

} // namespace qths
