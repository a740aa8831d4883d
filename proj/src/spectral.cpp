#include "wpfp/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <string>

#include "wpfp/errors.hpp"

namespace wpfp {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
} // namespace

Spectral::Spectral(const GridSpec& g) : grid_(g), size_(static_cast<std::size_t>(g.M) * g.N) {
  buf_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(size_));
  if (!buf_) throw numeric_error("Spectral: allocation failed");
  auto* fb = reinterpret_cast<fftw_complex*>(buf_);
  const int M = g.M, N = g.N;

  std::lock_guard<std::mutex> lock(planner_mutex());
  int n_x[] = {M};
  plans_[0] = fftw_plan_many_dft(1, n_x, N, fb, nullptr, N, 1, fb, nullptr, N, 1,
                                 FFTW_FORWARD, FFTW_ESTIMATE);
  plans_[1] = fftw_plan_many_dft(1, n_x, N, fb, nullptr, N, 1, fb, nullptr, N, 1,
                                 FFTW_BACKWARD, FFTW_ESTIMATE);
  int n_xi[] = {N};
  plans_[2] = fftw_plan_many_dft(1, n_xi, M, fb, nullptr, 1, N, fb, nullptr, 1, N,
                                 FFTW_FORWARD, FFTW_ESTIMATE);
  plans_[3] = fftw_plan_many_dft(1, n_xi, M, fb, nullptr, 1, N, fb, nullptr, 1, N,
                                 FFTW_BACKWARD, FFTW_ESTIMATE);
  plans_[4] = fftw_plan_dft_2d(M, N, fb, fb, FFTW_FORWARD, FFTW_ESTIMATE);
  plans_[5] = fftw_plan_dft_2d(M, N, fb, fb, FFTW_BACKWARD, FFTW_ESTIMATE);
  for (void* p : plans_)
    if (!p) throw numeric_error("Spectral: FFT plan creation failed");
}

Spectral::~Spectral() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  for (void* p : plans_) fftw_destroy_plan(static_cast<fftw_plan>(p));
  fftw_free(buf_);
}

void Spectral::load(const WignerField& w) {
  for (std::size_t i = 0; i < size_; ++i) buf_[i] = w.values[i];
}

void Spectral::store(WignerField& w, double scale) const {
  const double inv = 1.0 / scale;
  double max_re = 0.0, max_im = 0.0;
  for (std::size_t i = 0; i < size_; ++i) {
    const double re = buf_[i].real() * inv;
    const double im = std::fabs(buf_[i].imag()) * inv;
    w.values[i] = re;
    if (std::fabs(re) > max_re) max_re = std::fabs(re);
    if (im > max_im) max_im = im;
  }
  if (!std::isfinite(max_re) || !std::isfinite(max_im))
    throw numeric_error("spectral step produced non-finite values at t=" + std::to_string(w.time));
  w.imag_residual = (max_re > 0.0) ? max_im / max_re : max_im;
}

void Spectral::forward_x() { fftw_execute(static_cast<fftw_plan>(plans_[0])); }
void Spectral::backward_x() { fftw_execute(static_cast<fftw_plan>(plans_[1])); }
void Spectral::forward_xi() { fftw_execute(static_cast<fftw_plan>(plans_[2])); }
void Spectral::backward_xi() { fftw_execute(static_cast<fftw_plan>(plans_[3])); }
void Spectral::forward_2d() { fftw_execute(static_cast<fftw_plan>(plans_[4])); }
void Spectral::backward_2d() { fftw_execute(static_cast<fftw_plan>(plans_[5])); }

} // namespace wpfp
