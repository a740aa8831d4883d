#pragma once

#include <complex>
#include <vector>

#include "wpfp/grid.hpp"

namespace wpfp {

struct WignerField;

// Batched in-place DFTs on an M x N x-major complex workspace, one
// instance per grid. Forward/backward transforms are unnormalized; the
// store helpers divide by the transform length. Plan creation is
// serialized internally; a single instance must not be used from two
// threads at once.
class Spectral {
public:
  explicit Spectral(const GridSpec& g);
  ~Spectral();
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  const GridSpec& grid() const { return grid_; }
  std::complex<double>* buffer() { return buf_; }
  std::size_t size() const { return size_; }

  void load(const WignerField& w);  // values -> buffer (imag = 0)

  // Truncate buffer/scale back to real storage. Records max|Im|/max|Re|
  // in w.imag_residual and throws numeric_error on non-finite output.
  void store(WignerField& w, double scale) const;

  void forward_x();    // length-M DFT over m for each l
  void backward_x();
  void forward_xi();   // length-N DFT over l for each m
  void backward_xi();
  void forward_2d();
  void backward_2d();

private:
  GridSpec grid_;  // dims/bounds copy; node tables unused here
  std::size_t size_;
  std::complex<double>* buf_;
  void* plans_[6];
};

} // namespace wpfp
