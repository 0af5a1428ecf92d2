#pragma once

#include <complex>
#include <vector>

namespace fibersim::fft {

using cplx = std::complex<double>;

// In-place unnormalized transforms (FFTW convention):
//   forward:  X_k = sum_n x_n exp(-2 pi i k n / N)
//   backward: x_n = sum_k X_k exp(+2 pi i k n / N)       (no 1/N)
// Plans are cached per size with FFTW_ESTIMATE so results are reproducible
// run to run; execution is thread-safe, plan creation is serialized.
void forward_inplace(std::vector<cplx>& data);
void backward_inplace(std::vector<cplx>& data);

// backward with the conventional 1/N normalization.
void inverse_inplace(std::vector<cplx>& data);

}  // namespace fibersim::fft
