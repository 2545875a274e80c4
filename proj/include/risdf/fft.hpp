// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

namespace risdf {

// Complex DFT of arbitrary length, backed by FFTW. Plans are cached per
// length behind a mutex; execution uses the new-array interface so
// concurrent transforms on distinct buffers are safe.

std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& in);

/// Inverse transform, scaled by 1/n (fft followed by ifft is the identity).
std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& in);

}  // namespace risdf
