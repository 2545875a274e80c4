// SPDX-License-Identifier: Apache-2.0

#include "risdf/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace risdf {

namespace {

std::mutex plan_mutex;

// Plans are created once per (length, direction) with scratch buffers and
// FFTW_UNALIGNED, then reused through fftw_execute_dft on caller arrays.
fftw_plan plan_for(int n, int sign) {
    static std::unordered_map<long long, fftw_plan> cache;
    const long long key = static_cast<long long>(n) * 4 + (sign == FFTW_FORWARD ? 0 : 1);
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    std::vector<std::complex<double>> scratch_in(static_cast<std::size_t>(n));
    std::vector<std::complex<double>> scratch_out(static_cast<std::size_t>(n));
    fftw_plan p = fftw_plan_dft_1d(
        n, reinterpret_cast<fftw_complex*>(scratch_in.data()),
        reinterpret_cast<fftw_complex*>(scratch_out.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (p == nullptr)
        throw std::runtime_error("fftw plan creation failed");
    cache.emplace(key, p);
    return p;
}

std::vector<std::complex<double>> transform(const std::vector<std::complex<double>>& in,
                                            int sign) {
    if (in.empty())
        throw std::invalid_argument("fft: empty input");
    const int n = static_cast<int>(in.size());
    fftw_plan p = plan_for(n, sign);
    std::vector<std::complex<double>> tmp(in);
    std::vector<std::complex<double>> out(in.size());
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

}  // namespace

std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& in) {
    return transform(in, FFTW_FORWARD);
}

std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& in) {
    auto out = transform(in, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(out.size());
    for (auto& v : out)
        v *= scale;
    return out;
}

}  // namespace risdf
