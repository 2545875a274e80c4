// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>

#include "doctest.h"
#include "risdf/fft.hpp"
#include "risdf/rng.hpp"

using namespace risdf;

TEST_CASE("derived seeds decorrelate and reproduce") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(42, 17) == derive_seed(42, 17));
}

TEST_CASE("rng determinism and moments") {
    Rng a(123);
    Rng b(123);
    for (int i = 0; i < 100; ++i)
        CHECK(a.next_u64() == b.next_u64());

    Rng r(99);
    double mean = 0.0;
    double power = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const auto z = r.complex_normal();
        mean += z.real();
        power += std::norm(z);
    }
    CHECK(std::abs(mean / n) < 0.02);
    CHECK(power / n == doctest::Approx(1.0).epsilon(0.03));

    Rng bits(5);
    int ones = 0;
    for (int i = 0; i < 10000; ++i)
        ones += bits.next_bit();
    CHECK(ones > 4800);
    CHECK(ones < 5200);
}

TEST_CASE("fft round trip and non-power-of-two lengths") {
    Rng rng(17);
    for (int n : {16, 512, 548, 137}) {
        std::vector<std::complex<double>> x(static_cast<std::size_t>(n));
        for (auto& v : x)
            v = {rng.uniform() - 0.5, rng.uniform() - 0.5};
        const auto back = ifft(fft(x));
        double err = 0.0;
        double ref = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            err += std::norm(back[i] - x[i]);
            ref += std::norm(x[i]);
        }
        CHECK(std::sqrt(err / ref) < 1e-12);
    }
}

TEST_CASE("fft of a single tone lands in one bin") {
    const int n = 64;
    std::vector<std::complex<double>> x(n);
    const int tone = 5;
    for (int k = 0; k < n; ++k)
        x[static_cast<std::size_t>(k)] =
            std::polar(1.0, 2.0 * 3.14159265358979323846 * tone * k / n);
    const auto spec = fft(x);
    for (int k = 0; k < n; ++k) {
        const double mag = std::abs(spec[static_cast<std::size_t>(k)]);
        if (k == tone)
            CHECK(mag == doctest::Approx(static_cast<double>(n)).epsilon(1e-9));
        else
            CHECK(mag < 1e-9 * n);
    }
}
