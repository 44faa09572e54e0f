/*
 * Copyright 2026 the lexiphylo authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <doctest.h>

#include <random>
#include <vector>

#include "lexiphylo/io_util.hpp"
#include "lexiphylo/kernels.hpp"

using namespace lexiphylo;

namespace {

template <typename T>
std::vector<T> random_vec(std::mt19937_64& rng, std::size_t n) {
    std::vector<T> v(n);
    for (auto& x : v) x = static_cast<T>(uniform01(rng) * 2.0 - 1.0);
    return v;
}

}  // namespace

TEST_CASE("scalar dot basics") {
    const std::vector<float> a{1.0f, 2.0f, 3.0f};
    const std::vector<float> b{4.0f, 5.0f, 6.0f};
    CHECK(kernels::scalar::dot(a.data(), b.data(), 3) == doctest::Approx(32.0f));
    CHECK(kernels::scalar::dot(a.data(), b.data(), 0) == 0.0f);
}

TEST_CASE("scalar axpy and squared_euclidean") {
    std::vector<double> y{1.0, 1.0, 1.0};
    const std::vector<double> x{1.0, 2.0, 3.0};
    kernels::scalar::axpy(2.0, x.data(), y.data(), 3);
    CHECK(y[0] == doctest::Approx(3.0));
    CHECK(y[2] == doctest::Approx(7.0));

    const std::vector<double> a{0.0, 0.0};
    const std::vector<double> b{3.0, 4.0};
    CHECK(kernels::scalar::squared_euclidean(a.data(), b.data(), 2) ==
          doctest::Approx(25.0));
}

TEST_CASE("dispatched kernels match the scalar reference") {
    INFO("active backend: ", kernels::backend());
    std::mt19937_64 rng(20260808);

    // odd lengths exercise the SIMD tails
    for (const std::size_t n : {1u, 3u, 7u, 8u, 15u, 64u, 100u, 257u}) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto af = random_vec<float>(rng, n);
            const auto bf = random_vec<float>(rng, n);
            const float rf = kernels::scalar::dot(af.data(), bf.data(), n);
            const float df = kernels::dot(af.data(), bf.data(), n);
            CHECK(df == doctest::Approx(rf).epsilon(1e-4));

            const auto ad = random_vec<double>(rng, n);
            const auto bd = random_vec<double>(rng, n);
            CHECK(kernels::dot(ad.data(), bd.data(), n) ==
                  doctest::Approx(kernels::scalar::dot(ad.data(), bd.data(), n))
                      .epsilon(1e-12));

            CHECK(kernels::squared_euclidean(ad.data(), bd.data(), n) ==
                  doctest::Approx(
                      kernels::scalar::squared_euclidean(ad.data(), bd.data(), n))
                      .epsilon(1e-12));

            auto y1 = random_vec<float>(rng, n);
            auto y2 = y1;
            const float alpha = static_cast<float>(uniform01(rng) - 0.5);
            kernels::scalar::axpy(alpha, af.data(), y1.data(), n);
            kernels::axpy(alpha, af.data(), y2.data(), n);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(y2[i] == doctest::Approx(y1[i]).epsilon(1e-4));
            }
        }
    }
}

TEST_CASE("avx2 variant agrees with scalar when present") {
    if (!kernels::avx2::compiled_in() || !__builtin_cpu_supports("avx2")) {
        return;  // nothing to compare on this machine
    }
    std::mt19937_64 rng(7);
    for (const std::size_t n : {5u, 32u, 33u, 127u}) {
        const auto a = random_vec<double>(rng, n);
        const auto b = random_vec<double>(rng, n);
        CHECK(kernels::avx2::dot(a.data(), b.data(), n) ==
              doctest::Approx(kernels::scalar::dot(a.data(), b.data(), n))
                  .epsilon(1e-12));
        CHECK(kernels::avx2::squared_euclidean(a.data(), b.data(), n) ==
              doctest::Approx(kernels::scalar::squared_euclidean(a.data(), b.data(), n))
                  .epsilon(1e-12));
    }
}
