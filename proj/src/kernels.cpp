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
#include "lexiphylo/kernels.hpp"

namespace lexiphylo::kernels {

namespace scalar {

float dot(const float* a, const float* b, std::size_t n) noexcept {
    float s = 0.0f;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double dot(const double* a, const double* b, std::size_t n) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(float alpha, const float* x, float* y, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

float squared_euclidean(const float* a, const float* b, std::size_t n) noexcept {
    float s = 0.0f;
    for (std::size_t i = 0; i < n; ++i) {
        const float d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double squared_euclidean(const double* a, const double* b, std::size_t n) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace scalar

namespace {

struct Dispatch {
    float (*dot_f32)(const float*, const float*, std::size_t) noexcept;
    double (*dot_f64)(const double*, const double*, std::size_t) noexcept;
    void (*axpy_f32)(float, const float*, float*, std::size_t) noexcept;
    void (*axpy_f64)(double, const double*, double*, std::size_t) noexcept;
    float (*sqeuc_f32)(const float*, const float*, std::size_t) noexcept;
    double (*sqeuc_f64)(const double*, const double*, std::size_t) noexcept;
    const char* name;
};

Dispatch select_backend() noexcept {
    if (avx2::compiled_in() && __builtin_cpu_supports("avx2")) {
        return {&avx2::dot, &avx2::dot, &avx2::axpy, &avx2::axpy,
                &avx2::squared_euclidean, &avx2::squared_euclidean, "avx2"};
    }
    return {&scalar::dot, &scalar::dot, &scalar::axpy, &scalar::axpy,
            &scalar::squared_euclidean, &scalar::squared_euclidean, "scalar"};
}

const Dispatch& active() noexcept {
    static const Dispatch d = select_backend();
    return d;
}

}  // namespace

float dot(const float* a, const float* b, std::size_t n) noexcept {
    return active().dot_f32(a, b, n);
}
double dot(const double* a, const double* b, std::size_t n) noexcept {
    return active().dot_f64(a, b, n);
}
void axpy(float alpha, const float* x, float* y, std::size_t n) noexcept {
    active().axpy_f32(alpha, x, y, n);
}
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept {
    active().axpy_f64(alpha, x, y, n);
}
float squared_euclidean(const float* a, const float* b, std::size_t n) noexcept {
    return active().sqeuc_f32(a, b, n);
}
double squared_euclidean(const double* a, const double* b, std::size_t n) noexcept {
    return active().sqeuc_f64(a, b, n);
}

const char* backend() noexcept { return active().name; }

}  // namespace lexiphylo::kernels
