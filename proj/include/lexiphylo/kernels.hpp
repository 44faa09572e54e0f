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
#pragma once

#include <cstddef>

/// Dense vector kernels behind the embedding trainer and distance code.
/// The scalar versions define the reference semantics; AVX2 variants are
/// selected once at startup when the CPU supports them and are
/// equivalence-tested against the scalar ones.
namespace lexiphylo::kernels {

namespace scalar {
float dot(const float* a, const float* b, std::size_t n) noexcept;
double dot(const double* a, const double* b, std::size_t n) noexcept;
void axpy(float alpha, const float* x, float* y, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
float squared_euclidean(const float* a, const float* b, std::size_t n) noexcept;
double squared_euclidean(const double* a, const double* b, std::size_t n) noexcept;
}  // namespace scalar

namespace avx2 {
bool compiled_in() noexcept;
float dot(const float* a, const float* b, std::size_t n) noexcept;
double dot(const double* a, const double* b, std::size_t n) noexcept;
void axpy(float alpha, const float* x, float* y, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
float squared_euclidean(const float* a, const float* b, std::size_t n) noexcept;
double squared_euclidean(const double* a, const double* b, std::size_t n) noexcept;
}  // namespace avx2

// Dispatched entry points; resolved once per process.
float dot(const float* a, const float* b, std::size_t n) noexcept;
double dot(const double* a, const double* b, std::size_t n) noexcept;
void axpy(float alpha, const float* x, float* y, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
float squared_euclidean(const float* a, const float* b, std::size_t n) noexcept;
double squared_euclidean(const double* a, const double* b, std::size_t n) noexcept;

/// Name of the active backend: "avx2" or "scalar".
const char* backend() noexcept;

}  // namespace lexiphylo::kernels
