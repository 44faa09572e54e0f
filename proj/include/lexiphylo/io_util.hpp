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

#include <cstdint>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace lexiphylo {

std::vector<std::string_view> split_view(std::string_view s, char sep);

std::string lowercase(std::string_view s);
std::string uppercase(std::string_view s);
/// First character uppercased, the rest lowercased ("paris" -> "Paris").
std::string initial_upper(std::string_view s);

bool contains_alpha(std::string_view token);

/// Shortest decimal representation that round-trips through the same type.
std::string format_float(float v);
std::string format_float(double v);

std::ifstream open_input(const std::string& path);
std::ofstream open_output(const std::string& path);

/// Calls fn(line_number, line) for every line; line numbers start at 1.
void for_each_line(const std::string& path,
                   const std::function<void(std::size_t, std::string_view)>& fn);

std::string read_file(const std::string& path);

/// 64-bit seed mixer for deriving independent stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Deterministic uniform [0,1) from the top 53 bits; avoids the
/// implementation-defined std:: distributions so seeded runs reproduce
/// across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller, same portability reasoning.
double normal01(std::mt19937_64& rng);

/// Fisher-Yates with an explicit index draw, same portability reasoning.
template <typename T>
void shuffle_portable(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j =
            static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace lexiphylo
