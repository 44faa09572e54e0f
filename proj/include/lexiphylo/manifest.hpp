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

#include <map>
#include <string>

#include <json.hpp>

namespace lexiphylo {

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::string& path);

/// Stage provenance written next to each artifact: input file hashes, the
/// configuration snapshot and the seed. Paths are recorded as plain file
/// names so reruns in different directories stay byte-identical.
class Manifest {
  public:
    Manifest(std::string stage, std::uint64_t seed);

    void add_input(const std::string& path);
    void add_output(const std::string& path);
    void set_config(nlohmann::json config);

    void save(const std::string& path) const;

  private:
    std::string stage_;
    std::uint64_t seed_;
    std::map<std::string, std::string> inputs_;   // name -> sha256
    std::map<std::string, std::string> outputs_;  // name -> sha256
    nlohmann::json config_;
};

}  // namespace lexiphylo
