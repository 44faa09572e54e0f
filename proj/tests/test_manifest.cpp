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

#include <cstdio>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "lexiphylo/io_util.hpp"
#include "lexiphylo/manifest.hpp"

using namespace lexiphylo;

TEST_CASE("sha256 matches the published test vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
    // multi-block input (> 64 bytes)
    CHECK(sha256_hex(std::string(1000, 'a')) ==
          "41edece42d63e8d9bf515a9ba6932e1c20cbc9f5a5d134645adb5db1b9737ea3");
}

TEST_CASE("manifest records names, hashes, config and seed") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path();
    const auto input = (dir / "lexiphylo_manifest_in.txt").string();
    const auto output = (dir / "lexiphylo_manifest_out.txt").string();
    const auto manifest_path = (dir / "lexiphylo_manifest.json").string();
    {
        auto f = open_output(input);
        f << "hello\n";
    }
    {
        auto f = open_output(output);
        f << "world\n";
    }

    Manifest manifest("stage-name", 99);
    manifest.add_input(input);
    manifest.add_output(output);
    nlohmann::json config;
    config["alpha"] = 1.5;
    manifest.set_config(config);
    manifest.save(manifest_path);

    const auto j = nlohmann::json::parse(read_file(manifest_path));
    CHECK(j["stage"] == "stage-name");
    CHECK(j["seed"] == 99);
    CHECK(j["config"]["alpha"] == 1.5);
    // paths are stored as bare file names so reruns elsewhere compare equal
    CHECK(j["inputs"].contains("lexiphylo_manifest_in.txt"));
    CHECK(j["inputs"]["lexiphylo_manifest_in.txt"] == sha256_hex("hello\n"));
    CHECK(j["outputs"]["lexiphylo_manifest_out.txt"] == sha256_hex("world\n"));

    std::remove(input.c_str());
    std::remove(output.c_str());
    std::remove(manifest_path.c_str());
}
