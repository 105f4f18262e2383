// Copyright 2026 The sinecrit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "sinecrit/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <iterator>
#include <json.hpp>
#include <sstream>

#include "sinecrit/error.hpp"

namespace sinecrit::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string hex(const unsigned char* data, unsigned int len) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kDigits[data[i] >> 4]);
    out.push_back(kDigits[data[i] & 0xf]);
  }
  return out;
}

ordered_json identity(const RunManifest& m) {
  ordered_json j;
  j["subcommand"] = m.subcommand;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : m.parameters) params[k] = v;
  j["parameters"] = params;
  j["seed"] = m.seed ? ordered_json(*m.seed) : ordered_json(nullptr);
  j["version"] = m.version;
  return j;
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256: digest failed");
  return hex(md.data(), len);
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("sha256: cannot read " + path.string());
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return sha256_hex(data);
}

std::string RunManifest::digest() const { return sha256_hex(identity(*this).dump()); }

std::string RunManifest::to_json() const {
  ordered_json j = identity(*this);
  j["digest"] = digest();
  j["workers"] = workers;
  j["wall_clock_seconds"] = wall_clock_seconds;
  ordered_json outs = ordered_json::object();
  for (const auto& [k, v] : outputs) outs[k] = v;
  j["outputs"] = outs;
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("manifest: ") + e.what());
  }
  try {
    RunManifest m;
    m.subcommand = j.at("subcommand").get<std::string>();
    for (const auto& [k, v] : j.at("parameters").items()) m.parameters.emplace_back(k, v.get<std::string>());
    if (!j.at("seed").is_null()) m.seed = j.at("seed").get<std::uint64_t>();
    m.version = j.at("version").get<std::string>();
    if (j.contains("workers")) m.workers = j["workers"].get<unsigned>();
    if (j.contains("wall_clock_seconds")) m.wall_clock_seconds = j["wall_clock_seconds"].get<double>();
    if (j.contains("outputs"))
      for (const auto& [k, v] : j["outputs"].items()) m.outputs[k] = v.get<std::string>();
    if (j.contains("digest") && j["digest"].get<std::string>() != m.digest())
      throw InputError("manifest: digest does not match its contents");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("manifest: malformed field: ") + e.what());
  }
}

RunManifest RunManifest::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("manifest: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

void RunManifest::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  out << to_json();
  if (!out) throw InputError("manifest: cannot write " + path.string());
}

}  // namespace sinecrit::cli
