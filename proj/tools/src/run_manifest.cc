// Copyright 2026 The Trojan Drive Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trojan_drive/tools/run_manifest.h"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>

#include "trojan_drive/error.h"
#include "trojan_drive/text_io.h"

namespace trojan_drive::tools {
namespace {

using DigestContext =
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)>;

std::string ToHex(const unsigned char* data, unsigned int size) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * size);
  for (unsigned int i = 0; i < size; ++i) {
    hex.push_back(kDigits[data[i] >> 4]);
    hex.push_back(kDigits[data[i] & 0xF]);
  }
  return hex;
}

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw Error("could not initialise SHA-256");
    }
  }

  void Update(const void* data, std::size_t size) {
    if (EVP_DigestUpdate(ctx_.get(), data, size) != 1) {
      throw Error("SHA-256 update failed");
    }
  }

  std::string HexDigest() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> out{};
    unsigned int size = 0;
    if (EVP_DigestFinal_ex(ctx_.get(), out.data(), &size) != 1) {
      throw Error("SHA-256 finalisation failed");
    }
    return ToHex(out.data(), size);
  }

 private:
  DigestContext ctx_;
};

}  // namespace

std::string Sha256Hex(std::string_view bytes) {
  Sha256 sha;
  sha.Update(bytes.data(), bytes.size());
  return sha.HexDigest();
}

std::string Sha256File(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  Sha256 sha;
  std::array<char, 1 << 16> buffer{};
  while (in) {
    in.read(buffer.data(), buffer.size());
    sha.Update(buffer.data(), static_cast<std::size_t>(in.gcount()));
  }
  if (in.bad()) throw IoError("read failed for " + path.string());
  return sha.HexDigest();
}

FileDigest DigestFile(const std::filesystem::path& path) {
  std::error_code ec;
  const std::uintmax_t bytes = std::filesystem::file_size(path, ec);
  if (ec) throw IoError("cannot stat " + path.string());
  return {.path = path.string(), .bytes = bytes, .sha256 = Sha256File(path)};
}

nlohmann::json ManifestToJson(const RunManifest& manifest) {
  auto files = [](const std::vector<FileDigest>& digests) {
    nlohmann::json list = nlohmann::json::array();
    for (const FileDigest& d : digests) {
      list.push_back({{"path", d.path}, {"bytes", d.bytes}, {"sha256", d.sha256}});
    }
    return list;
  };
  return {{"tool", "trojan_drive"},
          {"tool_version", manifest.tool_version},
          {"subcommand", manifest.subcommand},
          {"config", manifest.config},
          {"inputs", files(manifest.inputs)},
          {"outputs", files(manifest.outputs)},
          {"wall_clock_seconds", manifest.wall_clock_seconds}};
}

void WriteRunManifest(const RunManifest& manifest,
                      const std::filesystem::path& path) {
  WriteTextFile(path, ManifestToJson(manifest).dump(2) + "\n");
}

}  // namespace trojan_drive::tools
