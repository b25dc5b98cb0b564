// Copyright 2026 The crowdsense Authors
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

#include "core/report_io.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include "core/errors.hpp"
#include "json.hpp"

namespace crowdsense {
namespace {

using nlohmann::json;

void AppendRound(std::string& out, const RunResult& result, const RoundReport& r) {
  out += std::to_string(r.round_index) + ',' + std::to_string(r.start_s) + ',' +
         std::to_string(r.end_s) + ',' + std::string(ToString(r.algorithm)) + ',' +
         std::string(ToString(r.bootstrap)) + ',' + std::to_string(result.resolved.n) + ',' +
         std::to_string(result.resolved.k) + ',' + std::to_string(r.seed) + ',' +
         std::to_string(r.observed_edges) + ',' + std::to_string(r.truth_edges) + ',' +
         FormatRatio(r.coverage_ratio) + '\n';
}

json ConfigJson(const ResolvedConfig& resolved) {
  const SimConfig& c = resolved.config;
  json budget;
  if (const auto* count = std::get_if<BudgetCount>(&c.budget)) {
    budget = {{"count", count->count}};
  } else {
    budget = {{"fraction", std::get<BudgetFraction>(c.budget).fraction}};
  }
  return {
      {"algorithm", ToString(c.algorithm)},
      {"bootstrap", ToString(c.bootstrap)},
      {"budget", budget},
      {"k", resolved.k},
      {"k_fraction", c.k_fraction},
      {"n", resolved.n},
      {"rounds", c.rounds},
      {"seed", c.seed},
      {"start_time_s", c.start_time_s},
      {"td_seconds", c.td_seconds},
      {"ts_seconds", c.ts_seconds},
  };
}

}  // namespace

std::string FormatRatio(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed, 6);
  return std::string(buf.data(), ptr);
}

std::string ReportCsv(const RunResult& result) {
  std::string out(kReportHeader);
  out += '\n';
  for (const RoundReport& r : result.rounds) AppendRound(out, result, r);
  return out;
}

std::string OracleCsv(const std::vector<OracleRow>& rows) {
  std::string out(kOracleHeader);
  out += '\n';
  for (const OracleRow& r : rows) {
    out += std::to_string(r.round_index) + ',' + std::to_string(r.n) + ',' +
           std::to_string(r.oracle_edges) + ',' + std::to_string(r.random_edges) + ',' +
           std::to_string(r.greedy_edges) + ',' + std::to_string(r.hcontext_edges) + '\n';
  }
  return out;
}

std::string SweepCsv(const std::vector<SweepPoint>& points) {
  std::string out(kSweepHeader);
  out += '\n';
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (const RoundReport& r : points[i].result.rounds) {
      out += std::to_string(i) + ',' + std::to_string(points[i].config.ts_seconds) + ',';
      AppendRound(out, points[i].result, r);
    }
  }
  return out;
}

std::string Sha256Hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw IoError("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string RunManifestJson(std::string_view command, const ResolvedConfig& resolved,
                            std::int64_t truncated_rounds,
                            const std::map<std::string, std::string>& inputs) {
  json manifest = {
      {"artifact_version", kArtifactVersion},
      {"command", command},
      {"config", ConfigJson(resolved)},
      {"inputs", inputs},
      {"truncated_rounds", truncated_rounds},
  };
  return manifest.dump(2) + '\n';
}

std::string SweepManifestJson(const std::vector<SweepPoint>& points,
                              const std::map<std::string, std::string>& inputs) {
  json configs = json::array();
  for (const SweepPoint& p : points) {
    json c = ConfigJson(p.result.resolved);
    c["truncated_rounds"] = p.result.truncated_rounds;
    configs.push_back(std::move(c));
  }
  json manifest = {
      {"artifact_version", kArtifactVersion},
      {"command", "sweep"},
      {"inputs", inputs},
      {"points", configs},
  };
  return manifest.dump(2) + '\n';
}

std::string GenerateManifestJson(const SynthParams& p, std::uint64_t seed,
                                 const std::map<std::string, std::string>& outputs) {
  json manifest = {
      {"artifact_version", kArtifactVersion},
      {"command", "generate"},
      {"outputs", outputs},
      {"params",
       {
           {"friendship_within_group", p.friendship_within_group},
           {"interests_per_device", p.interests_per_device},
           {"n_external", p.n_external},
           {"n_groups", p.n_groups},
           {"n_internal", p.n_internal},
           {"n_locations", p.n_locations},
           {"p_detect", p.p_detect},
           {"p_move", p.p_move},
           {"steps", p.steps},
           {"tau_s", p.tau_s},
       }},
      {"seed", seed},
      {"tau_s", p.tau_s},
  };
  return manifest.dump(2) + '\n';
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void WriteFile(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace crowdsense
