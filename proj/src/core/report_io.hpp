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

// Report serialization. Output is locale-independent: '.' decimal separator,
// ratios with six decimals, fixed column order, LF line endings.

#ifndef CROWDSENSE_CORE_REPORT_IO_HPP_
#define CROWDSENSE_CORE_REPORT_IO_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "core/simulator.hpp"
#include "core/trace_ingest.hpp"

namespace crowdsense {

inline constexpr std::string_view kArtifactVersion = "1.0.0";

inline constexpr std::string_view kReportHeader =
    "round,start_s,end_s,algorithm,bootstrap,n,k,seed,observed_edges,truth_edges,coverage_ratio";
inline constexpr std::string_view kOracleHeader =
    "round,n,oracle_edges,random_edges,greedy_edges,hcontext_edges";
inline constexpr std::string_view kSweepHeader =
    "point,ts_s,round,start_s,end_s,algorithm,bootstrap,n,k,seed,observed_edges,truth_edges,"
    "coverage_ratio";

std::string FormatRatio(double value);

std::string ReportCsv(const RunResult& result);
std::string OracleCsv(const std::vector<OracleRow>& rows);
std::string SweepCsv(const std::vector<SweepPoint>& points);

// Lower-case hex SHA-256.
std::string Sha256Hex(std::string_view bytes);

// Pretty-printed JSON with sorted keys. `inputs` maps a file name to its
// SHA-256 digest.
std::string RunManifestJson(std::string_view command, const ResolvedConfig& resolved,
                            std::int64_t truncated_rounds,
                            const std::map<std::string, std::string>& inputs);
std::string SweepManifestJson(const std::vector<SweepPoint>& points,
                              const std::map<std::string, std::string>& inputs);
std::string GenerateManifestJson(const SynthParams& params, std::uint64_t seed,
                                 const std::map<std::string, std::string>& outputs);

std::string ReadFile(const std::filesystem::path& path);
// Writes bytes verbatim; throws IoError.
void WriteFile(const std::filesystem::path& path, std::string_view bytes);

}  // namespace crowdsense

#endif  // CROWDSENSE_CORE_REPORT_IO_HPP_
