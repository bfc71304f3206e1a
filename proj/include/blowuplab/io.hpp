#pragma once
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "blowuplab/evolution.hpp"
#include "blowuplab/spectral_scan.hpp"

namespace blowuplab {

using json = nlohmann::ordered_json;

std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t v);
const char* tool_version();

struct OutputMeta {
  std::string command;
  std::string config_hash;
  json to_json() const;
};

// RFC-4180 quoting; every row gets trailing config_hash and version columns
std::string csv_escape(const std::string& s);
void write_csv(const std::filesystem::path& p, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows, const OutputMeta& meta);
void write_json(const std::filesystem::path& p, json doc, const OutputMeta& meta);
json read_json(const std::filesystem::path& p);

std::string fmt(double v);  // shortest round-trip representation
json to_json(cplx z);
json to_json(const Classified& c);
json to_json(const ScanReport& r);
json to_json(const TrajSample& s);

void write_trajectory_csv(const std::filesystem::path& p, const Trajectory& t, const OutputMeta& meta);

// flat little-endian f64 values (psi1 then psi2) plus a JSON sidecar <path>.json
constexpr int kCheckpointVersion = 1;
void write_checkpoint(const std::filesystem::path& p, const RadialState& s, const OutputMeta& meta);
RadialState read_checkpoint(const std::filesystem::path& p);

}  // namespace blowuplab
