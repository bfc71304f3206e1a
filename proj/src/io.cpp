#include "blowuplab/io.hpp"
#include "blowuplab/errors.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

namespace blowuplab {

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)v);
  return buf;
}

const char* tool_version() { return BLOWUPLAB_VERSION; }

json OutputMeta::to_json() const {
  return json{{"tool", "blowuplab"}, {"version", tool_version()}, {"command", command}, {"config_hash", config_hash}};
}

std::string fmt(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

static void ensure_parent(const std::filesystem::path& p) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
}

void write_csv(const std::filesystem::path& p, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows, const OutputMeta& meta) {
  ensure_parent(p);
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot write " + p.string());
  auto line = [&](const std::vector<std::string>& cells, const std::string& a, const std::string& b) {
    for (const auto& c : cells) f << csv_escape(c) << ',';
    f << csv_escape(a) << ',' << csv_escape(b) << "\r\n";
  };
  line(header, "config_hash", "version");
  for (const auto& r : rows) line(r, meta.config_hash, tool_version());
}

void write_json(const std::filesystem::path& p, json doc, const OutputMeta& meta) {
  ensure_parent(p);
  json out;
  out["meta"] = meta.to_json();
  for (auto& [k, v] : doc.items()) out[k] = v;
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot write " + p.string());
  f << out.dump(2) << '\n';
}

json read_json(const std::filesystem::path& p) {
  std::ifstream f(p);
  if (!f) throw ArgumentError("cannot read " + p.string());
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw ArgumentError(p.string() + ": " + e.what());
  }
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const Classified& c) {
  return json{{"kind", to_string(c.kind)},
              {"ell", c.ell},
              {"lambda", to_json(c.lambda)},
              {"label", to_string(c.label)},
              {"ratio_tail", to_json(c.evidence.ratio_tail)},
              {"minimal_ratio", to_json(c.evidence.minimal_ratio)},
              {"polynomial_termination", c.evidence.polynomial_termination},
              {"casoratian_mismatch", c.evidence.casoratian_mismatch},
              {"match_index", c.evidence.match_index}};
}

json to_json(const ScanReport& r) {
  json ev = json::array();
  for (const auto& e : r.eigenvalues()) ev.push_back(to_json(e));
  return json{{"kind", to_string(r.kind)},
              {"ell_max", r.ell_max},
              {"re_range", {r.re_min, r.re_max}},
              {"im_range", {r.im_min, r.im_max}},
              {"step", r.step},
              {"n_cap", r.n_cap},
              {"points", r.entries.size()},
              {"eigenvalue_count", r.count(Classification::Eigenvalue)},
              {"undecided_count", r.count(Classification::Undecided)},
              {"eigenvalues", ev}};
}

json to_json(const TrajSample& s) {
  return json{{"tau", s.tau},
              {"norm", s.norm},
              {"alpha_h", s.modes.alpha_h},
              {"alpha_g0", s.modes.alpha_g0},
              {"alpha_q", s.modes.alpha_q},
              {"remainder", s.modes.remainder_norm},
              {"sup_origin", s.sup_origin},
              {"dist_static", s.dist_static},
              {"drift", s.drift}};
}

void write_trajectory_csv(const std::filesystem::path& p, const Trajectory& t, const OutputMeta& meta) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : t.samples)
    rows.push_back({fmt(s.tau), fmt(s.norm), fmt(s.modes.alpha_h), fmt(s.modes.alpha_g0), fmt(s.sup_origin),
                    fmt(s.dist_static), fmt(s.drift)});
  write_csv(p, {"tau", "norm", "alpha_h", "alpha_g0", "sup_origin", "dist_static", "drift"}, rows, meta);
}

void write_checkpoint(const std::filesystem::path& p, const RadialState& s, const OutputMeta& meta) {
  static_assert(std::endian::native == std::endian::little, "checkpoint writer assumes little-endian");
  if (s.psi1.size() != s.psi2.size()) throw ArgumentError("inconsistent state");
  ensure_parent(p);
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot write " + p.string());
  f.write(reinterpret_cast<const char*>(s.psi1.data()), s.psi1.size() * sizeof(double));
  f.write(reinterpret_cast<const char*>(s.psi2.data()), s.psi2.size() * sizeof(double));
  json side{{"version", kCheckpointVersion},
            {"format", "f64le"},
            {"ell", s.ell},
            {"nodes", s.psi1.size()},
            {"tau", s.tau},
            {"layout", "psi1 then psi2, increasing rho"}};
  write_json(p.string() + ".json", side, meta);
}

RadialState read_checkpoint(const std::filesystem::path& p) {
  json side = read_json(p.string() + ".json");
  if (!side.contains("version")) throw ArgumentError("checkpoint sidecar lacks a version field");
  if (side["version"].get<int>() != kCheckpointVersion)
    throw ArgumentError("unsupported checkpoint version " + side["version"].dump());
  RadialState s;
  s.ell = side.at("ell").get<int>();
  s.tau = side.at("tau").get<double>();
  size_t n = side.at("nodes").get<size_t>();
  std::ifstream f(p, std::ios::binary);
  if (!f) throw ArgumentError("cannot read " + p.string());
  s.psi1.resize(n);
  s.psi2.resize(n);
  f.read(reinterpret_cast<char*>(s.psi1.data()), n * sizeof(double));
  f.read(reinterpret_cast<char*>(s.psi2.data()), n * sizeof(double));
  if (!f) throw ArgumentError("checkpoint " + p.string() + " is truncated");
  return s;
}

}  // namespace blowuplab
