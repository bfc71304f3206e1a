#pragma once
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

namespace cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// INI file plus "section.key=value" overrides; every lookup is recorded so the effective
// configuration (defaults included) can be hashed and re-emitted
class Config {
 public:
  static Config load(const std::optional<std::filesystem::path>& file, const std::vector<std::string>& sets);

  int get_int(const std::string& key, int def);
  double get_double(const std::string& key, double def);
  bool get_bool(const std::string& key, bool def);
  std::string get_string(const std::string& key, const std::string& def);
  std::vector<std::string> get_list(const std::string& key, const std::string& def);

  // keys present in the file/overrides under `section` that were never read
  void reject_unknown(const std::string& section) const;
  std::string canonical(const std::string& command) const;
  std::string hash(const std::string& command) const;
  void write_effective(const std::filesystem::path& p) const;

 private:
  boost::property_tree::ptree tree_;
  std::map<std::string, std::string> used_;
  std::optional<std::string> raw(const std::string& key) const;
};

std::filesystem::path output_dir(Config& cfg, const std::optional<std::string>& flag);

}  // namespace cli
