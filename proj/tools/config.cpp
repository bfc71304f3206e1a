#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>

#include "blowuplab/io.hpp"

namespace cli {

Config Config::load(const std::optional<std::filesystem::path>& file, const std::vector<std::string>& sets) {
  Config c;
  if (file) {
    try {
      boost::property_tree::ini_parser::read_ini(file->string(), c.tree_);
    } catch (const boost::property_tree::ini_parser_error& e) {
      throw ConfigError(std::string("config parse error: ") + e.what());
    }
  }
  for (const auto& s : sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects section.key=value, got '" + s + "'");
    std::string key = boost::trim_copy(s.substr(0, eq)), val = boost::trim_copy(s.substr(eq + 1));
    if (key.find('.') == std::string::npos) throw ConfigError("--set key needs a section: '" + key + "'");
    c.tree_.put(key, val);
  }
  return c;
}

std::optional<std::string> Config::raw(const std::string& key) const {
  auto v = tree_.get_optional<std::string>(key);
  if (!v) return std::nullopt;
  return boost::trim_copy(*v);
}

int Config::get_int(const std::string& key, int def) {
  auto r = raw(key);
  int v = def;
  if (r) {
    auto res = std::from_chars(r->data(), r->data() + r->size(), v);
    if (res.ec != std::errc() || res.ptr != r->data() + r->size())
      throw ConfigError(key + ": expected an integer, got '" + *r + "'");
  }
  used_[key] = std::to_string(v);
  return v;
}

double Config::get_double(const std::string& key, double def) {
  auto r = raw(key);
  double v = def;
  if (r) {
    char* end = nullptr;
    v = std::strtod(r->c_str(), &end);
    if (r->empty() || *end != '\0') throw ConfigError(key + ": expected a number, got '" + *r + "'");
  }
  used_[key] = blowuplab::fmt(v);
  return v;
}

bool Config::get_bool(const std::string& key, bool def) {
  auto r = raw(key);
  bool v = def;
  if (r) {
    std::string s = boost::to_lower_copy(*r);
    if (s == "true" || s == "1" || s == "yes" || s == "on")
      v = true;
    else if (s == "false" || s == "0" || s == "no" || s == "off")
      v = false;
    else
      throw ConfigError(key + ": expected a boolean, got '" + *r + "'");
  }
  used_[key] = v ? "true" : "false";
  return v;
}

std::string Config::get_string(const std::string& key, const std::string& def) {
  auto r = raw(key);
  std::string v = r ? *r : def;
  used_[key] = v;
  return v;
}

std::vector<std::string> Config::get_list(const std::string& key, const std::string& def) {
  std::string s = get_string(key, def);
  std::vector<std::string> parts, out;
  boost::split(parts, s, boost::is_any_of(";"));
  for (auto& p : parts) {
    boost::trim(p);
    if (!p.empty()) out.push_back(p);
  }
  return out;
}

void Config::reject_unknown(const std::string& section) const {
  auto sec = tree_.get_child_optional(section);
  if (!sec) return;
  std::vector<std::string> bad;
  for (const auto& [k, v] : *sec)
    if (!used_.count(section + "." + k)) bad.push_back(section + "." + k);
  if (!bad.empty()) throw ConfigError("unknown config key(s): " + boost::join(bad, ", "));
}

std::string Config::canonical(const std::string& command) const {
  std::ostringstream os;
  os << "command=" << command << '\n';
  for (const auto& [k, v] : used_)
    if (k != "output.dir") os << k << '=' << v << '\n';
  return os.str();
}

std::string Config::hash(const std::string& command) const {
  return blowuplab::hex64(blowuplab::fnv1a64(canonical(command)));
}

void Config::write_effective(const std::filesystem::path& p) const {
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> bysec;
  for (const auto& [k, v] : used_) {
    auto dot = k.find('.');
    bysec[k.substr(0, dot)].push_back({k.substr(dot + 1), v});
  }
  std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p);
  for (const auto& [sec, kv] : bysec) {
    if (sec == "output") continue;
    f << '[' << sec << "]\n";
    for (const auto& [k, v] : kv) f << k << " = " << v << '\n';
    f << '\n';
  }
}

std::filesystem::path output_dir(Config& cfg, const std::optional<std::string>& flag) {
  std::string dir = cfg.get_string("output.dir", "out");
  if (const char* env = std::getenv("BLOWUPLAB_OUT"); env && *env) dir = env;
  if (flag) dir = *flag;
  return dir;
}

}  // namespace cli
