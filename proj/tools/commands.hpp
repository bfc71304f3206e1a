#pragma once
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace cli {

enum Exit { kOk = 0, kViolation = 1, kConfigError = 2, kNumericalFailure = 3 };

struct Context {
  Config cfg;
  std::optional<std::string> out_flag;
};

int cmd_spectrum(Context& ctx);
int cmd_certify(Context& ctx);
int cmd_dissipativity(Context& ctx);
int cmd_nonhom(Context& ctx);
int cmd_evolve(Context& ctx);
int cmd_threshold(Context& ctx);
int cmd_report(const std::vector<std::string>& paths, const std::optional<std::string>& out_flag);

}  // namespace cli
