#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "ltss/activation.hpp"
#include "ltss/kexpr.hpp"

namespace ltss::io {

// Instance documents are single JSON objects:
//   {"n": 5, "edges": [[0,1],...], "thresholds": [...], "lambda": 2,
//    "budget": 1, "alpha": 3, "targets": [0,4], "kexpr": "..."}
// budget, alpha, targets and kexpr are optional.

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedInstance {
  Instance instance;
  std::optional<kexpr::KExpr> expression;
};

// Throws InputError on schema violations, invalid instances, unparsable
// kexpr text, or a kexpr whose evaluation differs from (n, edges).
LoadedInstance instance_from_json(const nlohmann::json& doc);
LoadedInstance load_instance(const std::filesystem::path& path);

nlohmann::json to_json(const Instance& instance, const std::optional<kexpr::KExpr>& expression = std::nullopt);

}  // namespace ltss::io
