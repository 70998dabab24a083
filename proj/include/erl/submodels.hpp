#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "erl/distribution.hpp"

namespace erl {

enum class Model { ERLD, LRLD, ExpRLD, BLD, BRD, RLD, ExpLD, Rayleigh };

/// Parameter slots, in ErlParams::to_array order.
enum class Param { a = 0, b = 1, theta = 2, lambda = 3, beta = 4 };

inline constexpr std::array<std::string_view, 5> kParamNames = {"a", "b", "theta", "lambda", "beta"};

/// A named member of the family: ERL with some parameters pinned to constants.
class ModelSpec {
 public:
  explicit ModelSpec(Model model);

  Model model() const { return model_; }
  std::string_view name() const;

  /// Pinned value per slot; empty for free slots.
  const std::array<std::optional<double>, 5>& constraints() const { return fixed_; }

  bool is_free(Param p) const { return !fixed_[static_cast<int>(p)].has_value(); }
  std::size_t free_count() const;
  /// Free slots in to_array order.
  std::vector<Param> free_params() const;

  /// Merges the constants with the free values. Throws DomainError on a
  /// length mismatch or a non-positive value.
  ErlParams embed(std::span<const double> free_values) const;

  /// Free values of a full parameter vector, in free_params order.
  std::vector<double> extract(const ErlParams& p) const;

  bool operator==(const ModelSpec& o) const { return model_ == o.model_; }

 private:
  Model model_;
  std::array<std::optional<double>, 5> fixed_;
};

/// Case-insensitive lookup; throws DomainError for unknown names.
ModelSpec parse_model(std::string_view name);

/// All eight registered specs, ERLD first.
std::vector<ModelSpec> all_models();

/// The seven models of the comparison table (ERLD and its six sub-models).
std::vector<ModelSpec> comparison_models();

}  // namespace erl
