#include "erl/submodels.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "erl/error.hpp"

namespace erl {
namespace {

struct Entry {
  Model model;
  std::string_view name;
  std::array<std::optional<double>, 5> fixed;  // a, b, theta, lambda, beta
};

// a=1: Lehmann type II; b=1: exponentiated; beta=1: beta Lomax;
// lambda=1: beta Rayleigh; a=b=1: parent; b=beta=1: exponential Lomax;
// a=b=lambda=theta=1: Rayleigh.
constexpr double kOne = 1.0;
const std::array<Entry, 8> kRegistry = {{
    {Model::ERLD, "ERLD", {}},
    {Model::LRLD, "LRLD", {kOne, std::nullopt, std::nullopt, std::nullopt, std::nullopt}},
    {Model::ExpRLD, "ExpRLD", {std::nullopt, kOne, std::nullopt, std::nullopt, std::nullopt}},
    {Model::BLD, "BLD", {std::nullopt, std::nullopt, std::nullopt, std::nullopt, kOne}},
    {Model::BRD, "BRD", {std::nullopt, std::nullopt, std::nullopt, kOne, std::nullopt}},
    {Model::RLD, "RLD", {kOne, kOne, std::nullopt, std::nullopt, std::nullopt}},
    {Model::ExpLD, "ExpLD", {std::nullopt, kOne, std::nullopt, std::nullopt, kOne}},
    {Model::Rayleigh, "Rayleigh", {kOne, kOne, kOne, kOne, std::nullopt}},
}};

const Entry& entry(Model m) {
  for (const auto& e : kRegistry) {
    if (e.model == m) return e;
  }
  throw DomainError("unknown model");
}

bool iequals(std::string_view lhs, std::string_view rhs) {
  return lhs.size() == rhs.size() &&
         std::equal(lhs.begin(), lhs.end(), rhs.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

ModelSpec::ModelSpec(Model model) : model_(model), fixed_(entry(model).fixed) {}

std::string_view ModelSpec::name() const { return entry(model_).name; }

std::size_t ModelSpec::free_count() const {
  return static_cast<std::size_t>(std::count_if(fixed_.begin(), fixed_.end(), [](const auto& f) { return !f; }));
}

std::vector<Param> ModelSpec::free_params() const {
  std::vector<Param> out;
  for (int i = 0; i < 5; ++i) {
    if (!fixed_[i]) out.push_back(static_cast<Param>(i));
  }
  return out;
}

ErlParams ModelSpec::embed(std::span<const double> free_values) const {
  if (free_values.size() != free_count()) {
    throw DomainError(std::string(name()) + " expects " + std::to_string(free_count()) +
                      " free values, got " + std::to_string(free_values.size()));
  }
  std::array<double, 5> full{};
  std::size_t next = 0;
  for (int i = 0; i < 5; ++i) {
    if (fixed_[i]) {
      full[i] = *fixed_[i];
    } else {
      const double v = free_values[next++];
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(kParamNames[i]) + " must be positive, got " + std::to_string(v));
      }
      full[i] = v;
    }
  }
  return ErlParams::from_array(full);
}

std::vector<double> ModelSpec::extract(const ErlParams& p) const {
  const auto full = p.to_array();
  std::vector<double> out;
  for (int i = 0; i < 5; ++i) {
    if (!fixed_[i]) out.push_back(full[i]);
  }
  return out;
}

ModelSpec parse_model(std::string_view name) {
  for (const auto& e : kRegistry) {
    if (iequals(e.name, name)) return ModelSpec(e.model);
  }
  throw DomainError("unknown model name '" + std::string(name) + "'");
}

std::vector<ModelSpec> all_models() {
  std::vector<ModelSpec> out;
  for (const auto& e : kRegistry) out.emplace_back(e.model);
  return out;
}

std::vector<ModelSpec> comparison_models() {
  return {ModelSpec(Model::ERLD), ModelSpec(Model::ExpLD), ModelSpec(Model::LRLD), ModelSpec(Model::BRD),
          ModelSpec(Model::RLD),  ModelSpec(Model::ExpRLD), ModelSpec(Model::BLD)};
}

}  // namespace erl
