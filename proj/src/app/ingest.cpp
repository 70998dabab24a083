#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "erl/app.hpp"
#include "erl/error.hpp"

namespace erl::app {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

Dataset parse_dataset(std::istream& in, const std::string& source_name) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    view = trim(view);
    if (view.empty()) continue;
    const auto value = parse_number(view);
    if (!value) {
      if (!seen_content) {
        // Header row.
        seen_content = true;
        continue;
      }
      throw InputError(source_name + ":" + std::to_string(line_no) + ": '" + std::string(view) +
                       "' is not a number");
    }
    if (!std::isfinite(*value)) {
      throw InputError(source_name + ":" + std::to_string(line_no) + ": value is not finite");
    }
    seen_content = true;
    values.push_back(*value);
  }
  if (values.empty()) throw InputError(source_name + ": no numeric rows");
  return Dataset(std::move(values));
}

Dataset ingest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  return parse_dataset(in, path);
}

ErlParams parse_params(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto value = parse_number(trim(item));
    if (!value) throw InputError("--params: '" + item + "' is not a number");
    v.push_back(*value);
  }
  if (v.size() != 5) throw InputError("--params expects five values a,b,theta,lambda,beta");
  try {
    return ErlParams(v[0], v[1], v[2], v[3], v[4]);
  } catch (const DomainError& e) {
    throw InputError(std::string("--params: ") + e.what());
  }
}

std::vector<ModelSpec> parse_models(const std::string& text) {
  std::vector<ModelSpec> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string_view name = trim(item);
    if (name.empty()) continue;
    try {
      out.push_back(parse_model(name));
    } catch (const DomainError& e) {
      throw InputError(std::string("--models: ") + e.what());
    }
  }
  if (out.empty()) throw InputError("--models: no model names given");
  return out;
}

}  // namespace erl::app
