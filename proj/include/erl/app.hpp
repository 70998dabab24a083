#pragma once

// Batch front end shared by the erlfit binary and the tests.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "erl/estimation.hpp"
#include "erl/gof.hpp"

namespace erl::app {

enum class Command { fit, compare, gof, sample, curves, moments };
enum class Format { json, csv };

/// Process exit status.
enum ExitCode : int { kOk = 0, kInputError = 1, kConvergenceFailure = 2, kNumericalError = 3 };

struct RunConfig {
  Command command = Command::fit;
  std::string input_path;
  std::vector<ModelSpec> models;
  std::optional<ErlParams> params;
  std::string output_path;  // empty: stdout
  std::uint64_t seed = 1;
  std::size_t sample_size = 1000;
  std::size_t starts = FitConfig{}.starts;
  Format format = Format::json;
};

/// Reads one value per line or a single-column CSV with an optional header
/// line. Throws InputError with the offending line number.
Dataset ingest(const std::string& path);
Dataset parse_dataset(std::istream& in, const std::string& source_name);

/// "a,b,theta,lambda,beta" -> ErlParams. Throws InputError.
ErlParams parse_params(const std::string& text);

/// Comma-separated model names. Throws InputError.
std::vector<ModelSpec> parse_models(const std::string& text);

nlohmann::json data_summary(const Dataset& data);

struct ModelRecord {
  FitResult fit;
  gof::CriteriaReport criteria;
  bool selected = false;
};

/// Fits every model; records come back in request order.
std::vector<ModelRecord> fit_models(const std::vector<ModelSpec>& models, const Dataset& data,
                                    const FitConfig& cfg);

/// Sorts ascending by AIC (stable) and flags the first record as selected.
void rank_by_aic(std::vector<ModelRecord>& records);

nlohmann::json to_json(const ModelRecord& record);

struct Output {
  std::string text;
  int exit_code = kOk;
};

Output run_fit(const RunConfig& cfg);
Output run_compare(const RunConfig& cfg);
Output run_gof(const RunConfig& cfg);
Output run_sample(const RunConfig& cfg);
Output run_curves(const RunConfig& cfg);
Output run_moments(const RunConfig& cfg);

/// Dispatches on cfg.command and maps library exceptions to exit codes
/// (InputError/DomainError -> 1, NumericalError/UndefinedError -> 3). The
/// diagnostic goes to `err`.
Output execute(const RunConfig& cfg, std::ostream& err);

/// Six significant digits, as used for CSV output.
std::string format_number(double v);

}  // namespace erl::app
