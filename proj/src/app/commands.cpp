#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <sstream>

#include "erl/app.hpp"
#include "erl/error.hpp"

namespace erl::app {
namespace {

using nlohmann::json;

constexpr std::size_t kCurveRows = 512;
constexpr double kCurveLow = 0.001;
constexpr double kCurveHigh = 0.999;

const char* const kGofNote =
    "AD and CvM p-values are not reported: their null distribution depends on the estimated parameters.";

json nullable(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <class F>
json defined_or_null(F&& f) {
  try {
    return json(f());
  } catch (const UndefinedError&) {
    return json(nullptr);
  }
}

json params_json(const ErlParams& p) {
  const auto v = p.to_array();
  json out = json::object();
  for (std::size_t i = 0; i < v.size(); ++i) out[std::string(kParamNames[i])] = v[i];
  return out;
}

const Dataset& require_input(const RunConfig& cfg, std::optional<Dataset>& slot) {
  if (cfg.input_path.empty()) throw InputError("--input is required for this command");
  slot.emplace(ingest(cfg.input_path));
  return *slot;
}

const ErlParams& require_params(const RunConfig& cfg) {
  if (!cfg.params) throw InputError("--params a,b,theta,lambda,beta is required for this command");
  return *cfg.params;
}

std::vector<ModelSpec> requested_models(const RunConfig& cfg, std::vector<ModelSpec> fallback) {
  return cfg.models.empty() ? fallback : cfg.models;
}

FitConfig fit_config(const RunConfig& cfg) {
  FitConfig fc;
  fc.seed = cfg.seed;
  fc.starts = cfg.starts;
  return fc;
}

std::string csv_cell(std::optional<double> v) { return v ? format_number(*v) : "NA"; }

std::string records_csv(const std::vector<ModelRecord>& records) {
  std::ostringstream os;
  os << "name,k";
  for (const auto name : kParamNames) os << ',' << name;
  for (const auto name : kParamNames) os << ",se_" << name;
  os << ",nll,aic,caic,hqic,bic,converged,selected\n";
  for (const auto& r : records) {
    os << r.fit.spec.name() << ',' << r.fit.k;
    for (const double v : r.fit.params.to_array()) os << ',' << format_number(v);
    const auto free = r.fit.spec.free_params();
    for (int slot = 0; slot < 5; ++slot) {
      std::optional<double> se;
      for (std::size_t i = 0; i < free.size(); ++i) {
        if (static_cast<int>(free[i]) == slot && i < r.fit.se.size()) se = r.fit.se[i];
      }
      os << ',' << csv_cell(se);
    }
    os << ',' << format_number(r.criteria.nll) << ',' << format_number(r.criteria.aic) << ','
       << csv_cell(r.criteria.caic) << ',' << format_number(r.criteria.hqic) << ','
       << format_number(r.criteria.bic) << ',' << (r.fit.converged ? "true" : "false") << ','
       << (r.selected ? "true" : "false") << '\n';
  }
  return os.str();
}

int exit_code_for(const std::vector<ModelRecord>& records) {
  const bool all = std::all_of(records.begin(), records.end(), [](const auto& r) { return r.fit.converged; });
  return all ? kOk : kConvergenceFailure;
}

Output models_report(const RunConfig& cfg, bool rank) {
  std::optional<Dataset> slot;
  const Dataset& data = require_input(cfg, slot);
  const std::vector<ModelSpec> fallback = rank ? comparison_models() : std::vector<ModelSpec>{ModelSpec(Model::ERLD)};
  auto records = fit_models(requested_models(cfg, fallback), data, fit_config(cfg));
  if (rank) rank_by_aic(records);

  Output out;
  out.exit_code = exit_code_for(records);
  if (cfg.format == Format::csv) {
    out.text = records_csv(records);
    return out;
  }
  json report;
  report["data_summary"] = data_summary(data);
  report["models"] = json::array();
  for (const auto& r : records) report["models"].push_back(to_json(r));
  if (rank) report["selected"] = std::string(records.front().fit.spec.name());
  out.text = report.dump(2) + "\n";
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

json data_summary(const Dataset& data) {
  return {{"n", data.size()},
          {"min", data.min()},
          {"max", data.max()},
          {"skewness", defined_or_null([&] { return gof::sample_skewness(data); })},
          {"kurtosis", defined_or_null([&] { return gof::sample_kurtosis(data); })}};
}

std::vector<ModelRecord> fit_models(const std::vector<ModelSpec>& models, const Dataset& data,
                                    const FitConfig& cfg) {
  // Smaller models first, so each fit can start from the optima of the
  // already-fitted models nested inside it.
  std::vector<std::size_t> order(models.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return models[l].free_count() < models[r].free_count();
  });
  std::vector<std::optional<ModelRecord>> slots(models.size());
  for (const std::size_t i : order) {
    std::vector<ErlParams> warm;
    for (const std::size_t j : order) {
      if (slots[j] && nested_in(models[j], models[i])) warm.push_back(slots[j]->fit.params);
    }
    FitResult fit = fit_mle(models[i], data, cfg, warm);
    const gof::CriteriaReport criteria = gof::info_criteria(fit.nll, fit.k, fit.n);
    slots[i] = ModelRecord{std::move(fit), criteria, false};
  }
  std::vector<ModelRecord> out;
  out.reserve(models.size());
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

void rank_by_aic(std::vector<ModelRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const ModelRecord& l, const ModelRecord& r) { return l.criteria.aic < r.criteria.aic; });
  for (auto& r : records) r.selected = false;
  if (!records.empty()) records.front().selected = true;
}

json to_json(const ModelRecord& record) {
  const FitResult& fit = record.fit;
  json se = json::object();
  const auto free = fit.spec.free_params();
  for (std::size_t i = 0; i < free.size(); ++i) {
    se[std::string(kParamNames[static_cast<int>(free[i])])] =
        i < fit.se.size() ? nullable(fit.se[i]) : json(nullptr);
  }
  json fixed = json::array();
  for (int slot = 0; slot < 5; ++slot) {
    if (!fit.spec.is_free(static_cast<Param>(slot))) fixed.push_back(std::string(kParamNames[slot]));
  }
  return {{"name", std::string(fit.spec.name())},
          {"k", fit.k},
          {"estimates", params_json(fit.params)},
          {"fixed", fixed},
          {"se", se},
          {"nll", fit.nll},
          {"aic", record.criteria.aic},
          {"caic", nullable(record.criteria.caic)},
          {"hqic", record.criteria.hqic},
          {"bic", record.criteria.bic},
          {"converged", fit.converged},
          {"selected", record.selected}};
}

Output run_fit(const RunConfig& cfg) { return models_report(cfg, false); }

Output run_compare(const RunConfig& cfg) { return models_report(cfg, true); }

Output run_gof(const RunConfig& cfg) {
  std::optional<Dataset> slot;
  const Dataset& data = require_input(cfg, slot);
  std::optional<ModelRecord> record;
  ErlParams params = cfg.params ? *cfg.params : ErlParams(1, 1, 1, 1, 1);
  if (!cfg.params) {
    const ModelSpec spec = requested_models(cfg, {ModelSpec(Model::ERLD)}).front();
    record = fit_models({spec}, data, fit_config(cfg)).front();
    params = record->fit.params;
  }
  const gof::GofReport gr = gof::evaluate(data, [&](double x) { return cdf(x, params); });

  Output out;
  out.exit_code = record && !record->fit.converged ? kConvergenceFailure : kOk;
  if (cfg.format == Format::csv) {
    std::ostringstream os;
    os << "model,n,min,max,skewness,kurtosis,ks,ks_p,ad,cvm\n";
    auto maybe = [](auto&& f) {
      try {
        return format_number(f());
      } catch (const UndefinedError&) {
        return std::string("NA");
      }
    };
    os << (record ? std::string(record->fit.spec.name()) : std::string("fixed")) << ',' << gr.n << ','
       << format_number(data.min()) << ',' << format_number(data.max()) << ','
       << maybe([&] { return gof::sample_skewness(data); }) << ','
       << maybe([&] { return gof::sample_kurtosis(data); }) << ',' << format_number(gr.ks) << ','
       << format_number(gr.ks_p) << ',' << format_number(gr.ad) << ',' << format_number(gr.cvm) << '\n';
    out.text = os.str();
    return out;
  }
  json report;
  report["data_summary"] = data_summary(data);
  report["model"] = record ? std::string(record->fit.spec.name()) : std::string("fixed");
  report["params"] = params_json(params);
  if (record) report["fit"] = to_json(*record);
  report["gof"] = {{"n", gr.n},  {"ks", gr.ks},   {"ks_p", gr.ks_p},
                   {"ad", gr.ad}, {"ad_clamped", gr.ad_clamped}, {"cvm", gr.cvm}};
  report["note"] = kGofNote;
  out.text = report.dump(2) + "\n";
  return out;
}

Output run_sample(const RunConfig& cfg) {
  const ErlParams& p = require_params(cfg);
  const std::vector<double> values = sample(cfg.sample_size, p, cfg.seed);
  Output out;
  if (cfg.format == Format::csv) {
    std::ostringstream os;
    os << "x\n";
    for (const double v : values) os << format_number(v) << '\n';
    out.text = os.str();
    return out;
  }
  json report;
  report["params"] = params_json(p);
  report["seed"] = cfg.seed;
  report["n"] = values.size();
  report["values"] = values;
  out.text = report.dump(2) + "\n";
  return out;
}

Output run_curves(const RunConfig& cfg) {
  const ErlParams& p = require_params(cfg);
  struct Row {
    double x, pdf, cdf, survival, hazard;
  };
  std::vector<Row> rows;
  rows.reserve(kCurveRows);
  for (std::size_t i = 0; i < kCurveRows; ++i) {
    const double prob =
        kCurveLow + (kCurveHigh - kCurveLow) * static_cast<double>(i) / static_cast<double>(kCurveRows - 1);
    const double x = quantile(prob, p);
    rows.push_back({x, pdf(x, p), cdf(x, p), survival(x, p), hazard(x, p)});
  }
  Output out;
  if (cfg.format == Format::json) {
    json table = json::array();
    for (const auto& r : rows) {
      table.push_back({{"x", r.x},
                       {"pdf", r.pdf},
                       {"cdf", r.cdf},
                       {"survival", r.survival},
                       {"hazard", finite_or_null(r.hazard)}});
    }
    json report;
    report["params"] = params_json(p);
    report["rows"] = table;
    out.text = report.dump(2) + "\n";
    return out;
  }
  std::ostringstream os;
  os << "x,pdf,cdf,survival,hazard\n";
  for (const auto& r : rows) {
    os << format_number(r.x) << ',' << format_number(r.pdf) << ',' << format_number(r.cdf) << ','
       << format_number(r.survival) << ',' << format_number(r.hazard) << '\n';
  }
  out.text = os.str();
  return out;
}

Output run_moments(const RunConfig& cfg) {
  const ErlParams& p = require_params(cfg);
  std::vector<double> raw;
  for (int r = 1; r <= 4; ++r) raw.push_back(raw_moment(r, p));
  const CentralMoments c = central_moments(p);
  const json skew = defined_or_null([&] { return skewness(p); });
  const json kurt = defined_or_null([&] { return kurtosis(p); });
  const json cv = defined_or_null([&] { return coefficient_of_variation(p); });
  Output out;
  if (cfg.format == Format::csv) {
    auto cell = [](const json& j) { return j.is_null() ? std::string("NA") : format_number(j.get<double>()); };
    std::ostringstream os;
    os << "quantity,value\n";
    for (std::size_t r = 0; r < raw.size(); ++r) os << "raw_moment_" << r + 1 << ',' << format_number(raw[r]) << '\n';
    os << "mean," << format_number(c.mean) << '\n'
       << "variance," << format_number(c.mu2) << '\n'
       << "mu3," << format_number(c.mu3) << '\n'
       << "mu4," << format_number(c.mu4) << '\n'
       << "skewness," << cell(skew) << '\n'
       << "excess_kurtosis," << cell(kurt) << '\n'
       << "cv," << cell(cv) << '\n';
    out.text = os.str();
    return out;
  }
  json report;
  report["params"] = params_json(p);
  report["raw_moments"] = raw;
  report["mean"] = c.mean;
  report["variance"] = c.mu2;
  report["mu3"] = c.mu3;
  report["mu4"] = c.mu4;
  report["skewness"] = skew;
  report["excess_kurtosis"] = kurt;
  report["cv"] = cv;
  out.text = report.dump(2) + "\n";
  return out;
}

Output execute(const RunConfig& cfg, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::fit:
        return run_fit(cfg);
      case Command::compare:
        return run_compare(cfg);
      case Command::gof:
        return run_gof(cfg);
      case Command::sample:
        return run_sample(cfg);
      case Command::curves:
        return run_curves(cfg);
      case Command::moments:
        return run_moments(cfg);
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return {"", kInputError};
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << '\n';
    return {"", kInputError};
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return {"", kNumericalError};
  } catch (const UndefinedError& e) {
    err << "numerical error: " << e.what() << '\n';
    return {"", kNumericalError};
  }
  return {"", kInputError};
}

}  // namespace erl::app
