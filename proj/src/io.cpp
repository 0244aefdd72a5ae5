/*
 * Copyright 2026 The tsxai Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "tsxai/io.hpp"

#include <cmath>
#include <limits>

#include "tsxai/error.hpp"

namespace tsxai::io {
namespace {

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorCode::kParse, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) schema_error("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) schema_error(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

// Number or null (null encodes +infinity).
double number_or_inf(const json& v, const std::string& what) {
  if (v.is_null()) return std::numeric_limits<double>::infinity();
  if (!v.is_number()) schema_error(what + " must be a number or null");
  return v.get<double>();
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::int64_t integer(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) schema_error(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::string string(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) schema_error(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> numbers(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) schema_error(std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) schema_error(std::string("field '") + key + "' must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<std::string> strings(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) schema_error(std::string("field '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) schema_error(std::string("field '") + key + "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

template <typename F>
auto wrap(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    throw Error(ErrorCode::kParse, e.what());
  }
}

}  // namespace

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    schema_error(std::string("malformed JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

json hyperparams_to_json(const SvrHyperParams& hp) {
  json j{{"kernel", kernel_name(hp.kernel.kind)}, {"C", hp.C}, {"epsilon", hp.epsilon}};
  if (hp.kernel.kind == KernelKind::kRbf) j["gamma"] = hp.kernel.gamma;
  return j;
}

SvrHyperParams hyperparams_from_json(const json& j) {
  return wrap([&] {
    SvrHyperParams hp;
    hp.kernel.kind = parse_kernel_kind(string(j, "kernel"));
    hp.kernel.gamma = hp.kernel.kind == KernelKind::kRbf ? number(j, "gamma") : 0.0;
    hp.C = number(j, "C");
    hp.epsilon = number(j, "epsilon");
    hp.validate();
    return hp;
  });
}

json model_to_json(const SvrModel& model) {
  json svs = json::array();
  for (std::size_t r = 0; r < model.support_vectors.rows(); ++r) {
    const auto row = model.support_vectors.row(r);
    svs.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return json{{"kernel", kernel_name(model.params.kernel.kind)},
              {"gamma", model.params.kernel.gamma},
              {"C", model.params.C},
              {"epsilon", model.params.epsilon},
              {"support_vectors", svs},
              {"dual_coeffs", model.dual_coeffs},
              {"bias", model.bias},
              {"feature_names", model.feature_names}};
}

SvrModel model_from_json(const json& j) {
  return wrap([&] {
    SvrModel m;
    m.params.kernel.kind = parse_kernel_kind(string(j, "kernel"));
    m.params.kernel.gamma = number(j, "gamma");
    m.params.C = number(j, "C");
    m.params.epsilon = number(j, "epsilon");
    m.params.validate();
    m.bias = number(j, "bias");
    m.dual_coeffs = numbers(j, "dual_coeffs");
    m.feature_names = strings(j, "feature_names");
    m.n_features = m.feature_names.size();
    const json& svs = field(j, "support_vectors");
    if (!svs.is_array()) schema_error("field 'support_vectors' must be an array");
    m.support_vectors = Matrix(0, m.n_features);
    for (const auto& row : svs) {
      if (!row.is_array() || row.size() != m.n_features) {
        schema_error("each support vector must have one value per feature name");
      }
      std::vector<double> v;
      for (const auto& e : row) {
        if (!e.is_number()) schema_error("support vectors must hold numbers");
        v.push_back(e.get<double>());
      }
      m.support_vectors.append_row(v);
    }
    if (m.support_vectors.rows() != m.dual_coeffs.size()) {
      schema_error("dual_coeffs and support_vectors differ in length");
    }
    return m;
  });
}

json scaler_to_json(const ScalerParams& params) {
  json cols = json::array();
  for (const auto& [name, mm] : params.columns) {
    cols.push_back({{"name", name}, {"min", mm.min}, {"max", mm.max}});
  }
  return json{{"columns", cols}};
}

ScalerParams scaler_from_json(const json& j) {
  ScalerParams p;
  const json& cols = field(j, "columns");
  if (!cols.is_array()) schema_error("field 'columns' must be an array");
  for (const auto& c : cols) {
    MinMax mm{number(c, "min"), number(c, "max")};
    if (!(mm.min <= mm.max)) schema_error("scaler min exceeds max");
    p.columns.emplace_back(string(c, "name"), mm);
  }
  return p;
}

json grid_to_json(const ParamGrid& grid) {
  json kernels = json::array();
  for (KernelKind k : grid.kernels) kernels.push_back(kernel_name(k));
  return json{{"kernel", kernels}, {"C", grid.Cs}, {"gamma", grid.gammas}, {"epsilon", grid.epsilons}};
}

ParamGrid grid_from_json(const json& j) {
  return wrap([&] {
    ParamGrid g;
    for (const auto& k : strings(j, "kernel")) g.kernels.push_back(parse_kernel_kind(k));
    g.Cs = numbers(j, "C");
    g.epsilons = numbers(j, "epsilon");
    if (j.contains("gamma")) g.gammas = numbers(j, "gamma");
    g.validate();
    g.candidates();
    return g;
  });
}

json lag_sweep_to_json(const LagSweepReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"lag", r.lag},
                    {"test_mape", finite_or_null(r.test_mape)},
                    {"cv_mape", finite_or_null(r.cv_mape)},
                    {"best_hyperparameters", hyperparams_to_json(r.best_params)},
                    {"n_train", r.n_train},
                    {"n_test", r.n_test}});
  }
  return json{{"rows", rows}, {"best_lag", report.best_lag}};
}

LagSweepReport lag_sweep_from_json(const json& j) {
  LagSweepReport rep;
  const json& rows = field(j, "rows");
  if (!rows.is_array() || rows.empty()) schema_error("field 'rows' must be a non-empty array");
  for (const auto& r : rows) {
    LagSweepRow row;
    row.lag = static_cast<int>(integer(r, "lag"));
    row.test_mape = number_or_inf(field(r, "test_mape"), "test_mape");
    row.cv_mape = number_or_inf(field(r, "cv_mape"), "cv_mape");
    row.best_params = hyperparams_from_json(field(r, "best_hyperparameters"));
    row.n_train = static_cast<std::size_t>(integer(r, "n_train"));
    row.n_test = static_cast<std::size_t>(integer(r, "n_test"));
    rep.rows.push_back(row);
  }
  rep.best_lag = static_cast<int>(integer(j, "best_lag"));
  return rep;
}

json explanation_to_json(const Explanation& ex) {
  json attrs = json::array();
  for (const auto& a : ex.attributions) {
    attrs.push_back({{"feature", a.feature}, {"weight", a.weight}, {"condition", a.condition}});
  }
  return json{{"method", method_name(ex.method)},
              {"period", ex.period},
              {"prediction", ex.prediction},
              {"baseline", ex.baseline},
              {"attributions", attrs}};
}

Explanation explanation_from_json(const json& j) {
  return wrap([&] {
    Explanation ex;
    ex.method = parse_method(string(j, "method"));
    ex.period = string(j, "period");
    ex.prediction = number(j, "prediction");
    ex.baseline = number(j, "baseline");
    const json& attrs = field(j, "attributions");
    if (!attrs.is_array()) schema_error("field 'attributions' must be an array");
    for (const auto& a : attrs) {
      ex.attributions.push_back({string(a, "feature"), number(a, "weight"), string(a, "condition")});
    }
    for (std::size_t i = 1; i < ex.attributions.size(); ++i) {
      if (std::abs(ex.attributions[i].weight) > std::abs(ex.attributions[i - 1].weight)) {
        schema_error("attributions are not sorted by |weight|");
      }
    }
    return ex;
  });
}

json synth_spec_to_json(const SynthSpec& spec) {
  json terms = json::array();
  for (const auto& t : spec.terms) {
    json jt{{"column", t.column}, {"lag", t.lag}, {"coef", t.coef},
            {"form", t.saturating ? "tanh" : "linear"}};
    if (t.saturating) {
      jt["center"] = t.center;
      jt["scale"] = t.scale;
    }
    jt["feature"] = lagged_feature_name(t.column, t.lag);
    terms.push_back(jt);
  }
  return json{{"kind", spec.kind == SynthKind::kSales ? "sales" : "ar1"},
              {"seed", spec.seed},
              {"months", spec.months},
              {"n_features", spec.n_features},
              {"start", spec.start.str()},
              {"target", spec.target},
              {"intercept", spec.intercept},
              {"noise_sd", spec.noise_sd},
              {"terms", terms}};
}

SynthSpec synth_spec_from_json(const json& j) {
  return wrap([&] {
    SynthSpec s;
    const std::string kind = string(j, "kind");
    if (kind != "sales" && kind != "ar1") schema_error("kind must be 'sales' or 'ar1'");
    s.kind = kind == "sales" ? SynthKind::kSales : SynthKind::kAr1;
    const json& seed = field(j, "seed");
    if (!seed.is_number_unsigned()) schema_error("field 'seed' must be an unsigned integer");
    s.seed = seed.get<std::uint64_t>();
    s.months = static_cast<int>(integer(j, "months"));
    s.n_features = static_cast<int>(integer(j, "n_features"));
    s.start = YearMonth::parse(string(j, "start"));
    s.target = string(j, "target");
    s.intercept = number(j, "intercept");
    s.noise_sd = number(j, "noise_sd");
    const json& terms = field(j, "terms");
    if (!terms.is_array()) schema_error("field 'terms' must be an array");
    for (const auto& t : terms) {
      SynthTerm term{string(t, "column"), static_cast<int>(integer(t, "lag")), number(t, "coef")};
      const std::string form = string(t, "form");
      if (form == "tanh") {
        term.saturating = true;
        term.center = number(t, "center");
        term.scale = number(t, "scale");
      } else if (form != "linear") {
        schema_error("term form must be 'linear' or 'tanh'");
      }
      s.terms.push_back(term);
    }
    return s;
  });
}

json welch_to_json(const WelchResult& r, const std::string& label_a, const std::string& label_b) {
  return json{{"test", "welch"},
              {"groups", {label_a, label_b}},
              {"mean", {r.mean_a, r.mean_b}},
              {"variance", {r.var_a, r.var_b}},
              {"std_dev", {std::sqrt(r.var_a), std::sqrt(r.var_b)}},
              {"observations", {r.n_a, r.n_b}},
              {"t_stat", r.t_stat},
              {"df", r.df},
              {"p_two_tailed", r.p_two_tailed}};
}

WelchResult welch_from_json(const json& j) {
  if (string(j, "test") != "welch") schema_error("field 'test' must be 'welch'");
  if (strings(j, "groups").size() != 2) schema_error("field 'groups' must name two groups");
  const auto mean = numbers(j, "mean");
  const auto var = numbers(j, "variance");
  const auto sd = numbers(j, "std_dev");
  const auto obs = numbers(j, "observations");
  if (mean.size() != 2 || var.size() != 2 || sd.size() != 2 || obs.size() != 2) {
    schema_error("per-group fields must have two entries");
  }
  WelchResult r{mean[0], mean[1], var[0], var[1], static_cast<std::size_t>(obs[0]),
                static_cast<std::size_t>(obs[1]), number(j, "t_stat"), number(j, "df"),
                number(j, "p_two_tailed")};
  if (!(r.df > 0.0) || r.p_two_tailed < 0.0 || r.p_two_tailed > 1.0) {
    schema_error("welch result out of range");
  }
  return r;
}

json spearman_to_json(const SpearmanResult& r, const std::string& x, const std::string& y) {
  return json{{"test", "spearman"}, {"x", x}, {"y", y}, {"rho", r.rho},
              {"p_two_tailed", r.p_two_tailed}, {"n", r.n}};
}

SpearmanResult spearman_from_json(const json& j) {
  if (string(j, "test") != "spearman") schema_error("field 'test' must be 'spearman'");
  string(j, "x");
  string(j, "y");
  SpearmanResult r{number(j, "rho"), number(j, "p_two_tailed"),
                   static_cast<std::size_t>(integer(j, "n"))};
  if (std::abs(r.rho) > 1.0 || r.p_two_tailed < 0.0 || r.p_two_tailed > 1.0) {
    schema_error("spearman result out of range");
  }
  return r;
}

json summary_to_json(const ResponseSummary& s) {
  const auto counts = [](const CountSummary& c) {
    return json{{"sum", c.sum}, {"mean", c.mean}, {"median", c.median}};
  };
  return json{{"group", s.group}, {"participants", s.n_participants},
              {"yes", counts(s.yes)}, {"no", counts(s.no)}};
}

ResponseSummary summary_from_json(const json& j) {
  const auto counts = [](const json& c) {
    return CountSummary{number(c, "sum"), number(c, "mean"), number(c, "median")};
  };
  return {string(j, "group"), static_cast<std::size_t>(integer(j, "participants")),
          counts(field(j, "yes")), counts(field(j, "no"))};
}

}  // namespace tsxai::io
