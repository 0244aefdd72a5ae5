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

#include "tsxai/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "tsxai/error.hpp"
#include "tsxai/evalstats.hpp"
#include "tsxai/io.hpp"
#include "tsxai/lime.hpp"
#include "tsxai/model_selection.hpp"
#include "tsxai/render.hpp"
#include "tsxai/shap.hpp"
#include "tsxai/synth.hpp"
#include "tsxai/timeseries.hpp"

namespace tsxai::cli {
namespace {

namespace fs = std::filesystem;
using io::json;

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  unsigned threads = 0;
};

struct SynthOptions {
  int months = 120;
  int features = 5;
  std::string kind = "sales";
  std::string truth;
};

struct PrepareOptions {
  std::string input;
  std::string target = "deals";
  int lag = 3;
  bool no_scale = false;
  std::string scaler_out;
};

struct TrainOptions {
  std::string input;
  std::string target = "deals";
  std::vector<int> lags{1, 2, 3, 4, 5};
  std::string grid;
  double train_fraction = 0.8;
  std::size_t n_splits = 4;
  bool no_scale = false;
  std::string model_out;
  std::string scaler_out;
};

struct ExplainOptions {
  std::string model;
  std::string dataset;
  std::string period;
  std::string explainer = "both";
  std::size_t top_k = 5;
  std::size_t samples = 5000;
  std::size_t iterations = 2000;
  std::string kernel_width = "auto";
  double train_fraction = 0.8;
  bool denormalize = false;
  std::string scaler;
};

struct EvalOptions {
  std::string responses;
  std::string summary;
  std::string test = "welch";
  std::vector<std::string> groups;
  std::string x = "yes_count";
  std::string y;
  std::string group;
  int n_cases = 10;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  out << text;
}

// Re-raises module errors with the file they came from.
template <typename F>
auto with_file(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

void require_file(const std::string& path, const char* what) {
  if (path.empty()) throw Error(ErrorCode::kInvalidArgument, std::string("missing --") + what);
  if (!fs::is_regular_file(path)) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " file '" + path + "' does not exist");
  }
}

class Emitter {
 public:
  Emitter(const GlobalOptions& g, std::ostream& out) : g_(g), out_(out) {}

  void emit(const std::string& text) const {
    if (g_.out.empty() || g_.out == "-") {
      out_ << text;
    } else {
      write_file(g_.out, text);
    }
  }

  // Companion file next to --out, e.g. "<out>.truth.json".
  std::string sidecar(const std::string& suffix) const {
    return g_.out.empty() || g_.out == "-" ? "" : g_.out + suffix;
  }

 private:
  const GlobalOptions& g_;
  std::ostream& out_;
};

void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw Error(ErrorCode::kInvalidArgument, "--format " + format + " is not supported here");
}

// ---------------------------------------------------------------------------

void cmd_synth(const GlobalOptions& g, const SynthOptions& o, const Emitter& em) {
  check_format(g.format, {"json", "table"});
  if (o.kind != "sales" && o.kind != "ar1") {
    throw Error(ErrorCode::kInvalidArgument, "--kind must be sales or ar1");
  }
  const auto res = generate_synthetic(g.seed, o.months, o.features,
                                      o.kind == "sales" ? SynthKind::kSales : SynthKind::kAr1);
  em.emit(frame_to_csv(res.frame));
  const std::string truth = o.truth.empty() ? em.sidecar(".truth.json") : o.truth;
  if (!truth.empty()) write_file(truth, io::dump(io::synth_spec_to_json(res.spec)));
}

void cmd_prepare(const GlobalOptions& g, const PrepareOptions& o, const Emitter& em) {
  check_format(g.format, {"json", "table"});
  require_file(o.input, "input");
  const auto frame = with_file(o.input, [&] { return load_frame(read_file(o.input), o.target); });
  std::optional<ScalerParams> scaler;
  const TimeSeriesFrame prepared = [&] {
    if (o.no_scale) return frame;
    scaler = fit_minmax(frame);
    return apply_minmax(frame, *scaler);
  }();
  const auto ds = make_supervised(prepared, o.lag);
  em.emit(dataset_to_csv(ds));
  const std::string scaler_path = o.scaler_out.empty() ? em.sidecar(".scaler.json") : o.scaler_out;
  if (scaler && !scaler_path.empty()) write_file(scaler_path, io::dump(io::scaler_to_json(*scaler)));
}

void cmd_train(const GlobalOptions& g, const TrainOptions& o, const Emitter& em) {
  check_format(g.format, {"json", "table"});
  require_file(o.input, "input");
  const auto frame = with_file(o.input, [&] { return load_frame(read_file(o.input), o.target); });
  ParamGrid grid = ParamGrid::default_grid();
  if (!o.grid.empty()) {
    require_file(o.grid, "grid");
    grid = with_file(o.grid, [&] { return io::grid_from_json(io::parse(read_file(o.grid))); });
  }
  LagSweepOptions opts;
  opts.train_fraction = o.train_fraction;
  opts.n_splits = o.n_splits;
  opts.scale = !o.no_scale;
  opts.n_threads = g.threads;
  const auto res = lag_sweep(frame, o.lags, grid, opts);
  em.emit(g.format == "table" ? render::lag_sweep_table(res.report)
                              : io::dump(io::lag_sweep_to_json(res.report)));
  const std::string model_path = o.model_out.empty() ? em.sidecar(".model.json") : o.model_out;
  if (!model_path.empty()) write_file(model_path, io::dump(io::model_to_json(res.best_model)));
  const std::string scaler_path = o.scaler_out.empty() ? em.sidecar(".scaler.json") : o.scaler_out;
  if (res.scaler && !scaler_path.empty()) {
    write_file(scaler_path, io::dump(io::scaler_to_json(*res.scaler)));
  }
}

std::string base_column(const std::string& feature) {
  const auto open = feature.rfind(" (t-");
  return open == std::string::npos ? feature : feature.substr(0, open);
}

void denormalize(Explanation& ex, const ScalerParams& scaler, const std::string& target,
                 const TrainStats& stats, std::span<const double> instance) {
  const MinMax& t = scaler.at(target);
  ex.prediction = t.unscale(ex.prediction);
  if (ex.method == ExplainMethod::kShap) {
    ex.baseline = t.unscale(ex.baseline);
    for (auto& a : ex.attributions) a.weight *= t.max - t.min;
    return;
  }
  for (auto& a : ex.attributions) {
    const auto it = std::find(stats.feature_names.begin(), stats.feature_names.end(), a.feature);
    const auto j = static_cast<std::size_t>(it - stats.feature_names.begin());
    const MinMax& c = scaler.at(base_column(a.feature));
    a.condition = quartile_condition(a.feature, c.unscale(instance[j]), c.unscale(stats.q1[j]),
                                     c.unscale(stats.q2[j]), c.unscale(stats.q3[j]));
  }
}

void cmd_explain(const GlobalOptions& g, const ExplainOptions& o, const Emitter& em) {
  check_format(g.format, {"json", "table", "svg"});
  require_file(o.model, "model");
  require_file(o.dataset, "dataset");
  if (o.explainer != "lime" && o.explainer != "shap" && o.explainer != "both") {
    throw Error(ErrorCode::kInvalidArgument, "--explainer must be lime, shap or both");
  }
  const SvrModel model =
      with_file(o.model, [&] { return io::model_from_json(io::parse(read_file(o.model))); });
  const SupervisedDataset ds = with_file(o.dataset, [&] { return dataset_from_csv(read_file(o.dataset)); });
  if (ds.feature_names != model.feature_names) {
    throw Error(ErrorCode::kDimensionMismatch, "dataset features do not match the model's");
  }
  std::optional<ScalerParams> scaler;
  if (o.denormalize) {
    require_file(o.scaler, "scaler");
    scaler = with_file(o.scaler, [&] { return io::scaler_from_json(io::parse(read_file(o.scaler))); });
  }
  const auto [train, test] = chrono_split(ds, o.train_fraction);
  const YearMonth period = YearMonth::parse(o.period);
  const auto in_test = std::find(test.row_periods.begin(), test.row_periods.end(), period);
  if (in_test == test.row_periods.end()) {
    throw Error(ErrorCode::kInvalidArgument, "period " + o.period + " is not in the test set (" +
                                                 test.row_periods.front().str() + " .. " +
                                                 test.row_periods.back().str() + ")");
  }
  const auto instance = test.X.row(static_cast<std::size_t>(in_test - test.row_periods.begin()));
  const PredictFn predict = [&model](std::span<const double> x) { return model.predict(x); };

  const TrainStats stats = compute_train_stats(train);
  std::vector<Explanation> out;
  if (o.explainer != "shap") {
    LimeConfig cfg;
    cfg.n_samples = o.samples;
    cfg.top_k = o.top_k;
    cfg.seed = g.seed;
    if (o.kernel_width != "auto") {
      try {
        cfg.kernel_width = std::stod(o.kernel_width);
      } catch (const std::exception&) {
        throw Error(ErrorCode::kInvalidArgument, "--kernel-width must be 'auto' or a number");
      }
    }
    out.push_back(explain_lime(predict, instance, stats, cfg));
  }
  if (o.explainer != "lime") {
    ShapConfig cfg;
    cfg.n_iterations = o.iterations;
    cfg.background = default_background(train.X);
    cfg.top_k = o.top_k;
    cfg.seed = g.seed;
    out.push_back(summarize_instance(sampled_shapley(predict, instance, cfg), ds.feature_names, o.top_k));
  }
  for (auto& ex : out) {
    ex.period = period.str();
    if (scaler) denormalize(ex, *scaler, ds.target, stats, instance);
  }

  if (g.format == "svg") {
    std::vector<std::string> charts;
    for (const auto& ex : out) charts.push_back(render::explanation_svg(ex));
    em.emit(charts.size() == 1 ? charts.front() : render::stack_svg(charts));
  } else if (g.format == "table") {
    std::string text;
    for (const auto& ex : out) text += render::explanation_table(ex) + "\n";
    em.emit(text);
  } else if (out.size() == 1) {
    em.emit(io::dump(io::explanation_to_json(out.front())));
  } else {
    json arr = json::array();
    for (const auto& ex : out) arr.push_back(io::explanation_to_json(ex));
    em.emit(io::dump(json{{"explanations", arr}}));
  }
}

struct GroupStats {
  std::string label;
  double mean = 0.0, variance = 0.0;
  std::size_t n = 0;
};

std::vector<GroupStats> summary_groups(const json& j) {
  std::vector<GroupStats> out;
  const auto it = j.find("groups");
  if (it == j.end() || !it->is_array()) throw Error(ErrorCode::kParse, "missing 'groups' array");
  for (const auto& gj : *it) {
    if (!gj.is_object() || !gj.contains("label") || !gj.contains("mean") || !gj.contains("n") ||
        !gj["label"].is_string() || !gj["mean"].is_number() || !gj["n"].is_number_unsigned()) {
      throw Error(ErrorCode::kParse, "each group needs label, mean, n and variance or std_dev");
    }
    GroupStats s{gj["label"].get<std::string>(), gj["mean"].get<double>(), 0.0,
                 gj["n"].get<std::size_t>()};
    if (gj.contains("variance") && gj["variance"].is_number()) {
      s.variance = gj["variance"].get<double>();
    } else if (gj.contains("std_dev") && gj["std_dev"].is_number()) {
      s.variance = gj["std_dev"].get<double>() * gj["std_dev"].get<double>();
    } else {
      throw Error(ErrorCode::kParse, "group '" + s.label + "' needs variance or std_dev");
    }
    out.push_back(s);
  }
  return out;
}

std::vector<double> response_column(const ResponseTable& t, const std::string& name) {
  std::vector<double> v;
  for (std::size_t i = 0; i < t.yes_counts.size(); ++i) {
    if (name == "yes_count") {
      v.push_back(t.yes_counts[i]);
      continue;
    }
    const auto it = t.demographics[i].find(name);
    if (it == t.demographics[i].end()) {
      throw Error(ErrorCode::kInvalidArgument, "participant " + t.participant_ids[i] +
                                                   " has no value for '" + name + "'");
    }
    v.push_back(it->second);
  }
  return v;
}

void cmd_eval(const GlobalOptions& g, const EvalOptions& o, const Emitter& em) {
  check_format(g.format, {"json", "table"});
  const bool table = g.format == "table";
  if (o.test != "welch" && o.test != "spearman" && o.test != "summary") {
    throw Error(ErrorCode::kInvalidArgument, "--test must be welch, spearman or summary");
  }

  if (!o.summary.empty()) {
    if (o.test != "welch") throw Error(ErrorCode::kInvalidArgument, "--summary supports --test welch only");
    require_file(o.summary, "summary");
    const auto groups = with_file(o.summary, [&] { return summary_groups(io::parse(read_file(o.summary))); });
    if (groups.size() != 2) throw Error(ErrorCode::kInvalidArgument, "summary must list two groups");
    const auto r = welch_from_summary(groups[0].mean, groups[0].variance, groups[0].n,
                                      groups[1].mean, groups[1].variance, groups[1].n);
    em.emit(table ? render::welch_table(r, groups[0].label, groups[1].label)
                  : io::dump(io::welch_to_json(r, groups[0].label, groups[1].label)));
    return;
  }

  require_file(o.responses, "responses");
  const auto tables = with_file(o.responses, [&] { return parse_responses(read_file(o.responses), o.n_cases); });
  const auto find = [&](const std::string& label) -> const ResponseTable& {
    for (const auto& t : tables) {
      if (t.group == label) return t;
    }
    throw Error(ErrorCode::kInvalidArgument, "no responses for group '" + label + "'");
  };

  if (o.test == "summary") {
    std::vector<ResponseSummary> sums;
    if (o.groups.empty()) {
      for (const auto& t : tables) sums.push_back(summarize(t));
    } else {
      for (const auto& label : o.groups) sums.push_back(summarize(find(label)));
    }
    if (table) {
      em.emit(render::summary_table(sums));
    } else {
      json arr = json::array();
      for (const auto& s : sums) arr.push_back(io::summary_to_json(s));
      em.emit(io::dump(json{{"test", "summary"}, {"groups", arr}}));
    }
  } else if (o.test == "welch") {
    if (o.groups.size() != 2) throw Error(ErrorCode::kInvalidArgument, "--groups needs two labels, e.g. LIME,noXAI");
    const auto a = response_column(find(o.groups[0]), "yes_count");
    const auto b = response_column(find(o.groups[1]), "yes_count");
    const auto r = welch_t_test(a, b);
    em.emit(table ? render::welch_table(r, o.groups[0], o.groups[1])
                  : io::dump(io::welch_to_json(r, o.groups[0], o.groups[1])));
  } else {
    if (o.y.empty()) throw Error(ErrorCode::kInvalidArgument, "--y is required for spearman");
    std::vector<double> xs, ys;
    for (const auto& t : tables) {
      if (!o.group.empty() && t.group != o.group) continue;
      const auto x = response_column(t, o.x);
      const auto y = response_column(t, o.y);
      xs.insert(xs.end(), x.begin(), x.end());
      ys.insert(ys.end(), y.begin(), y.end());
    }
    const auto r = spearman(xs, ys);
    em.emit(table ? render::spearman_table(r, o.x, o.y) : io::dump(io::spearman_to_json(r, o.x, o.y)));
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-series forecasting with SVR and model-agnostic explanations", "tsxai"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file with option defaults");

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "table", "svg"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "Output path (stdout when omitted)");
  app.add_option("--threads", g.threads, "Worker threads for grid search (0 = all cores)");

  SynthOptions so;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic monthly dataset");
  synth->add_option("--months", so.months)->capture_default_str();
  synth->add_option("--features", so.features, "Number of activity features")->capture_default_str();
  synth->add_option("--kind", so.kind, "sales or ar1")->capture_default_str();
  synth->add_option("--truth", so.truth, "Ground-truth JSON path (default <out>.truth.json)");

  PrepareOptions po;
  auto* prepare = app.add_subcommand("prepare", "Scale and reframe a frame into a lagged dataset");
  prepare->add_option("--input", po.input, "Frame CSV")->required();
  prepare->add_option("--target", po.target)->capture_default_str();
  prepare->add_option("--lag", po.lag)->capture_default_str();
  prepare->add_flag("--no-scale", po.no_scale, "Skip min-max scaling");
  prepare->add_option("--scaler-out", po.scaler_out, "Scaler JSON path (default <out>.scaler.json)");

  TrainOptions to;
  auto* train = app.add_subcommand("train", "Grid-search SVR over a sweep of lags");
  train->add_option("--input", to.input, "Frame CSV")->required();
  train->add_option("--target", to.target)->capture_default_str();
  train->add_option("--lags", to.lags)->delimiter(',')->capture_default_str();
  train->add_option("--grid", to.grid, "Parameter grid JSON");
  train->add_option("--train-fraction", to.train_fraction)->capture_default_str();
  train->add_option("--splits", to.n_splits, "Time-series CV folds")->capture_default_str();
  train->add_flag("--no-scale", to.no_scale, "Skip min-max scaling");
  train->add_option("--model-out", to.model_out, "Best model JSON path (default <out>.model.json)");
  train->add_option("--scaler-out", to.scaler_out, "Scaler JSON path (default <out>.scaler.json)");

  ExplainOptions eo;
  auto* explain = app.add_subcommand("explain", "Explain one test-set prediction");
  explain->add_option("--model", eo.model)->required();
  explain->add_option("--dataset", eo.dataset, "Prepared dataset CSV")->required();
  explain->add_option("--period", eo.period, "YYYY-MM of the test row")->required();
  explain->add_option("--explainer", eo.explainer, "lime, shap or both")->capture_default_str();
  explain->add_option("--top-k", eo.top_k)->capture_default_str();
  explain->add_option("--samples", eo.samples, "LIME perturbation samples")->capture_default_str();
  explain->add_option("--iterations", eo.iterations, "Shapley sampling iterations")->capture_default_str();
  explain->add_option("--kernel-width", eo.kernel_width, "LIME kernel width or 'auto'")->capture_default_str();
  explain->add_option("--train-fraction", eo.train_fraction)->capture_default_str();
  explain->add_flag("--denormalize", eo.denormalize, "Report values in original units");
  explain->add_option("--scaler", eo.scaler, "Scaler JSON (required with --denormalize)");

  EvalOptions vo;
  auto* eval = app.add_subcommand("eval", "Statistics over human-evaluation responses");
  eval->add_option("--responses", vo.responses, "Response CSV");
  eval->add_option("--summary", vo.summary, "Per-group summary statistics JSON");
  eval->add_option("--test", vo.test, "welch, spearman or summary")->capture_default_str();
  eval->add_option("--groups", vo.groups)->delimiter(',');
  eval->add_option("--x", vo.x, "Spearman x column")->capture_default_str();
  eval->add_option("--y", vo.y, "Spearman y column");
  eval->add_option("--group", vo.group, "Restrict spearman to one group");
  eval->add_option("--n-cases", vo.n_cases)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  const Emitter em(g, out);
  try {
    if (*synth) cmd_synth(g, so, em);
    else if (*prepare) cmd_prepare(g, po, em);
    else if (*train) cmd_train(g, to, em);
    else if (*explain) cmd_explain(g, eo, em);
    else if (*eval) cmd_eval(g, vo, em);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numeric_failure(e.code()) ? kExitNumeric : kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace tsxai::cli
