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

#include "tsxai/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tsxai::render {
namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

class Table {
 public:
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  std::string str() const {
    std::vector<std::size_t> widths;
    for (const auto& r : rows_) {
      if (widths.size() < r.size()) widths.resize(r.size(), 0);
      for (std::size_t c = 0; c < r.size(); ++c) widths[c] = std::max(widths[c], r[c].size());
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      std::string line;
      for (std::size_t c = 0; c < rows_[i].size(); ++c) {
        if (c > 0) line += " | ";
        line += pad(rows_[i][c], widths[c]);
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      os << line << '\n';
      if (i == 0) {
        std::size_t total = 0;
        for (std::size_t w : widths) total += w;
        os << std::string(total + 3 * (widths.size() - 1), '-') << '\n';
      }
    }
    return os.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

constexpr double kSvgWidth = 760;
constexpr double kLabelWidth = 300;
constexpr double kPlotLeft = kLabelWidth + 20;
constexpr double kPlotRight = kSvgWidth - 30;
constexpr double kRowHeight = 28;
constexpr double kTop = 60;

double max_abs_weight(const Explanation& ex) {
  double m = 0.0;
  for (const auto& a : ex.attributions) m = std::max(m, std::abs(a.weight));
  return m > 0.0 ? m : 1.0;
}

std::string svg_header(double height, const std::string& title) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSvgWidth << "\" height=\""
     << height << "\" viewBox=\"0 0 " << kSvgWidth << " " << height
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kSvgWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
     << xml_escape(title) << "</text>\n";
  return os.str();
}

std::string title_of(const Explanation& ex) {
  return (ex.method == ExplainMethod::kLime ? "LIME" : "SHAP") + std::string(" explanation, ") +
         (ex.period.empty() ? "instance" : ex.period) + ", prediction " + fmt("%.4g", ex.prediction);
}

// Zero line, tick labels and the x-axis caption below the last row.
std::string svg_axis(double zero_x, double half_span, double scale, double bottom,
                     const std::string& caption) {
  std::ostringstream os;
  os << "<line x1=\"" << zero_x << "\" y1=\"" << kTop - 8 << "\" x2=\"" << zero_x << "\" y2=\""
     << bottom << "\" stroke=\"#444\"/>\n";
  os << "<line x1=\"" << kPlotLeft << "\" y1=\"" << bottom << "\" x2=\"" << kPlotRight
     << "\" y2=\"" << bottom << "\" stroke=\"#444\"/>\n";
  for (int k = -2; k <= 2; ++k) {
    const double v = half_span * k / 2.0;
    const double x = zero_x + v * scale;
    os << "<line x1=\"" << x << "\" y1=\"" << bottom << "\" x2=\"" << x << "\" y2=\"" << bottom + 5
       << "\" stroke=\"#444\"/>\n"
       << "<text x=\"" << x << "\" y=\"" << bottom + 18 << "\" text-anchor=\"middle\">"
       << fmt("%.3g", v) << "</text>\n";
  }
  os << "<text x=\"" << (kPlotLeft + kPlotRight) / 2 << "\" y=\"" << bottom + 38
     << "\" text-anchor=\"middle\">" << xml_escape(caption) << "</text>\n";
  return os.str();
}

std::string svg_legend(double y, const std::string& pos_label, const std::string& neg_label) {
  std::ostringstream os;
  os << "<rect x=\"" << kPlotLeft << "\" y=\"" << y << "\" width=\"12\" height=\"12\" fill=\"#2ca02c\"/>\n"
     << "<text x=\"" << kPlotLeft + 18 << "\" y=\"" << y + 10 << "\">" << xml_escape(pos_label) << "</text>\n"
     << "<rect x=\"" << kPlotLeft + 230 << "\" y=\"" << y << "\" width=\"12\" height=\"12\" fill=\"#d62728\"/>\n"
     << "<text x=\"" << kPlotLeft + 248 << "\" y=\"" << y + 10 << "\">" << xml_escape(neg_label) << "</text>\n";
  return os.str();
}

}  // namespace

std::string lag_sweep_table(const LagSweepReport& report) {
  Table t;
  t.row({"Lag in the data set", "Mean absolute percentage error", "Best hyperparameters"});
  for (const auto& r : report.rows) {
    const std::string lag = std::to_string(r.lag) + (r.lag == report.best_lag ? " *" : "");
    const std::string m = std::isfinite(r.test_mape) ? fmt("%.2f %%", r.test_mape) : "n/a";
    t.row({lag, m, describe_params(r.best_params)});
  }
  return t.str() + "* best lag by test MAPE\n";
}

std::string summary_table(const std::vector<ResponseSummary>& summaries) {
  Table t;
  std::vector<std::string> head{"", "Statistical Measure"};
  for (const auto& s : summaries) head.push_back(s.group);
  t.row(head);
  const auto add = [&](const std::string& answer, const std::string& measure, auto get,
                       const char* spec) {
    std::vector<std::string> r{answer, measure};
    for (const auto& s : summaries) r.push_back(fmt(spec, get(s)));
    t.row(r);
  };
  add("Yes", "Sum", [](const ResponseSummary& s) { return s.yes.sum; }, "%.0f");
  add("", "Mean", [](const ResponseSummary& s) { return s.yes.mean; }, "%.2f");
  add("", "Median", [](const ResponseSummary& s) { return s.yes.median; }, "%g");
  add("No", "Sum", [](const ResponseSummary& s) { return s.no.sum; }, "%.0f");
  add("", "Mean", [](const ResponseSummary& s) { return s.no.mean; }, "%.2f");
  add("", "Median", [](const ResponseSummary& s) { return s.no.median; }, "%g");
  return t.str();
}

std::string welch_table(const WelchResult& r, const std::string& label_a,
                        const std::string& label_b) {
  Table t;
  t.row({"", label_a, label_b});
  t.row({"Mean", fmt("%.2f", r.mean_a), fmt("%.2f", r.mean_b)});
  t.row({"Standard Deviation", fmt("%.3f", std::sqrt(r.var_a)), fmt("%.3f", std::sqrt(r.var_b))});
  t.row({"Variance", fmt("%.3f", r.var_a), fmt("%.3f", r.var_b)});
  t.row({"Observations", std::to_string(r.n_a), std::to_string(r.n_b)});
  t.row({"df", fmt("%.2f", r.df), ""});
  t.row({"t Stat", fmt("%.3f", r.t_stat), ""});
  t.row({"P(T<=t) two-tail", fmt("%.5f", r.p_two_tailed) + stars(r.p_two_tailed), ""});
  return t.str() + "Note. *p<.05, **p<.01, ***p<.001\n";
}

std::string spearman_table(const SpearmanResult& r, const std::string& x, const std::string& y) {
  Table t;
  t.row({"Variables", "rho", "P two-tail", "n"});
  t.row({x + " ~ " + y, fmt("%.3f", r.rho), fmt("%.5f", r.p_two_tailed) + stars(r.p_two_tailed),
         std::to_string(r.n)});
  return t.str();
}

std::string explanation_table(const Explanation& ex) {
  Table t;
  t.row({"Feature", "Weight", "Condition"});
  for (const auto& a : ex.attributions) t.row({a.feature, fmt("%+.6f", a.weight), a.condition});
  std::ostringstream os;
  os << method_name(ex.method) << " explanation for " << ex.period << ": prediction "
     << fmt("%.6g", ex.prediction) << ", " << (ex.method == ExplainMethod::kLime ? "intercept " : "baseline ")
     << fmt("%.6g", ex.baseline) << "\n"
     << t.str();
  return os.str();
}

std::string lime_svg(const Explanation& ex) {
  const double n = static_cast<double>(ex.attributions.size());
  const double bottom = kTop + n * kRowHeight + 4;
  const double height = bottom + 80;
  const double half = max_abs_weight(ex);
  const double zero_x = (kPlotLeft + kPlotRight) / 2;
  const double scale = (kPlotRight - zero_x) / half;
  std::ostringstream os;
  os << svg_header(height, title_of(ex));
  for (std::size_t i = 0; i < ex.attributions.size(); ++i) {
    const auto& a = ex.attributions[i];
    const double y = kTop + static_cast<double>(i) * kRowHeight;
    const double w = std::abs(a.weight) * scale;
    const double x = a.weight >= 0 ? zero_x : zero_x - w;
    const std::string label = a.condition.empty() ? a.feature : a.condition;
    os << "<text x=\"" << kLabelWidth << "\" y=\"" << y + 16 << "\" text-anchor=\"end\">"
       << xml_escape(label) << "</text>\n"
       << "<rect x=\"" << x << "\" y=\"" << y + 4 << "\" width=\"" << w << "\" height=\""
       << kRowHeight - 8 << "\" fill=\"" << (a.weight >= 0 ? "#2ca02c" : "#d62728") << "\"/>\n";
  }
  os << svg_axis(zero_x, half, scale, bottom, "Feature weight (impact on the prediction)");
  os << svg_legend(height - 22, "positive impact", "negative impact");
  os << "</svg>\n";
  return os.str();
}

std::string shap_svg(const Explanation& ex) {
  const double n = static_cast<double>(ex.attributions.size());
  const double bottom = kTop + n * kRowHeight + 4;
  const double height = bottom + 80;
  const double half = max_abs_weight(ex) * 1.1;
  const double zero_x = (kPlotLeft + kPlotRight) / 2;
  const double scale = (kPlotRight - zero_x) / half;
  std::ostringstream os;
  os << svg_header(height, title_of(ex));
  for (std::size_t i = 0; i < ex.attributions.size(); ++i) {
    const auto& a = ex.attributions[i];
    const double y = kTop + static_cast<double>(i) * kRowHeight + kRowHeight / 2;
    os << "<text x=\"" << kLabelWidth << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">"
       << xml_escape(a.feature) << "</text>\n"
       << "<line x1=\"" << kPlotLeft << "\" y1=\"" << y << "\" x2=\"" << kPlotRight << "\" y2=\""
       << y << "\" stroke=\"#ddd\" stroke-dasharray=\"2,3\"/>\n"
       << "<circle cx=\"" << zero_x + a.weight * scale << "\" cy=\"" << y << "\" r=\"6\" fill=\""
       << (a.weight >= 0 ? "#2ca02c" : "#d62728") << "\"/>\n";
  }
  os << svg_axis(zero_x, half, scale, bottom, "SHAP value (impact on the model output)");
  os << svg_legend(height - 22, "raises the prediction", "lowers the prediction");
  os << "</svg>\n";
  return os.str();
}

std::string explanation_svg(const Explanation& ex) {
  return ex.method == ExplainMethod::kLime ? lime_svg(ex) : shap_svg(ex);
}

std::string stack_svg(const std::vector<std::string>& charts) {
  std::ostringstream body;
  double offset = 0.0;
  for (const auto& chart : charts) {
    const auto at = chart.find("height=\"");
    const double height = at == std::string::npos ? 0.0 : std::stod(chart.substr(at + 8));
    body << "<g transform=\"translate(0," << offset << ")\">\n" << chart << "</g>\n";
    offset += height;
  }
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSvgWidth << "\" height=\""
     << offset << "\">\n"
     << body.str() << "</svg>\n";
  return os.str();
}

}  // namespace tsxai::render
