#include "vcmbench/harness/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>

#include "vcmbench/error.hpp"
#include "vcmbench/io.hpp"
#include "vcmbench/metrics/interchange.hpp"

namespace vcmbench {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_bd_cell(double percent) { return fixed(percent, 2) + "%"; }

std::string BdRow::cell() const {
  return result ? format_bd_cell(result->percent) : "N/A(" + reason + ")";
}

std::vector<BdRow> bd_table(const RateAccuracyCurve& anchor,
                            const std::vector<RateAccuracyCurve>& tests) {
  std::vector<BdRow> rows;
  for (const auto& t : tests) {
    BdRow row{anchor.label, t.label, std::nullopt, {}};
    try {
      row.result = bd_rate(anchor, t);
    } catch (const Error& e) {
      switch (e.kind()) {
        case ErrorKind::kOverlap: row.reason = "overlap"; break;
        case ErrorKind::kMonotonicity: row.reason = "monotonicity"; break;
        default: row.reason = "points"; break;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string write_bd_csv(const std::vector<BdRow>& rows) {
  std::string out = "anchor,label,bd_rate,low,high\n";
  for (const auto& r : rows) {
    out += csv_cell(r.anchor) + "," + csv_cell(r.label) + "," + r.cell() + ",";
    if (r.result) out += format_number(r.result->low) + "," + format_number(r.result->high);
    else out += ",";
    out += "\n";
  }
  return out;
}

std::string render_rate_accuracy_svg(const std::vector<RateAccuracyCurve>& curves,
                                     std::string_view rate_unit) {
  constexpr double kWidth = 640, kHeight = 420;
  constexpr double kLeft = 70, kRight = 170, kTop = 30, kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double rmin = INFINITY, rmax = -INFINITY, amin = INFINITY, amax = -INFINITY;
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      if (!(p.rate > 0.0)) continue;
      rmin = std::min(rmin, p.rate);
      rmax = std::max(rmax, p.rate);
      amin = std::min(amin, p.accuracy);
      amax = std::max(amax, p.accuracy);
    }
  }
  if (!std::isfinite(rmin)) {
    rmin = 0.1;
    rmax = 10.0;
    amin = 0.0;
    amax = 1.0;
  }
  double lx0 = std::floor(std::log10(rmin)), lx1 = std::ceil(std::log10(rmax));
  if (lx1 <= lx0) lx1 = lx0 + 1;
  double ay0 = std::min(0.0, std::floor(amin * 10) / 10), ay1 = std::max(1.0, std::ceil(amax * 10) / 10);

  auto sx = [&](double rate) { return kLeft + (std::log10(rate) - lx0) / (lx1 - lx0) * plot_w; };
  auto sy = [&](double acc) { return kTop + (ay1 - acc) / (ay1 - ay0) * plot_h; };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" "
       "viewBox=\"0 0 640 420\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s += "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
  s += "<g class=\"axes\" stroke=\"#444\" fill=\"none\">\n";
  s += "<rect x=\"" + fixed(kLeft, 1) + "\" y=\"" + fixed(kTop, 1) + "\" width=\"" +
       fixed(plot_w, 1) + "\" height=\"" + fixed(plot_h, 1) + "\"/>\n";
  s += "</g>\n<g class=\"ticks\" fill=\"#444\">\n";
  for (int e = static_cast<int>(lx0); e <= static_cast<int>(lx1); ++e) {
    const double x = sx(std::pow(10.0, e));
    s += "<line x1=\"" + fixed(x, 1) + "\" y1=\"" + fixed(kTop, 1) + "\" x2=\"" + fixed(x, 1) +
         "\" y2=\"" + fixed(kTop + plot_h, 1) + "\" stroke=\"#ddd\"/>\n";
    s += "<text x=\"" + fixed(x, 1) + "\" y=\"" + fixed(kTop + plot_h + 16, 1) +
         "\" text-anchor=\"middle\">1e" + std::to_string(e) + "</text>\n";
  }
  for (int k = 0; k <= 5; ++k) {
    const double a = ay0 + (ay1 - ay0) * k / 5.0;
    const double y = sy(a);
    s += "<line x1=\"" + fixed(kLeft, 1) + "\" y1=\"" + fixed(y, 1) + "\" x2=\"" +
         fixed(kLeft + plot_w, 1) + "\" y2=\"" + fixed(y, 1) + "\" stroke=\"#ddd\"/>\n";
    s += "<text x=\"" + fixed(kLeft - 6, 1) + "\" y=\"" + fixed(y + 4, 1) +
         "\" text-anchor=\"end\">" + fixed(a, 2) + "</text>\n";
  }
  s += "<text x=\"" + fixed(kLeft + plot_w / 2, 1) + "\" y=\"" + fixed(kHeight - 18, 1) +
       "\" text-anchor=\"middle\">rate (" + xml_escape(rate_unit) + ", log scale)</text>\n";
  s += "<text transform=\"translate(18," + fixed(kTop + plot_h / 2, 1) +
       ") rotate(-90)\" text-anchor=\"middle\">accuracy</text>\n";
  s += "</g>\n";

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i];
    const char* color = kPalette[i % std::size(kPalette)];
    std::vector<RatePoint> pts;
    for (const auto& p : c.points) {
      if (p.rate > 0.0) pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end(),
              [](const RatePoint& a, const RatePoint& b) { return a.rate < b.rate; });
    s += "<g class=\"curve\" data-label=\"" + xml_escape(c.label) + "\">\n";
    s += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
         "\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k) s += ' ';
      s += fixed(sx(pts[k].rate), 2) + "," + fixed(sy(pts[k].accuracy), 2);
    }
    s += "\"/>\n";
    for (const auto& p : pts) {
      s += "<circle cx=\"" + fixed(sx(p.rate), 2) + "\" cy=\"" + fixed(sy(p.accuracy), 2) +
           "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }
    s += "</g>\n";
    const double ly = kTop + 10 + 18.0 * static_cast<double>(i);
    const double lx = kLeft + plot_w + 14;
    s += "<g class=\"legend\"><line x1=\"" + fixed(lx, 1) + "\" y1=\"" + fixed(ly, 1) +
         "\" x2=\"" + fixed(lx + 20, 1) + "\" y2=\"" + fixed(ly, 1) + "\" stroke=\"" + color +
         "\" stroke-width=\"2\"/><text x=\"" + fixed(lx + 26, 1) + "\" y=\"" +
         fixed(ly + 4, 1) + "\">" + xml_escape(c.label) + "</text></g>\n";
  }
  s += "</svg>\n";
  return s;
}

std::vector<RateAccuracyCurve> read_run_curves(const std::filesystem::path& run_dir) {
  const auto path = std::filesystem::is_directory(run_dir) ? run_dir / "curve.csv" : run_dir;
  return parse_curve_csv(read_file_text(path));
}

std::string read_run_rate_unit(const std::filesystem::path& run_dir) {
  const auto path = run_dir / "run.json";
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) return "rate";
  try {
    return nlohmann::json::parse(read_file_text(path)).value("rate_unit", std::string("rate"));
  } catch (const nlohmann::json::exception&) {
    return "rate";
  }
}

void emit_report(const std::vector<RateAccuracyCurve>& curves,
                 const std::optional<RateAccuracyCurve>& anchor, std::string_view rate_unit,
                 const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<RateAccuracyCurve> all;
  if (anchor) all.push_back(*anchor);
  all.insert(all.end(), curves.begin(), curves.end());
  write_file_text(out_dir / "curves.csv", write_curve_csv(all));
  write_file_text(out_dir / "report.svg", render_rate_accuracy_svg(all, rate_unit));
  if (anchor) write_file_text(out_dir / "bd.csv", write_bd_csv(bd_table(*anchor, curves)));
}

}  // namespace vcmbench
