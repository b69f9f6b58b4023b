#include "multinet/plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <vector>

namespace multinet {

namespace {

// Paul Tol's bright palette; label -1 (noise) gets gray.
const char* const kPalette[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44",
                                "#66ccee", "#aa3377", "#bbbbbb"};
constexpr int kPaletteSize = 7;
constexpr const char* kNoiseColor = "#999999";

constexpr double kPanelSize = 220.0;
constexpr double kPanelPad = 46.0;
constexpr double kMargin = 10.0;

std::string fixed(double v) {
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

const char* colorFor(int label) {
  if (label < 0) return kNoiseColor;
  return kPalette[label % kPaletteSize];
}

struct Range {
  double lo = 0, hi = 1;
  double map(double v, double out_lo, double out_hi) const {
    const double t = (v - lo) / (hi - lo);
    return out_lo + t * (out_hi - out_lo);
  }
};

Range paddedRange(const Eigen::VectorXd& v) {
  Range r;
  r.lo = v.minCoeff();
  r.hi = v.maxCoeff();
  double pad = 0.05 * (r.hi - r.lo);
  if (pad <= 0) pad = std::max(0.5, std::abs(r.lo) * 0.05 + 0.5);
  r.lo -= pad;
  r.hi += pad;
  return r;
}

}  // namespace

Eigen::MatrixXd plottedColumns(const Eigen::MatrixXd& embedding, int paxis) {
  if (paxis < 2) throw ArgumentError("paxis must be at least 2");
  if (embedding.cols() < paxis + 1)
    throw ArgumentError("embedding has " + std::to_string(embedding.cols()) +
                        " columns but paxis = " + std::to_string(paxis) +
                        " needs at least " + std::to_string(paxis + 1) +
                        " (columns 2 .. paxis+1 are plotted)");
  return embedding.middleCols(1, paxis);
}

std::string renderEmbeddingSvg(const Eigen::MatrixXd& embedding, const PlotOptions& opts) {
  const Eigen::MatrixXd cols = plottedColumns(embedding, opts.paxis);
  const Index n = cols.rows();
  if (n < 1) throw ArgumentError("embedding has no rows to plot");
  if (!opts.labels.empty() && opts.labels.size() != static_cast<std::size_t>(n))
    throw ValidationError("plot labels count " + std::to_string(opts.labels.size()) +
                          " does not match " + std::to_string(n) + " embedding rows");

  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < opts.paxis; ++a)
    for (int b = a + 1; b < opts.paxis; ++b) pairs.emplace_back(a, b);

  const int panels = static_cast<int>(pairs.size());
  const int grid_cols = std::min(panels, 3);
  const int grid_rows = (panels + grid_cols - 1) / grid_cols;
  const double cell = kPanelSize + kPanelPad;
  const double width = kMargin * 2 + grid_cols * cell;
  const double height = kMargin * 2 + grid_rows * cell;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width) +
         "\" height=\"" + fixed(height) + "\" viewBox=\"0 0 " + fixed(width) + " " +
         fixed(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (int p = 0; p < panels; ++p) {
    const auto [a, b] = pairs[static_cast<std::size_t>(p)];
    const double x0 = kMargin + (p % grid_cols) * cell + kPanelPad * 0.7;
    const double y0 = kMargin + (p / grid_cols) * cell + kPanelPad * 0.3;
    const Range rx = paddedRange(cols.col(a));
    const Range ry = paddedRange(cols.col(b));

    svg += "<g class=\"panel\">\n";
    svg += "<rect x=\"" + fixed(x0) + "\" y=\"" + fixed(y0) + "\" width=\"" +
           fixed(kPanelSize) + "\" height=\"" + fixed(kPanelSize) +
           "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    for (Index i = 0; i < n; ++i) {
      const double px = rx.map(cols(i, a), x0, x0 + kPanelSize);
      const double py = ry.map(cols(i, b), y0 + kPanelSize, y0);  // SVG y grows downward
      const int label = opts.labels.empty() ? 0 : opts.labels[static_cast<std::size_t>(i)];
      const char* color = opts.labels.empty() ? kPalette[0] : colorFor(label);
      svg += "<circle cx=\"" + fixed(px) + "\" cy=\"" + fixed(py) +
             "\" r=\"3\" fill=\"" + color + "\" fill-opacity=\"0.8\"/>\n";
    }
    // axis captions use 1-based eigenvector numbering; plotted column a is
    // embedding column a+1, i.e. eigenvector a+2
    svg += "<text x=\"" + fixed(x0 + kPanelSize * 0.5) + "\" y=\"" +
           fixed(y0 + kPanelSize + 16.0) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">e" +
           std::to_string(a + 2) + "</text>\n";
    svg += "<text x=\"" + fixed(x0 - 8.0) + "\" y=\"" + fixed(y0 + kPanelSize * 0.5) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 " +
           fixed(x0 - 8.0) + " " + fixed(y0 + kPanelSize * 0.5) + ")\">e" +
           std::to_string(b + 2) + "</text>\n";
    svg += "</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace multinet
