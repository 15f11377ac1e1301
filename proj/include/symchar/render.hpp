#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symchar/eval.hpp"

namespace symchar {

/// Plot extent [-range, range] on both axes at unit_res pixels per unit.
struct BitmapSpec {
  double range = 1.0;
  int unit_res = 1;

  /// unit_res * range; must come out integral.
  std::int64_t res() const;
};

using GrayArray = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// 2res x 2res intensities in [0, 1]; 1 is white.
struct GrayImage {
  GrayArray pixels;
};

/// 3x3 stamp applied around each plotted point.
inline constexpr double kStampCorner = 0.3;
inline constexpr double kStampEdge = 0.75;
inline constexpr double kStampCenter = 1.0;

/// Rasterizes the points: z lands on the 1-based pixel
/// (round(res - unit_res Im z), round(res + unit_res Re z)); points with
/// 1 < row < 2res and 1 < col < 2res get the stamp, combined with the canvas
/// by elementwise max; everything else is dropped. The image is 1 - canvas.
/// Output is identical for any thread count and any point order.
GrayImage render_bitmap(const std::vector<Complex>& points, const BitmapSpec& spec, unsigned threads = 1);

/// 8-bit grayscale PNG bytes, v -> round(255 clamp(v, 0, 1)).
std::vector<std::uint8_t> encode_png(const GrayImage& img);
void write_png(const GrayImage& img, const std::string& path);

enum class PointFormat { kCsv, kJson };

/// CSV: header "re,im" then one row per point; JSON: array of [re, im].
/// Numbers use 12 significant digits.
std::string export_points(const PointCloud& cloud, PointFormat format);

/// Fixed-point text with 12 significant digits, e.g. 1 -> "1.00000000000".
std::string format_number(double v);

void write_file(const std::string& path, const std::string& bytes);

}  // namespace symchar
