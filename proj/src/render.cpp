#include "symchar/render.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "symchar/parallel.hpp"

namespace symchar {

std::int64_t BitmapSpec::res() const {
  if (!(range > 0.0) || unit_res < 1) throw InvalidArgument("bitmap needs range > 0 and unit_res >= 1");
  const double exact = static_cast<double>(unit_res) * range;
  const auto res = static_cast<std::int64_t>(std::llround(exact));
  if (std::abs(exact - static_cast<double>(res)) > 1e-9 || res < 1)
    throw InvalidArgument("unit_res * range must be a positive integer");
  return res;
}

namespace {

void stamp(GrayArray& canvas, std::int64_t row, std::int64_t col) {
  static constexpr double kernel[3][3] = {{kStampCorner, kStampEdge, kStampCorner},
                                          {kStampEdge, kStampCenter, kStampEdge},
                                          {kStampCorner, kStampEdge, kStampCorner}};
  // 1-based (row, col) -> 0-based block starting at (row - 2, col - 2)
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double& px = canvas(row - 2 + i, col - 2 + j);
      px = std::max(px, kernel[i][j]);
    }
}

}  // namespace

GrayImage render_bitmap(const std::vector<Complex>& points, const BitmapSpec& spec, unsigned threads) {
  const std::int64_t res = spec.res();
  const std::int64_t side = 2 * res;
  const auto unit = static_cast<double>(spec.unit_res);
  const auto r0 = static_cast<double>(res);

  std::vector<GrayArray> canvases(chunk_count(points.size(), threads), GrayArray::Zero(side, side));
  parallel_chunks(points.size(), threads, [&](unsigned c, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      const Complex z = points[i];
      const auto row = static_cast<std::int64_t>(std::round(r0 - unit * z.imag()));
      const auto col = static_cast<std::int64_t>(std::round(r0 + unit * z.real()));
      if (1 < row && row < side && 1 < col && col < side) stamp(canvases[c], row, col);
    }
  });
  GrayArray canvas = GrayArray::Zero(side, side);
  for (const auto& part : canvases) canvas = canvas.max(part);
  return GrayImage{1.0 - canvas};
}

namespace {

void append_bytes(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

}  // namespace

std::vector<std::uint8_t> encode_png(const GrayImage& img) {
  const auto height = static_cast<png_uint_32>(img.pixels.rows());
  const auto width = static_cast<png_uint_32>(img.pixels.cols());
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(height) * width);
  for (Eigen::Index i = 0; i < img.pixels.rows(); ++i)
    for (Eigen::Index j = 0; j < img.pixels.cols(); ++j)
      bytes[static_cast<std::size_t>(i) * width + static_cast<std::size_t>(j)] =
          static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(img.pixels(i, j), 0.0, 1.0)));

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IOFailure("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IOFailure("png_create_info_struct failed");
  }
  std::vector<std::uint8_t> out;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IOFailure("libpng error while encoding");
  }
  png_set_write_fn(png, &out, append_bytes, nullptr);
  png_set_compression_level(png, 6);
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (png_uint_32 i = 0; i < height; ++i) png_write_row(png, bytes.data() + static_cast<std::size_t>(i) * width);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IOFailure("cannot open " + path + " for writing");
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw IOFailure("write to " + path + " failed");
}

void write_png(const GrayImage& img, const std::string& path) {
  const auto bytes = encode_png(img);
  write_file(path, std::string(bytes.begin(), bytes.end()));
}

std::string format_number(double v) {
  if (std::abs(v) < 5e-12) v = 0.0;  // no "-0.000..."
  const double mag = std::abs(v);
  const int int_digits = mag < 1.0 ? 1 : static_cast<int>(std::floor(std::log10(mag))) + 1;
  const int decimals = std::max(0, 12 - int_digits);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string export_points(const PointCloud& cloud, PointFormat format) {
  std::string out;
  if (format == PointFormat::kCsv) {
    out = "re,im\n";
    for (Complex z : cloud.points) out += format_number(z.real()) + "," + format_number(z.imag()) + "\n";
  } else {
    out = "[";
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
      if (i) out += ",";
      out += "[" + format_number(cloud.points[i].real()) + "," + format_number(cloud.points[i].imag()) + "]";
    }
    out += "]\n";
  }
  return out;
}

}  // namespace symchar
