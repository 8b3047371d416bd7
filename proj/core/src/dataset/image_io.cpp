#include "vcmbench/dataset/image_io.hpp"

#include <cctype>
#include <string>

#include "vcmbench/dataset/color.hpp"
#include "vcmbench/error.hpp"
#include "vcmbench/io.hpp"

namespace vcmbench {

namespace {

class HeaderScanner {
 public:
  explicit HeaderScanner(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  long next_int() {
    skip_space_and_comments();
    long v = 0;
    bool any = false;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > (1L << 24)) fail(ErrorKind::kParse, "netpbm header value too large");
      ++pos_;
      any = true;
    }
    if (!any) fail(ErrorKind::kParse, "netpbm header: expected integer");
    return v;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_start() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      fail(ErrorKind::kParse, "netpbm header: missing separator before raster");
    }
    return pos_ + 1;
  }

  std::size_t pos_ = 2;

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
};

std::vector<std::uint8_t> header(const char* magic, int w, int h) {
  const std::string s = std::string(magic) + "\n" + std::to_string(w) + " " +
                        std::to_string(h) + "\n255\n";
  return {s.begin(), s.end()};
}

}  // namespace

RgbImage decode_netpbm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '6' && bytes[1] != '5')) {
    fail(ErrorKind::kParse, "not a binary PPM/PGM file");
  }
  const bool gray = bytes[1] == '5';
  HeaderScanner scan(bytes);
  const long w = scan.next_int();
  const long h = scan.next_int();
  const long maxval = scan.next_int();
  if (w < 1 || h < 1) fail(ErrorKind::kParse, "netpbm: zero dimension");
  if (maxval != 255) {
    fail(ErrorKind::kUnsupported,
         "netpbm maxval " + std::to_string(maxval) + " (only 255 supported)");
  }
  const std::size_t start = scan.raster_start();
  const std::size_t channels = gray ? 1 : 3;
  const std::size_t need = static_cast<std::size_t>(w) * h * channels;
  if (bytes.size() - start < need) {
    fail(ErrorKind::kTruncation, "netpbm raster truncated: expected " +
                                     std::to_string(need) + " bytes, got " +
                                     std::to_string(bytes.size() - start));
  }
  RgbImage img = RgbImage::make(static_cast<int>(w), static_cast<int>(h));
  const auto raster = bytes.subspan(start, need);
  if (gray) {
    for (std::size_t i = 0; i < raster.size(); ++i) {
      img.samples[3 * i] = img.samples[3 * i + 1] = img.samples[3 * i + 2] = raster[i];
    }
  } else {
    std::copy(raster.begin(), raster.end(), img.samples.begin());
  }
  return img;
}

std::vector<std::uint8_t> encode_ppm(const RgbImage& image) {
  auto out = header("P6", image.width, image.height);
  out.insert(out.end(), image.samples.begin(), image.samples.end());
  return out;
}

std::vector<std::uint8_t> encode_pgm(int width, int height,
                                     std::span<const std::uint8_t> gray) {
  auto out = header("P5", width, height);
  out.insert(out.end(), gray.begin(), gray.end());
  return out;
}

RgbImage read_image(const std::filesystem::path& path) {
  return decode_netpbm(read_file_bytes(path));
}

void write_ppm(const std::filesystem::path& path, const RgbImage& image) {
  write_file_bytes(path, encode_ppm(image));
}

void write_model_input(const std::filesystem::path& path,
                       const PlanarFrame& frame) {
  if (frame.chroma == Chroma::kYuv420) {
    write_ppm(path, yuv_to_rgb(frame));
    return;
  }
  const int shift = frame.bit_depth - 8;
  std::vector<std::uint8_t> gray(frame.planes[0].size());
  for (std::size_t i = 0; i < gray.size(); ++i) {
    gray[i] = static_cast<std::uint8_t>(frame.planes[0][i] >> shift);
  }
  write_file_bytes(path, encode_pgm(frame.width, frame.height, gray));
}

}  // namespace vcmbench
