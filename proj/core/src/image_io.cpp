#include "scriptorium/image_io.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "scriptorium/errors.hpp"

namespace scriptorium {

namespace {

RgbImage from_mat(const cv::Mat& bgr, const std::string& what) {
  if (bgr.empty()) throw InputError("could not decode image: " + what);
  if (bgr.channels() != 3 || bgr.depth() != CV_8U)
    throw InputError("unsupported pixel format in image: " + what);

  RgbImage out(bgr.rows, bgr.cols);
  for (int r = 0; r < bgr.rows; ++r) {
    const cv::Vec3b* row = bgr.ptr<cv::Vec3b>(r);
    for (int c = 0; c < bgr.cols; ++c) {
      std::uint8_t* p = out.px(r, c);
      p[0] = row[c][2];
      p[1] = row[c][1];
      p[2] = row[c][0];
    }
  }
  return out;
}

cv::Mat to_mat(const RgbImage& image) {
  cv::Mat bgr(image.rows, image.cols, CV_8UC3);
  for (int r = 0; r < image.rows; ++r) {
    cv::Vec3b* row = bgr.ptr<cv::Vec3b>(r);
    for (int c = 0; c < image.cols; ++c) {
      const std::uint8_t* p = image.px(r, c);
      row[c] = cv::Vec3b(p[2], p[1], p[0]);
    }
  }
  return bgr;
}

}  // namespace

RgbImage read_rgb_image(const std::string& path) {
  cv::Mat bgr = cv::imread(path, cv::IMREAD_COLOR);
  return from_mat(bgr, path);
}

RgbImage decode_rgb_image(std::span<const std::uint8_t> bytes) {
  const cv::Mat buf(1, static_cast<int>(bytes.size()), CV_8U,
                    const_cast<std::uint8_t*>(bytes.data()));
  cv::Mat bgr = cv::imdecode(buf, cv::IMREAD_COLOR);
  return from_mat(bgr, "memory buffer");
}

void write_png(const RgbImage& image, const std::string& path) {
  if (!cv::imwrite(path, to_mat(image)))
    throw InputError("could not write image: " + path);
}

std::vector<std::uint8_t> encode_png(const RgbImage& image) {
  std::vector<std::uint8_t> buf;
  if (!cv::imencode(".png", to_mat(image), buf))
    throw InvariantError("png encoding failed");
  return buf;
}

void write_png16(const Raster<std::uint16_t>& image, const std::string& path) {
  cv::Mat gray(image.rows(), image.cols(), CV_16UC1);
  for (int r = 0; r < image.rows(); ++r) {
    std::uint16_t* row = gray.ptr<std::uint16_t>(r);
    for (int c = 0; c < image.cols(); ++c) row[c] = image(r, c);
  }
  if (!cv::imwrite(path, gray))
    throw InputError("could not write image: " + path);
}

}  // namespace scriptorium
