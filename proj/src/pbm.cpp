#include "mlca/pbm.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace mlca {

namespace {

// Largest accepted image, in pixels.
constexpr std::size_t kMaxPixels = std::size_t{1} << 28;

class Cursor {
public:
  explicit Cursor(std::string_view bytes) : bytes_(bytes) {}

  bool done() const noexcept { return pos_ >= bytes_.size(); }
  std::size_t pos() const noexcept { return pos_; }

  void skip_space_and_comments() {
    while (!done()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (!done() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  std::size_t read_dimension(const char* what) {
    skip_space_and_comments();
    if (done() || !std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      throw ValidationError(std::string("PBM header: missing ") + what);
    }
    std::size_t value = 0;
    while (!done() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      const auto digit = static_cast<std::size_t>(bytes_[pos_] - '0');
      if (value > (kMaxPixels - digit) / 10) throw ValidationError(std::string("PBM header: ") + what + " overflows");
      value = value * 10 + digit;
      ++pos_;
    }
    if (value == 0) throw ValidationError(std::string("PBM header: ") + what + " must be positive");
    return value;
  }

  char next() { return bytes_[pos_++]; }
  std::string_view rest() const { return bytes_.substr(pos_); }

private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::uint8_t to_pixel(bool black, bool invert) { return (black != invert) ? 1 : 0; }

}  // namespace

BinaryImage parse_pbm(std::string_view bytes, bool invert) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '1' && bytes[1] != '4')) {
    throw ValidationError("not a PBM file (expected P1 or P4 magic)");
  }
  const bool raw = bytes[1] == '4';
  Cursor cur(bytes.substr(2));
  const std::size_t width = cur.read_dimension("width");
  const std::size_t height = cur.read_dimension("height");
  if (width > kMaxPixels / height) throw ValidationError("PBM header: image dimensions overflow");

  BinaryImage img(height, width, 0);
  if (raw) {
    // Exactly one whitespace byte separates the header from the raster.
    if (cur.done() || !std::isspace(static_cast<unsigned char>(cur.next()))) {
      throw ValidationError("PBM header: missing separator before raster");
    }
    const std::size_t row_bytes = (width + 7) / 8;
    const std::string_view raster = cur.rest();
    if (raster.size() < row_bytes * height) throw ValidationError("P4 raster is truncated");
    for (std::size_t i = 0; i < height; ++i) {
      for (std::size_t j = 0; j < width; ++j) {
        const auto byte = static_cast<unsigned char>(raster[i * row_bytes + j / 8]);
        img(i, j) = to_pixel((byte >> (7 - j % 8)) & 1u, invert);
      }
    }
    return img;
  }

  // Plain samples may or may not be whitespace separated.
  std::size_t k = 0;
  while (true) {
    cur.skip_space_and_comments();
    if (cur.done()) break;
    const char c = cur.next();
    if (c != '0' && c != '1') throw ValidationError(std::string("P1 raster: non-binary sample '") + c + "'");
    if (k == img.size()) throw ValidationError("P1 raster: more samples than width*height");
    img[k++] = to_pixel(c == '1', invert);
  }
  if (k != img.size()) {
    throw ValidationError("P1 raster: expected " + std::to_string(img.size()) + " samples, found " +
                          std::to_string(k));
  }
  return img;
}

BinaryImage load_image(const std::filesystem::path& path, bool invert) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return parse_pbm(buf.str(), invert);
}

void write_pbm(std::ostream& out, const BinaryImage& image, PbmEncoding encoding, bool invert) {
  const auto sample = [&](std::size_t i, std::size_t j) { return (image(i, j) != 0) != invert; };
  if (encoding == PbmEncoding::Raw) {
    out << "P4\n" << image.width() << ' ' << image.height() << '\n';
    const std::size_t row_bytes = (image.width() + 7) / 8;
    std::string row(row_bytes, '\0');
    for (std::size_t i = 0; i < image.height(); ++i) {
      std::fill(row.begin(), row.end(), '\0');
      for (std::size_t j = 0; j < image.width(); ++j) {
        if (sample(i, j)) row[j / 8] = static_cast<char>(row[j / 8] | (0x80 >> (j % 8)));
      }
      out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
    return;
  }
  out << "P1\n" << image.width() << ' ' << image.height() << '\n';
  for (std::size_t i = 0; i < image.height(); ++i) {
    for (std::size_t j = 0; j < image.width(); ++j) {
      if (j) out << ' ';
      out << (sample(i, j) ? '1' : '0');
    }
    out << '\n';
  }
}

void save_image(const std::filesystem::path& path, const BinaryImage& image, PbmEncoding encoding, bool invert) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write image " + path.string());
  write_pbm(out, image, encoding, invert);
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace mlca
