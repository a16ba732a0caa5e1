#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mlca/errors.hpp"

namespace mlca {

// Row-major 2-D array. Row 0 is the top (north) edge.
template <typename T>
class Lattice {
public:
  Lattice() = default;
  Lattice(std::size_t height, std::size_t width, const T& fill = T{})
      : height_(height), width_(width), data_(height * width, fill) {}

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  bool contains(std::ptrdiff_t row, std::ptrdiff_t col) const noexcept {
    return row >= 0 && col >= 0 && static_cast<std::size_t>(row) < height_ && static_cast<std::size_t>(col) < width_;
  }

  T& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * width_ + col]; }
  const T& operator()(std::size_t row, std::size_t col) const noexcept { return data_[row * width_ + col]; }

  T& at(std::size_t row, std::size_t col) {
    check(row, col);
    return (*this)(row, col);
  }
  const T& at(std::size_t row, std::size_t col) const {
    check(row, col);
    return (*this)(row, col);
  }

  T& operator[](std::size_t index) noexcept { return data_[index]; }
  const T& operator[](std::size_t index) const noexcept { return data_[index]; }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  template <typename U>
  bool same_shape(const Lattice<U>& other) const noexcept {
    return height_ == other.height() && width_ == other.width();
  }

  bool operator==(const Lattice&) const = default;

private:
  void check(std::size_t row, std::size_t col) const {
    if (row >= height_ || col >= width_) {
      throw ValidationError("index (" + std::to_string(row) + ", " + std::to_string(col) + ") outside " +
                            std::to_string(height_) + "x" + std::to_string(width_) + " lattice");
    }
  }

  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<T> data_;
};

// Strictly 0/1 pixels. Used for input images and edge maps alike.
using BinaryImage = Lattice<std::uint8_t>;

}  // namespace mlca
