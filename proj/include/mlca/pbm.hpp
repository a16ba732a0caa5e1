#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "mlca/lattice.hpp"

namespace mlca {

enum class PbmEncoding { Plain, Raw };  // P1, P4

// PBM stores 1 = black. By default a black sample becomes pixel 1; with
// invert set, white samples become pixel 1 instead.
BinaryImage parse_pbm(std::string_view bytes, bool invert = false);
BinaryImage load_image(const std::filesystem::path& path, bool invert = false);

void write_pbm(std::ostream& out, const BinaryImage& image, PbmEncoding encoding = PbmEncoding::Plain,
               bool invert = false);
void save_image(const std::filesystem::path& path, const BinaryImage& image,
                PbmEncoding encoding = PbmEncoding::Plain, bool invert = false);

}  // namespace mlca
