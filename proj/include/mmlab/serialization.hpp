#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mmlab/mmm_space.hpp"

namespace mmlab {

// Text format for mmm-spaces; grammar in docs/space_format.md.
// Parse failures throw std::invalid_argument with a line number.

std::string to_text(const MmmSpace& x);
MmmSpace from_text(std::string_view text);

void save_space(const MmmSpace& x, const std::filesystem::path& path);
MmmSpace load_space(const std::filesystem::path& path);

}  // namespace mmlab
