#pragma once

#include "grk/kronecker.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace grk {

// {"n":3,"q":2,"dim":[1,1],"maps":[[[1]],[[0]],[[0]]]}
// maps are listed alpha_1..alpha_n, each a d2 x d1 row-major matrix.
std::string module_to_json(const KroneckerModule& m);
KroneckerModule module_from_json(std::string_view text);

KroneckerModule read_module_file(const std::filesystem::path& path);
void write_module_file(const std::filesystem::path& path, const KroneckerModule& m);

} // namespace grk
