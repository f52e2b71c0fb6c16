#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "entb/loo.hpp"
#include "entb/qstate.hpp"

namespace entb {

// {"dims":[m,n],"matrix":[[re,im],...]} with (m n)^2 row-major entries.
// Parsing checks structure only; physical validity is validate_density's job.
struct StateFile {
  BipartiteDims dims;
  ComplexMatrix matrix;
};

StateFile parse_state_json(std::string_view text);
std::string dump_state_json(const ComplexMatrix& mat, BipartiteDims dims);

StateFile read_state_file(const std::filesystem::path& path);
void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho);

// {"dims":[m,n],"set_a":[obs...],"set_b":[obs...]}, each observable a
// row-major list of [re,im]. set_a is written unpadded (m^2 entries).
std::string dump_loo_pair_json(const LooPair& pair);
LooPair parse_loo_pair_json(std::string_view text);

LooPair read_loo_pair_file(const std::filesystem::path& path);
void write_loo_pair_file(const std::filesystem::path& path, const LooPair& pair);

}  // namespace entb
