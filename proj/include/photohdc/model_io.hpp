#pragma once

#include <filesystem>
#include <string>

#include "photohdc/hdc.hpp"

namespace photohdc {

// A trained classifier on disk. The encoding matrices are not stored; they are
// regenerated from (scheme, d, D, m, seed, feature_range).
struct ModelFile {
  Scheme scheme = Scheme::Traditional;
  std::size_t features = 0;
  std::size_t dim = 0;
  std::size_t levels = 0;
  std::uint64_t seed = 0;
  std::vector<hdc::FeatureRange> feature_range;
  hdc::TrainedModel trained;

  hdc::EncodingModel encoding() const;
};

std::string dump_model(const ModelFile& m);
ModelFile parse_model(const std::string& json_text);
void save_model(const ModelFile& m, const std::filesystem::path& path);
ModelFile load_model(const std::filesystem::path& path);

}  // namespace photohdc
