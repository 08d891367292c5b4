#include "photohdc/model_io.hpp"

#include <fstream>

#include "json.hpp"
#include "photohdc/device.hpp"

namespace photohdc {

using nlohmann::json;
using nlohmann::ordered_json;

hdc::EncodingModel ModelFile::encoding() const {
  return hdc::generate_model(scheme, features, dim, levels, seed, feature_range);
}

std::string dump_model(const ModelFile& m) {
  ordered_json j;
  j["scheme"] = std::string(to_string(m.scheme));
  j["features"] = m.features;
  j["dim"] = m.dim;
  j["levels"] = m.levels;
  j["seed"] = m.seed;
  j["bits"] = m.trained.bits;
  ordered_json ranges = ordered_json::array();
  for (const auto& r : m.feature_range) ranges.push_back({r.min, r.max});
  j["feature_range"] = ranges;
  j["query_scale"] = m.trained.query_scale;
  j["scales"] = m.trained.scales;
  ordered_json chvs = ordered_json::array();
  for (const auto& c : m.trained.chvs) chvs.push_back(std::vector<std::int64_t>(c.begin(), c.end()));
  j["chvs"] = chvs;
  return j.dump() + "\n";
}

ModelFile parse_model(const std::string& text) {
  try {
    const json j = json::parse(text);
    ModelFile m;
    m.scheme = parse_scheme(j.at("scheme").get<std::string>());
    m.features = j.at("features").get<std::size_t>();
    m.dim = j.at("dim").get<std::size_t>();
    m.levels = j.at("levels").get<std::size_t>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.trained.bits = j.at("bits").get<int>();
    for (const auto& r : j.at("feature_range")) m.feature_range.push_back({r.at(0).get<double>(), r.at(1).get<double>()});
    m.trained.query_scale = j.at("query_scale").get<std::int64_t>();
    m.trained.scales = j.at("scales").get<std::vector<std::int64_t>>();
    for (const auto& c : j.at("chvs")) {
      hdc::Hypervector hv(c.get<std::vector<std::int64_t>>());
      if (hv.size() != m.dim) throw ParseError("model: CHV length does not match dim", 0);
      m.trained.chvs.push_back(std::move(hv));
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("model: ") + e.what(), 0);
  }
}

void save_model(const ModelFile& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NotFoundError("cannot write '" + path.string() + "'");
  out << dump_model(m);
}

ModelFile load_model(const std::filesystem::path& path) { return parse_model(read_file(path)); }

}  // namespace photohdc
