#include "photohdc/hdc.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "photohdc/rng.hpp"

namespace photohdc::hdc {

namespace {

void require_same_size(const Hypervector& a, const Hypervector& b) {
  if (a.size() != b.size()) {
    throw ParameterError("hypervector length mismatch: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
}

std::int64_t max_signed(int bits) { return (std::int64_t{1} << (bits - 1)) - 1; }

// round(a / s), half away from zero, for s > 0.
std::int64_t div_round(std::int64_t a, std::int64_t s) {
  const std::int64_t mag = (2 * (a < 0 ? -a : a) + s) / (2 * s);
  return a < 0 ? -mag : mag;
}

Hypervector random_bipolar(Rng& rng, std::size_t dim) {
  Hypervector hv(dim);
  for (std::size_t j = 0; j < dim; ++j) hv[j] = rng.sign();
  return hv;
}

// Maps x in [lo, hi] onto [0, top], rounding half away from zero.
std::int64_t affine_level(double x, const FeatureRange& r, std::int64_t top, bool* clamped) {
  if (clamped) *clamped = x < r.min || x > r.max;
  if (!(r.max > r.min)) return 0;
  const double t = std::clamp((x - r.min) / (r.max - r.min), 0.0, 1.0);
  return round_half_away(t * static_cast<double>(top));
}

}  // namespace

Hypervector& Hypervector::operator+=(const Hypervector& other) {
  require_same_size(*this, other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  return *this;
}

Hypervector& Hypervector::operator*=(value_type k) {
  for (auto& v : values_) v *= k;
  return *this;
}

Hypervector::value_type Hypervector::max_abs() const noexcept {
  value_type m = 0;
  for (auto v : values_) m = std::max(m, v < 0 ? -v : v);
  return m;
}

std::int64_t Hypervector::dot(const Hypervector& other) const {
  require_same_size(*this, other);
  std::int64_t acc = 0;
  for (std::size_t j = 0; j < values_.size(); ++j) acc += values_[j] * other.values_[j];
  return acc;
}

Hypervector bind(const Hypervector& a, const Hypervector& b) {
  require_same_size(a, b);
  Hypervector out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] * b[j];
  return out;
}

EncodingModel generate_model(Scheme scheme, std::size_t features, std::size_t dim,
                             std::size_t levels, std::uint64_t seed,
                             std::vector<FeatureRange> feature_range) {
  if (features < 1 || dim < 1) throw ParameterError("generate_model: d and D must be >= 1");
  if (scheme != Scheme::Traditional && levels < 2) {
    throw ParameterError("generate_model: record/graph encoding needs m >= 2 levels");
  }
  if (!feature_range.empty() && feature_range.size() != features) {
    throw ParameterError("generate_model: feature_range has " + std::to_string(feature_range.size()) +
                         " entries, expected " + std::to_string(features));
  }

  EncodingModel model;
  model.scheme = scheme;
  model.dim = dim;
  model.features = features;
  model.seed = seed;
  model.feature_range = feature_range.empty() && scheme != Scheme::Graph
                            ? std::vector<FeatureRange>(features, FeatureRange{})
                            : std::move(feature_range);

  Rng rng(seed);
  model.base.reserve(features);
  for (std::size_t i = 0; i < features; ++i) model.base.push_back(random_bipolar(rng, dim));

  if (scheme != Scheme::Traditional) {
    // L_1 random; each next level flips a fresh slice of a random permutation
    // so that L_1 and L_m end up D/2 apart.
    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = dim; i > 1; --i) std::swap(order[i - 1], order[rng.bounded(i)]);

    const std::size_t per_step = dim / (2 * (levels - 1));
    model.levels.reserve(levels);
    model.levels.push_back(random_bipolar(rng, dim));
    for (std::size_t l = 1; l < levels; ++l) {
      Hypervector next = model.levels.back();
      for (std::size_t k = (l - 1) * per_step; k < l * per_step; ++k) next[order[k]] = -next[order[k]];
      model.levels.push_back(std::move(next));
    }
  }
  return model;
}

std::vector<std::int64_t> quantize_features(std::span<const double> x, int bits,
                                            std::span<const FeatureRange> range) {
  if (range.size() != x.size()) throw ParameterError("quantize_features: range size mismatch");
  const std::int64_t top = (std::int64_t{1} << bits) - 1;
  std::vector<std::int64_t> q(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) q[i] = affine_level(x[i], range[i], top, nullptr);
  return q;
}

std::size_t level_index(const EncodingModel& model, std::size_t feature, double x, bool* clamped) {
  const auto top = static_cast<std::int64_t>(model.levels.size()) - 1;
  return static_cast<std::size_t>(affine_level(x, model.feature_range.at(feature), top, clamped));
}

Hypervector encode_traditional(const EncodingModel& model, std::span<const std::int64_t> x) {
  if (model.scheme != Scheme::Traditional) throw ParameterError("encode_traditional: model is not traditional");
  if (x.size() != model.features) {
    throw ParameterError("encode_traditional: expected " + std::to_string(model.features) +
                         " features, got " + std::to_string(x.size()));
  }
  Hypervector out(model.dim);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    const auto& row = model.base[i];
    for (std::size_t j = 0; j < model.dim; ++j) out[j] += row[j] * x[i];
  }
  return out;
}

Hypervector encode_record(const EncodingModel& model, std::span<const double> x, EncodeStats* stats) {
  if (model.scheme != Scheme::Record) throw ParameterError("encode_record: model is not record-based");
  if (x.size() != model.features) {
    throw ParameterError("encode_record: expected " + std::to_string(model.features) +
                         " features, got " + std::to_string(x.size()));
  }
  if (model.levels.size() < 2) throw ParameterError("encode_record: level table not populated");
  Hypervector out(model.dim);
  for (std::size_t i = 0; i < x.size(); ++i) {
    bool clamped = false;
    const auto& level = model.levels[level_index(model, i, x[i], &clamped)];
    if (clamped && stats) ++stats->clamped;
    const auto& row = model.base[i];
    for (std::size_t j = 0; j < model.dim; ++j) out[j] += level[j] * row[j];
  }
  return out;
}

void GraphInstance::validate() const {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) {
      throw ParameterError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                           ") out of range for " + std::to_string(vertex_count) + " vertices");
    }
    if (u == v) throw ParameterError("self-loop on vertex " + std::to_string(u));
    if (!seen.insert(std::minmax(u, v)).second) {
      throw ParameterError("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }
  }
}

std::vector<Hypervector> memory_hypervectors(const EncodingModel& model, const GraphInstance& g) {
  if (model.scheme != Scheme::Graph) throw ParameterError("encode_graph: model is not a graph model");
  if (g.vertex_count > model.features) {
    throw ParameterError("graph has " + std::to_string(g.vertex_count) +
                         " vertices but node table holds " + std::to_string(model.features));
  }
  g.validate();
  std::vector<Hypervector> memory(g.vertex_count, Hypervector(model.dim));
  for (auto [u, v] : g.edges) {
    memory[u] += model.base[v];
    memory[v] += model.base[u];
  }
  return memory;
}

Hypervector encode_graph(const EncodingModel& model, const GraphInstance& g) {
  const auto memory = memory_hypervectors(model, g);
  Hypervector out(model.dim);
  for (std::size_t i = 0; i < g.vertex_count; ++i) {
    for (std::size_t j = 0; j < model.dim; ++j) out[j] += model.base[i][j] * memory[i][j];
  }
  for (std::size_t j = 0; j < model.dim; ++j) out[j] /= 2;  // truncates toward zero
  return out;
}

Hypervector bundle(std::span<const Hypervector> hvs) {
  if (hvs.empty()) throw ParameterError("bundle: empty list");
  Hypervector out(hvs.front().size());
  for (const auto& hv : hvs) out += hv;
  return out;
}

Quantized normalize_quantize(const Hypervector& hv, int bits) {
  if (bits < 2) throw ParameterError("normalize_quantize: bits must be >= 2");
  const std::int64_t top = max_signed(bits);
  const std::int64_t scale = std::max<std::int64_t>(1, ceil_div(hv.max_abs(), top));
  Quantized q{Hypervector(hv.size()), scale};
  for (std::size_t j = 0; j < hv.size(); ++j) q.hv[j] = div_round(hv[j], scale);
  return q;
}

std::vector<std::size_t> LabeledDataset::per_class_counts() const {
  std::vector<std::size_t> counts(num_classes, 0);
  for (const auto& s : samples) ++counts.at(s.label);
  return counts;
}

std::vector<FeatureRange> LabeledDataset::feature_ranges() const {
  std::vector<FeatureRange> ranges;
  if (samples.empty()) return ranges;
  const auto& first = samples.front().features;
  for (double v : first) ranges.push_back({v, v});
  for (const auto& s : samples) {
    for (std::size_t i = 0; i < ranges.size(); ++i) {
      ranges[i].min = std::min(ranges[i].min, s.features[i]);
      ranges[i].max = std::max(ranges[i].max, s.features[i]);
    }
  }
  return ranges;
}

void LabeledDataset::validate() const {
  const std::size_t d = feature_count();
  for (std::size_t n = 0; n < samples.size(); ++n) {
    if (samples[n].features.size() != d) {
      throw ParameterError("sample " + std::to_string(n) + " has " +
                           std::to_string(samples[n].features.size()) + " features, expected " +
                           std::to_string(d));
    }
    if (samples[n].label >= num_classes) {
      throw ParameterError("sample " + std::to_string(n) + " label " + std::to_string(samples[n].label) +
                           " >= class count " + std::to_string(num_classes));
    }
  }
}

Hypervector encode_sample(const EncodingModel& model, std::span<const double> x, int bits) {
  switch (model.scheme) {
    case Scheme::Traditional: {
      const auto q = quantize_features(x, bits, model.feature_range);
      return encode_traditional(model, q);
    }
    case Scheme::Record:
      return encode_record(model, x);
    case Scheme::Graph:
      break;
  }
  throw ParameterError("encode_sample: graph models encode GraphInstance inputs");
}

namespace {

template <typename Encode>
TrainedModel train_classes(std::size_t count, std::size_t num_classes, int bits,
                           std::size_t dim, Encode&& encode_at) {
  if (count == 0) throw ParameterError("train_single_pass: empty dataset");
  if (bits < 2) throw ParameterError("train_single_pass: bits must be >= 2");
  std::vector<Hypervector> sums(num_classes, Hypervector(dim));
  std::vector<std::size_t> seen(num_classes, 0);
  std::int64_t max_abs = 0;
  for (std::size_t n = 0; n < count; ++n) {
    auto [hv, label] = encode_at(n);
    max_abs = std::max(max_abs, hv.max_abs());
    sums[label] += hv;
    ++seen[label];
  }
  TrainedModel trained;
  trained.bits = bits;
  for (std::size_t k = 0; k < num_classes; ++k) {
    if (seen[k] == 0) throw ParameterError("train_single_pass: class " + std::to_string(k) + " has no samples");
    auto q = normalize_quantize(sums[k], bits);
    trained.chvs.push_back(std::move(q.hv));
    trained.scales.push_back(q.scale);
  }
  trained.query_scale = std::max<std::int64_t>(1, ceil_div(max_abs, max_signed(bits)));
  return trained;
}

}  // namespace

TrainedModel train_single_pass(const LabeledDataset& data, const EncodingModel& model, int bits) {
  data.validate();
  return train_classes(data.samples.size(), data.num_classes, bits, model.dim, [&](std::size_t n) {
    const auto& s = data.samples[n];
    return std::pair{encode_sample(model, s.features, bits), s.label};
  });
}

TrainedModel train_single_pass(std::span<const GraphInstance> graphs, std::size_t num_classes,
                               const EncodingModel& model, int bits) {
  for (const auto& g : graphs) {
    if (g.label >= num_classes) throw ParameterError("graph label " + std::to_string(g.label) + " out of range");
  }
  return train_classes(graphs.size(), num_classes, bits, model.dim, [&](std::size_t n) {
    return std::pair{encode_graph(model, graphs[n]), graphs[n].label};
  });
}

Hypervector quantize_query(const TrainedModel& trained, const Hypervector& hv) {
  const std::int64_t top = max_signed(trained.bits);
  Hypervector q(hv.size());
  for (std::size_t j = 0; j < hv.size(); ++j) {
    q[j] = std::clamp(div_round(hv[j], trained.query_scale), -top - 1, top);
  }
  return q;
}

double cosine_from_dot(std::int64_t dot, std::int64_t norm2_a, std::int64_t norm2_b) {
  if (norm2_a == 0 || norm2_b == 0) return 0.0;
  const double denom = std::sqrt(static_cast<double>(norm2_a) * static_cast<double>(norm2_b));
  return std::clamp(static_cast<double>(dot) / denom, -1.0, 1.0);
}

double cosine_similarity(const Hypervector& a, const Hypervector& b) {
  return cosine_from_dot(a.dot(b), a.dot(a), b.dot(b));
}

std::vector<std::int64_t> dot_scores(const TrainedModel& trained, const Hypervector& query) {
  std::vector<std::int64_t> out;
  out.reserve(trained.chvs.size());
  for (const auto& c : trained.chvs) out.push_back(c.dot(query));
  return out;
}

std::vector<double> similarity_scores(const TrainedModel& trained, const Hypervector& query) {
  std::vector<double> out;
  out.reserve(trained.chvs.size());
  const std::int64_t qn = query.dot(query);
  for (const auto& c : trained.chvs) out.push_back(cosine_from_dot(c.dot(query), c.dot(c), qn));
  return out;
}

std::size_t classify(const TrainedModel& trained, const Hypervector& query) {
  const auto scores = similarity_scores(trained, query);
  if (scores.empty()) throw ParameterError("classify: model has no class hypervectors");
  return static_cast<std::size_t>(std::max_element(scores.begin(), scores.end()) - scores.begin());
}

std::size_t predict(const EncodingModel& model, const TrainedModel& trained, std::span<const double> x) {
  return classify(trained, quantize_query(trained, encode_sample(model, x, trained.bits)));
}

std::size_t predict(const EncodingModel& model, const TrainedModel& trained, const GraphInstance& g) {
  return classify(trained, quantize_query(trained, encode_graph(model, g)));
}

double accuracy(const EncodingModel& model, const TrainedModel& trained, const LabeledDataset& data) {
  if (data.samples.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& s : data.samples) hits += predict(model, trained, s.features) == s.label;
  return static_cast<double>(hits) / static_cast<double>(data.samples.size());
}

}  // namespace photohdc::hdc
