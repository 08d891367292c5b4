#pragma once

// Functional HDC pipeline: encoders, bundling, quantization, single-pass
// training and cosine-similarity inference. Everything is integer-exact up to
// the final cosine, which the datapath golden model reproduces bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "photohdc/common.hpp"

namespace photohdc::hdc {

inline constexpr std::size_t kDefaultLevels = 32;

class Hypervector {
 public:
  using value_type = std::int64_t;

  Hypervector() = default;
  explicit Hypervector(std::size_t dim) : values_(dim, 0) {}
  explicit Hypervector(std::vector<value_type> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  value_type& operator[](std::size_t i) { return values_[i]; }
  value_type operator[](std::size_t i) const { return values_[i]; }
  std::span<const value_type> values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  Hypervector& operator+=(const Hypervector& other);
  Hypervector& operator*=(value_type k);
  friend Hypervector operator+(Hypervector a, const Hypervector& b) { return a += b; }
  friend Hypervector operator*(value_type k, Hypervector a) { return a *= k; }
  Hypervector operator-() const { return -1 * *this; }
  bool operator==(const Hypervector&) const = default;

  value_type max_abs() const noexcept;
  std::int64_t dot(const Hypervector& other) const;

 private:
  std::vector<value_type> values_;
};

// Element-wise product (bind for multi-bit hypervectors).
Hypervector bind(const Hypervector& a, const Hypervector& b);

struct FeatureRange {
  double min = 0.0;
  double max = 1.0;
  bool operator==(const FeatureRange&) const = default;
};

struct EncodingModel {
  Scheme scheme = Scheme::Traditional;
  std::size_t dim = 0;       // D
  std::size_t features = 0;  // d, or node-table size for graphs
  std::vector<Hypervector> base;
  std::vector<Hypervector> levels;  // empty for Traditional
  std::uint64_t seed = 0;
  std::vector<FeatureRange> feature_range;
};

EncodingModel generate_model(Scheme scheme, std::size_t features, std::size_t dim,
                             std::size_t levels, std::uint64_t seed,
                             std::vector<FeatureRange> feature_range = {});

// Affine map of [min, max] onto [0, 2^bits - 1]; out-of-range values clamp,
// constant features map to 0.
std::vector<std::int64_t> quantize_features(std::span<const double> x, int bits,
                                            std::span<const FeatureRange> range);

// Level index in [0, levels) for feature i. Sets *clamped when x was outside
// the feature range.
std::size_t level_index(const EncodingModel& model, std::size_t feature, double x,
                        bool* clamped = nullptr);

struct EncodeStats {
  std::size_t clamped = 0;
};

Hypervector encode_traditional(const EncodingModel& model, std::span<const std::int64_t> x);
Hypervector encode_record(const EncodingModel& model, std::span<const double> x,
                          EncodeStats* stats = nullptr);

struct GraphInstance {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t label = 0;

  // Throws ParameterError on self-loops, duplicates or out-of-range endpoints.
  void validate() const;
};

// m_i = sum of node hypervectors of i's neighbours, for every vertex of g.
std::vector<Hypervector> memory_hypervectors(const EncodingModel& model, const GraphInstance& g);
Hypervector encode_graph(const EncodingModel& model, const GraphInstance& g);

Hypervector bundle(std::span<const Hypervector> hvs);

struct Quantized {
  Hypervector hv;
  std::int64_t scale = 1;
};

// s = max(1, ceil(max|hv| / (2^(b-1) - 1))), elements round(hv / s).
Quantized normalize_quantize(const Hypervector& hv, int bits);

struct Sample {
  std::vector<double> features;
  std::size_t label = 0;
};

struct LabeledDataset {
  std::vector<Sample> samples;
  std::size_t num_classes = 0;

  std::size_t feature_count() const { return samples.empty() ? 0 : samples.front().features.size(); }
  std::vector<std::size_t> per_class_counts() const;
  std::vector<FeatureRange> feature_ranges() const;
  // Throws ParameterError on ragged rows or labels >= num_classes.
  void validate() const;
};

struct TrainedModel {
  std::vector<Hypervector> chvs;
  int bits = 4;
  std::vector<std::int64_t> scales;  // per-class normalization divisor
  std::int64_t query_scale = 1;      // fixed divisor applied to encoded queries
};

// Encoding of one raw sample (Traditional quantizes features to `bits` first).
Hypervector encode_sample(const EncodingModel& model, std::span<const double> x, int bits);

TrainedModel train_single_pass(const LabeledDataset& data, const EncodingModel& model, int bits);
TrainedModel train_single_pass(std::span<const GraphInstance> graphs, std::size_t num_classes,
                               const EncodingModel& model, int bits);

// Elementwise round(hv / query_scale), clamped to the signed b-bit range.
Hypervector quantize_query(const TrainedModel& trained, const Hypervector& hv);

// dot / (sqrt(|a|^2) * sqrt(|b|^2)); 0 when either norm is 0.
double cosine_from_dot(std::int64_t dot, std::int64_t norm2_a, std::int64_t norm2_b);
double cosine_similarity(const Hypervector& a, const Hypervector& b);

std::vector<std::int64_t> dot_scores(const TrainedModel& trained, const Hypervector& query);
std::vector<double> similarity_scores(const TrainedModel& trained, const Hypervector& query);
// argmax of cosine similarity, ties to the lowest class index.
std::size_t classify(const TrainedModel& trained, const Hypervector& query);

std::size_t predict(const EncodingModel& model, const TrainedModel& trained,
                    std::span<const double> x);
std::size_t predict(const EncodingModel& model, const TrainedModel& trained,
                    const GraphInstance& g);
double accuracy(const EncodingModel& model, const TrainedModel& trained, const LabeledDataset& data);

}  // namespace photohdc::hdc
