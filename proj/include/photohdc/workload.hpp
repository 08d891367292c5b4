#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "photohdc/common.hpp"
#include "photohdc/hdc.hpp"

namespace photohdc {

inline constexpr std::int64_t kDefaultDim = 4096;

struct DatasetDescriptor {
  std::string name;
  std::int64_t d = 0;  // features, or average vertex count for graph sets
  std::int64_t classes = 0;
  std::int64_t n_train = 0;
  bool graph = false;

  bool supports(Scheme s) const { return graph == (s == Scheme::Graph); }
  bool operator==(const DatasetDescriptor&) const = default;
};

// Shape of a workload as seen by the scheduler.
struct WorkloadSpec {
  std::string name;
  std::int64_t d = 0;
  std::int64_t classes = 0;
  std::int64_t n_train = 0;
  std::vector<std::int64_t> per_class;
  std::int64_t dim = kDefaultDim;
  Scheme scheme = Scheme::Traditional;

  void validate() const;
};

const std::vector<DatasetDescriptor>& builtin_specs();
// Case-insensitive lookup; NotFoundError for unknown names.
const DatasetDescriptor& find_builtin(std::string_view name);

// Uniform split of n over k classes, remainder to the lowest indices.
std::vector<std::int64_t> class_balance(std::int64_t n, std::int64_t k);

// ParameterError when the descriptor does not apply to the scheme.
WorkloadSpec make_workload(const DatasetDescriptor& desc, Scheme scheme, std::int64_t dim = kDefaultDim);
std::vector<WorkloadSpec> builtin_workloads(Scheme scheme, std::int64_t dim = kDefaultDim);

WorkloadSpec workload_from(const hdc::LabeledDataset& data, Scheme scheme, std::int64_t dim,
                           std::string name = "dataset");
WorkloadSpec workload_from(std::span<const hdc::GraphInstance> graphs, std::size_t num_classes,
                           std::int64_t dim, std::string name = "graphs");

// CSV: comma separated numbers, one sample per row. label_column < 0 counts
// from the end (-1 = last column). Labels must be non-negative integers.
hdc::LabeledDataset load_csv(const std::filesystem::path& path, bool has_header, int label_column = -1);
void save_csv(const hdc::LabeledDataset& data, const std::filesystem::path& path);

// Blocks of "graph <V> <label>" followed by "u v" lines. '#' starts a comment.
std::vector<hdc::GraphInstance> load_edge_list(const std::filesystem::path& path);
void save_edge_list(std::span<const hdc::GraphInstance> graphs, const std::filesystem::path& path);

// Gaussian clusters with unit within-class sigma; class centres pairwise
// separation_sigma apart.
hdc::LabeledDataset synth_classification(std::size_t d, std::size_t classes, std::size_t n_per_class,
                                         double separation_sigma, std::uint64_t seed);

// Random simple graphs; vertex counts uniform in [avg/2, 3*avg/2]. Each class
// has its own edge density so the classes are learnable.
std::vector<hdc::GraphInstance> synth_graphs(std::size_t count, std::size_t classes,
                                             std::size_t avg_vertices, double avg_degree,
                                             std::uint64_t seed);

struct Split {
  hdc::LabeledDataset train;
  hdc::LabeledDataset test;
};

// Seeded shuffle, then the first round(fraction * n) samples train.
Split split_dataset(const hdc::LabeledDataset& data, double train_fraction, std::uint64_t seed);

struct GraphSplit {
  std::vector<hdc::GraphInstance> train;
  std::vector<hdc::GraphInstance> test;
};
GraphSplit split_graphs(std::span<const hdc::GraphInstance> graphs, double train_fraction, std::uint64_t seed);

}  // namespace photohdc
