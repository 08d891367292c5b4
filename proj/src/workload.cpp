#include "photohdc/workload.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <tuple>
#include <sstream>

#include "photohdc/rng.hpp"

namespace photohdc {

void WorkloadSpec::validate() const {
  if (d < 1) throw ParameterError("workload '" + name + "': d must be >= 1");
  if (classes < 1) throw ParameterError("workload '" + name + "': K must be >= 1");
  if (dim < 1) throw ParameterError("workload '" + name + "': D must be >= 1");
  if (n_train < 1) throw ParameterError("workload '" + name + "': no training samples");
  if (static_cast<std::int64_t>(per_class.size()) != classes) {
    throw ParameterError("workload '" + name + "': per-class counts do not cover K classes");
  }
  std::int64_t total = 0;
  for (auto n : per_class) {
    if (n < 0) throw ParameterError("workload '" + name + "': negative class count");
    total += n;
  }
  if (total != n_train) throw ParameterError("workload '" + name + "': class counts do not sum to n_train");
}

const std::vector<DatasetDescriptor>& builtin_specs() {
  static const std::vector<DatasetDescriptor> specs{
      {"ISOLET", 617, 26, 6238, false},  {"UCIHAR", 561, 12, 6231, false},
      {"FACE", 608, 2, 522441, false},   {"PAMAP", 75, 5, 611142, false},
      {"PECAN", 312, 3, 22290, false},   {"DD", 285, 2, 1178, true},
      {"ENZYMES", 33, 6, 600, true},     {"PROTEINS", 40, 2, 1113, true},
  };
  return specs;
}

const DatasetDescriptor& find_builtin(std::string_view name) {
  auto upper = [](std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
  };
  const std::string key = upper(name);
  for (const auto& d : builtin_specs()) {
    if (d.name == key) return d;
  }
  throw NotFoundError("unknown dataset '" + std::string(name) + "'");
}

std::vector<std::int64_t> class_balance(std::int64_t n, std::int64_t k) {
  if (k < 1 || n < 0) throw ParameterError("class_balance: need k >= 1 and n >= 0");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(k), n / k);
  for (std::int64_t i = 0; i < n % k; ++i) ++counts[static_cast<std::size_t>(i)];
  return counts;
}

WorkloadSpec make_workload(const DatasetDescriptor& desc, Scheme scheme, std::int64_t dim) {
  if (!desc.supports(scheme)) {
    throw ParameterError("dataset " + desc.name + " cannot be run with " + std::string(to_string(scheme)) +
                         " encoding");
  }
  WorkloadSpec w{desc.name, desc.d, desc.classes, desc.n_train, class_balance(desc.n_train, desc.classes),
                 dim, scheme};
  w.validate();
  return w;
}

std::vector<WorkloadSpec> builtin_workloads(Scheme scheme, std::int64_t dim) {
  std::vector<WorkloadSpec> out;
  for (const auto& d : builtin_specs()) {
    if (d.supports(scheme)) out.push_back(make_workload(d, scheme, dim));
  }
  return out;
}

WorkloadSpec workload_from(const hdc::LabeledDataset& data, Scheme scheme, std::int64_t dim, std::string name) {
  if (scheme == Scheme::Graph) throw ParameterError("tabular dataset cannot use graph encoding");
  data.validate();
  WorkloadSpec w;
  w.name = std::move(name);
  w.d = static_cast<std::int64_t>(data.feature_count());
  w.classes = static_cast<std::int64_t>(data.num_classes);
  w.n_train = static_cast<std::int64_t>(data.samples.size());
  for (auto c : data.per_class_counts()) w.per_class.push_back(static_cast<std::int64_t>(c));
  w.dim = dim;
  w.scheme = scheme;
  w.validate();
  return w;
}

WorkloadSpec workload_from(std::span<const hdc::GraphInstance> graphs, std::size_t num_classes, std::int64_t dim,
                           std::string name) {
  if (graphs.empty()) throw ParameterError("no graphs");
  WorkloadSpec w;
  w.name = std::move(name);
  std::size_t vertices = 0;
  w.per_class.assign(num_classes, 0);
  for (const auto& g : graphs) {
    if (g.label >= num_classes) throw ParameterError("graph label out of range");
    vertices += g.vertex_count;
    ++w.per_class[g.label];
  }
  w.d = std::max<std::int64_t>(1, std::llround(static_cast<double>(vertices) / static_cast<double>(graphs.size())));
  w.classes = static_cast<std::int64_t>(num_classes);
  w.n_train = static_cast<std::int64_t>(graphs.size());
  w.dim = dim;
  w.scheme = Scheme::Graph;
  w.validate();
  return w;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_double(std::string_view s, double& v) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

bool parse_index(std::string_view s, std::size_t& v) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open '" + path.string() + "'");
  return in;
}

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

}  // namespace

hdc::LabeledDataset load_csv(const std::filesystem::path& path, bool has_header, int label_column) {
  auto in = open_input(path);
  hdc::LabeledDataset data;
  std::string raw;
  std::size_t line_no = 0;
  std::size_t width = 0;
  std::size_t max_label = 0;
  bool first_row = true;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (has_header && first_row) {
      first_row = false;
      width = split_commas(line).size();
      continue;
    }
    first_row = false;
    const auto cells = split_commas(line);
    if (width == 0) width = cells.size();
    if (cells.size() != width) {
      throw ParseError(where(path, line_no) + "expected " + std::to_string(width) + " fields, got " +
                           std::to_string(cells.size()),
                       line_no);
    }
    if (width < 2) throw ParseError(where(path, line_no) + "need at least one feature and a label", line_no);
    const int w = static_cast<int>(width);
    const int lc = label_column < 0 ? w + label_column : label_column;
    if (lc < 0 || lc >= w) throw ParameterError("label column " + std::to_string(label_column) + " out of range");

    hdc::Sample s;
    for (int i = 0; i < w; ++i) {
      const auto cell = cells[static_cast<std::size_t>(i)];
      if (i == lc) {
        if (!parse_index(cell, s.label)) {
          throw ParseError(where(path, line_no) + "label '" + std::string(cell) + "' is not a non-negative integer",
                           line_no);
        }
        continue;
      }
      double v = 0.0;
      if (!parse_double(cell, v) || !std::isfinite(v)) {
        throw ParseError(where(path, line_no) + "field " + std::to_string(i + 1) + " '" + std::string(cell) +
                             "' is not a number",
                         line_no);
      }
      s.features.push_back(v);
    }
    max_label = std::max(max_label, s.label);
    data.samples.push_back(std::move(s));
  }
  if (data.samples.empty()) throw ParseError(path.string() + ": no data rows", 0);
  data.num_classes = max_label + 1;
  return data;
}

void save_csv(const hdc::LabeledDataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw NotFoundError("cannot write '" + path.string() + "'");
  for (const auto& s : data.samples) {
    for (double v : s.features) out << format_double(v) << ',';
    out << s.label << '\n';
  }
}

std::vector<hdc::GraphInstance> load_edge_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<hdc::GraphInstance> graphs;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(std::string_view(raw).substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::istringstream ss{std::string(line)};
    std::string first;
    ss >> first;
    if (first == "graph") {
      long long v = -1, label = -1;
      std::string extra;
      if (!(ss >> v >> label) || (ss >> extra) || v < 0 || label < 0) {
        throw ParseError(where(path, line_no) + "expected 'graph <V> <label>'", line_no);
      }
      graphs.push_back({static_cast<std::size_t>(v), {}, static_cast<std::size_t>(label)});
      seen.clear();
      continue;
    }
    if (graphs.empty()) throw ParseError(where(path, line_no) + "edge before any 'graph' header", line_no);
    long long u = -1, w = -1;
    std::string extra;
    std::istringstream es{std::string(line)};
    if (!(es >> u >> w) || (es >> extra) || u < 0 || w < 0) {
      throw ParseError(where(path, line_no) + "expected 'u v'", line_no);
    }
    auto& g = graphs.back();
    const auto a = static_cast<std::size_t>(u), b = static_cast<std::size_t>(w);
    if (a >= g.vertex_count || b >= g.vertex_count) {
      throw ParseError(where(path, line_no) + "vertex index out of range for graph with " +
                           std::to_string(g.vertex_count) + " vertices",
                       line_no);
    }
    if (a == b) throw ParseError(where(path, line_no) + "self-loop on vertex " + std::to_string(a), line_no);
    if (!seen.insert(std::minmax(a, b)).second) {
      throw ParseError(where(path, line_no) + "duplicate edge " + std::to_string(a) + " " + std::to_string(b),
                       line_no);
    }
    g.edges.emplace_back(a, b);
  }
  return graphs;
}

void save_edge_list(std::span<const hdc::GraphInstance> graphs, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw NotFoundError("cannot write '" + path.string() + "'");
  for (const auto& g : graphs) {
    out << "graph " << g.vertex_count << ' ' << g.label << '\n';
    for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
  }
}

hdc::LabeledDataset synth_classification(std::size_t d, std::size_t classes, std::size_t n_per_class,
                                         double separation_sigma, std::uint64_t seed) {
  if (d < 1 || classes < 1) throw ParameterError("synth_classification: d and K must be >= 1");
  if (!(separation_sigma >= 0.0)) throw ParameterError("synth_classification: separation must be >= 0");
  Rng rng(seed);
  // Centres at distance s/sqrt(2) from the origin along orthogonal axes are
  // pairwise s apart. With more classes than axes, random directions are used.
  const double radius = separation_sigma / std::sqrt(2.0);
  std::vector<std::vector<double>> centres(classes, std::vector<double>(d, 0.0));
  for (std::size_t k = 0; k < classes; ++k) {
    if (classes <= d) {
      centres[k][k] = radius;
      continue;
    }
    double norm = 0.0;
    for (auto& c : centres[k]) {
      c = rng.normal();
      norm += c * c;
    }
    norm = std::sqrt(norm);
    for (auto& c : centres[k]) c *= radius / norm;
  }
  hdc::LabeledDataset data;
  data.num_classes = classes;
  for (std::size_t n = 0; n < n_per_class; ++n) {
    for (std::size_t k = 0; k < classes; ++k) {
      hdc::Sample s{std::vector<double>(d), k};
      for (std::size_t i = 0; i < d; ++i) s.features[i] = centres[k][i] + rng.normal();
      data.samples.push_back(std::move(s));
    }
  }
  return data;
}

std::vector<hdc::GraphInstance> synth_graphs(std::size_t count, std::size_t classes, std::size_t avg_vertices,
                                             double avg_degree, std::uint64_t seed) {
  if (classes < 1 || avg_vertices < 2) throw ParameterError("synth_graphs: need K >= 1 and avg_vertices >= 2");
  Rng rng(seed);
  const std::size_t lo = std::max<std::size_t>(2, avg_vertices / 2);
  const std::size_t hi = std::max(lo, avg_vertices + (avg_vertices - lo));
  // Density alone is invisible to cosine similarity, so each class also gets
  // a pool of signature edges that half of its edges are drawn from.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> motifs(classes);
  for (auto& pool : motifs) {
    while (pool.size() < avg_vertices) {
      const std::size_t u = rng.bounded(lo), v = rng.bounded(lo);
      if (u != v) pool.push_back(std::minmax(u, v));
    }
  }
  std::vector<hdc::GraphInstance> graphs;
  graphs.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    hdc::GraphInstance g;
    g.label = n % classes;
    g.vertex_count = lo + rng.bounded(hi - lo + 1);
    const double degree = avg_degree * (1.0 + static_cast<double>(g.label)) / (1.0 + 0.5 * static_cast<double>(classes - 1));
    const std::size_t max_edges = g.vertex_count * (g.vertex_count - 1) / 2;
    const auto target = std::min<std::size_t>(
        max_edges, static_cast<std::size_t>(std::llround(degree * static_cast<double>(g.vertex_count) / 2.0)));
    std::set<std::pair<std::size_t, std::size_t>> seen;
    while (g.edges.size() < target) {
      std::size_t u = rng.bounded(g.vertex_count);
      std::size_t v = rng.bounded(g.vertex_count);
      if (rng.bounded(2) == 0) std::tie(u, v) = motifs[g.label][rng.bounded(motifs[g.label].size())];
      if (u == v || !seen.insert(std::minmax(u, v)).second) continue;
      g.edges.emplace_back(u, v);
    }
    graphs.push_back(std::move(g));
  }
  return graphs;
}

namespace {

std::vector<std::size_t> shuffled(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.bounded(i)]);
  return order;
}

std::size_t train_count(std::size_t n, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ParameterError("train fraction must be in (0, 1]");
  return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
}

}  // namespace

Split split_dataset(const hdc::LabeledDataset& data, double train_fraction, std::uint64_t seed) {
  const auto order = shuffled(data.samples.size(), seed);
  const auto n_train = train_count(order.size(), train_fraction);
  Split s;
  s.train.num_classes = s.test.num_classes = data.num_classes;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < n_train ? s.train : s.test).samples.push_back(data.samples[order[i]]);
  }
  return s;
}

GraphSplit split_graphs(std::span<const hdc::GraphInstance> graphs, double train_fraction, std::uint64_t seed) {
  const auto order = shuffled(graphs.size(), seed);
  const auto n_train = train_count(order.size(), train_fraction);
  GraphSplit s;
  for (std::size_t i = 0; i < order.size(); ++i) (i < n_train ? s.train : s.test).push_back(graphs[order[i]]);
  return s;
}

}  // namespace photohdc
