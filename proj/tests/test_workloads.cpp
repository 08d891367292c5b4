#include <filesystem>
#include <fstream>
#include <numeric>

#include <unistd.h>

#include "doctest.h"
#include "photohdc/hdc.hpp"
#include "photohdc/workload.hpp"

using namespace photohdc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("photohdc_wl_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int n = 0;
    return n;
  }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return path / name;
  }
};

template <typename F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("built-in descriptors equal the dataset table") {
  struct Row {
    const char* name;
    std::int64_t d, k, n;
    bool graph;
  };
  const Row table[] = {{"ISOLET", 617, 26, 6238, false}, {"UCIHAR", 561, 12, 6231, false},
                       {"FACE", 608, 2, 522441, false},  {"PAMAP", 75, 5, 611142, false},
                       {"PECAN", 312, 3, 22290, false},  {"DD", 285, 2, 1178, true},
                       {"ENZYMES", 33, 6, 600, true},    {"PROTEINS", 40, 2, 1113, true}};
  const auto& specs = builtin_specs();
  REQUIRE(specs.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CAPTURE(table[i].name);
    CHECK(specs[i].name == table[i].name);
    CHECK(specs[i].d == table[i].d);
    CHECK(specs[i].classes == table[i].k);
    CHECK(specs[i].n_train == table[i].n);
    CHECK(specs[i].graph == table[i].graph);
  }
  CHECK(find_builtin("isolet").d == 617);
  CHECK(find_builtin("DD").d == 285);
  CHECK_THROWS_AS(find_builtin("MNIST"), NotFoundError);
}

TEST_CASE("class balance and workload shapes") {
  CHECK(class_balance(10, 3) == std::vector<std::int64_t>{4, 3, 3});
  CHECK(class_balance(6238, 26)[0] == 240);
  for (const auto& d : builtin_specs()) {
    const auto w = make_workload(d, d.graph ? Scheme::Graph : Scheme::Traditional);
    CHECK(std::accumulate(w.per_class.begin(), w.per_class.end(), std::int64_t{0}) == d.n_train);
    CHECK(w.dim == 4096);
  }
  CHECK_THROWS_AS(make_workload(find_builtin("DD"), Scheme::Traditional), ParameterError);
  CHECK_THROWS_AS(make_workload(find_builtin("ISOLET"), Scheme::Graph), ParameterError);
  CHECK(builtin_workloads(Scheme::Record).size() == 5);
  CHECK(builtin_workloads(Scheme::Graph).size() == 3);
}

TEST_CASE("load_csv") {
  TempDir tmp;
  const auto ok = tmp.write("a.csv", "0.5,1.0,0\n0.1,0.2,1\n0.3,0.9,1\n");
  const auto data = load_csv(ok, false);
  CHECK(data.feature_count() == 2);
  CHECK(data.num_classes == 2);
  CHECK(data.per_class_counts() == std::vector<std::size_t>{1, 2});
  CHECK(data.feature_ranges()[1].max == 1.0);

  const auto header = tmp.write("h.csv", "label,x,y\n2,1,2\n0,3,4\n");
  const auto hd = load_csv(header, true, 0);
  CHECK(hd.num_classes == 3);
  CHECK(hd.samples[0].features == std::vector<double>{1, 2});

  const auto ragged = tmp.write("r.csv", "1,2,0\n1,2,3,0\n");
  const auto msg = error_of([&] { load_csv(ragged, false); });
  CHECK(msg.find(":2:") != std::string::npos);
  try {
    load_csv(ragged, false);
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(load_csv(tmp.write("l.csv", "1,2,0.5\n"), false), ParseError);
  CHECK_THROWS_AS(load_csv(tmp.write("n.csv", "1,x,0\n"), false), ParseError);
  CHECK_THROWS_AS(load_csv(tmp.path / "missing.csv", false), NotFoundError);
}

TEST_CASE("CSV round trip is exact") {
  TempDir tmp;
  const auto data = synth_classification(7, 4, 9, 2.5, 77);
  save_csv(data, tmp.path / "s.csv");
  const auto back = load_csv(tmp.path / "s.csv", false);
  REQUIRE(back.samples.size() == data.samples.size());
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    CHECK(back.samples[i].features == data.samples[i].features);
    CHECK(back.samples[i].label == data.samples[i].label);
  }
}

TEST_CASE("load_edge_list") {
  TempDir tmp;
  const auto g = load_edge_list(tmp.write("g.txt", "graph 3 0\n0 1\n1 2\n# comment\ngraph 2 1\n0 1\n"));
  REQUIRE(g.size() == 2);
  CHECK(g[0].vertex_count == 3);
  CHECK(g[0].edges.size() == 2);
  CHECK(g[0].label == 0);
  CHECK(g[1].label == 1);

  auto line_of = [&](const std::string& text) -> std::size_t {
    try {
      load_edge_list(tmp.write("bad.txt", text));
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("graph 3 0\n0 1\n1 1\n") == 3);
  CHECK(line_of("graph 3 0\n0 1\n1 0\n") == 3);
  CHECK(line_of("graph 3 0\n0 3\n") == 2);
  CHECK(line_of("0 1\n") == 1);
}

TEST_CASE("edge list round trip and DD-shaped statistics") {
  TempDir tmp;
  const auto graphs = synth_graphs(200, 2, 285, 5.0, 3);
  save_edge_list(graphs, tmp.path / "dd.txt");
  const auto back = load_edge_list(tmp.path / "dd.txt");
  REQUIRE(back.size() == graphs.size());
  double vertices = 0;
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].vertex_count == graphs[i].vertex_count);
    CHECK(back[i].edges == graphs[i].edges);
    CHECK(back[i].label == graphs[i].label);
    CHECK_NOTHROW(back[i].validate());
    vertices += static_cast<double>(back[i].vertex_count);
  }
  CHECK(vertices / 200.0 == doctest::Approx(285).epsilon(0.05));
  const auto w = workload_from(back, 2, 4096);
  CHECK(static_cast<double>(w.d) == doctest::Approx(285).epsilon(0.05));
  CHECK(w.scheme == Scheme::Graph);
}

TEST_CASE("synth_classification") {
  const auto a = synth_classification(16, 3, 30, 6.0, 5);
  const auto b = synth_classification(16, 3, 30, 6.0, 5);
  REQUIRE(a.samples.size() == 90);
  for (std::size_t i = 0; i < 90; ++i) CHECK(a.samples[i].features == b.samples[i].features);
  CHECK(a.per_class_counts() == std::vector<std::size_t>{30, 30, 30});

  // 6 sigma apart: held-out accuracy well above 0.95.
  const auto split = split_dataset(synth_classification(16, 3, 100, 6.0, 8), 0.7, 1);
  const auto m = hdc::generate_model(Scheme::Traditional, 16, 1024, 0, 2, split.train.feature_ranges());
  const auto t = hdc::train_single_pass(split.train, m, 4);
  CHECK(hdc::accuracy(m, t, split.test) >= 0.95);

  // No separation: chance level.
  double acc = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = split_dataset(synth_classification(16, 3, 100, 0.0, seed), 0.7, seed);
    const auto m0 = hdc::generate_model(Scheme::Traditional, 16, 1024, 0, seed, s.train.feature_ranges());
    acc += hdc::accuracy(m0, hdc::train_single_pass(s.train, m0, 4), s.test) / 5;
  }
  CHECK(std::abs(acc - 1.0 / 3) <= 0.1);
}

TEST_CASE("splits are seeded and complete") {
  const auto data = synth_classification(4, 2, 25, 1.0, 1);
  const auto s1 = split_dataset(data, 0.7, 9);
  const auto s2 = split_dataset(data, 0.7, 9);
  CHECK(s1.train.samples.size() == 35);
  CHECK(s1.test.samples.size() == 15);
  for (std::size_t i = 0; i < 35; ++i) CHECK(s1.train.samples[i].features == s2.train.samples[i].features);
  CHECK(s1.train.num_classes == 2);
  CHECK_THROWS_AS(split_dataset(data, 0.0, 1), ParameterError);
  const auto graphs = synth_graphs(10, 2, 8, 2.0, 1);
  const auto gs = split_graphs(graphs, 0.7, 2);
  CHECK(gs.train.size() == 7);
  CHECK(gs.test.size() == 3);
}
