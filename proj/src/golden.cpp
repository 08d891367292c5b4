#include "photohdc/golden.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace photohdc {

namespace {

using hdc::Hypervector;

// PD operand for item r, feature column col, hypervector dimension j.
using PdOperand = std::function<std::int64_t(std::size_t r, std::size_t col, std::size_t j)>;

struct Operands {
  std::size_t features = 0;
  bool per_cycle = false;  // PD tile changes with every dimension
  PdOperand pd;
};

std::int64_t round_div(std::int64_t a, std::int64_t s) {
  const std::int64_t mag = (2 * (a < 0 ? -a : a) + s) / (2 * s);
  return a < 0 ? -mag : mag;
}

// One cycle of one unit: MZM vector times PD tile, per-row photocurrent sums.
void fire(TileTraceEvent& e, std::size_t R, std::size_t C) {
  e.row_outputs.assign(R, 0);
  e.bundled_output = 0;
  for (std::size_t r = 0; r < R; ++r) {
    std::int64_t acc = 0;
    for (std::size_t c = 0; c < C; ++c) acc += e.pd[r * C + c] * e.mzm[c];
    e.row_outputs[r] = acc;
    e.bundled_output += acc;
  }
}

struct Shape {
  std::size_t R, C, U, D, tiles;
};

Shape shape_of(const AcceleratorConfig& config, const hdc::EncodingModel& model, std::size_t features) {
  config.validate();
  const auto C = static_cast<std::size_t>(config.cols);
  return {static_cast<std::size_t>(config.rows), C, static_cast<std::size_t>(config.units), model.dim,
          static_cast<std::size_t>(ceil_div(static_cast<std::int64_t>(features), config.cols))};
}

GoldenTrainResult run_train(const hdc::EncodingModel& model, std::span<const std::size_t> labels,
                            std::size_t num_classes, const Operands& ops, const AcceleratorConfig& config, int bits,
                            bool halve, const TraceSink& sink) {
  const Shape s = shape_of(config, model, ops.features);
  if (labels.empty()) throw ParameterError("golden_train: no samples");

  // Per-class groups of up to R samples; the missing rows are zero padding.
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> groups;
  for (std::size_t k = 0; k < num_classes; ++k) {
    std::vector<std::size_t> members;
    for (std::size_t n = 0; n < labels.size(); ++n) {
      if (labels[n] == k) members.push_back(n);
    }
    if (members.empty()) throw ParameterError("golden_train: class " + std::to_string(k) + " has no samples");
    for (std::size_t i = 0; i < members.size(); i += s.R) {
      groups.emplace_back(k, std::vector<std::size_t>(members.begin() + static_cast<std::ptrdiff_t>(i),
                                                      members.begin() + static_cast<std::ptrdiff_t>(
                                                                            std::min(i + s.R, members.size()))));
    }
  }

  GoldenTrainResult out;
  out.class_sums.assign(num_classes, Hypervector(s.D));
  const std::int64_t per_group = static_cast<std::int64_t>(s.tiles * s.D);
  TileTraceEvent e;
  e.switch_path = SwitchPath::TrainingBundle;
  e.mzm.resize(s.C);
  e.pd.resize(s.R * s.C);

  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& [label, rows] = groups[g];
    e.unit = static_cast<std::int64_t>(g % s.U);
    const std::int64_t base_cycle = static_cast<std::int64_t>(g / s.U) * per_group;
    for (std::size_t t = 0; t < s.tiles; ++t) {
      for (std::size_t j = 0; j < s.D; ++j) {
        e.cycle = base_cycle + static_cast<std::int64_t>(t * s.D + j);
        e.tile_update = ops.per_cycle || j == 0;
        for (std::size_t c = 0; c < s.C; ++c) {
          const std::size_t col = t * s.C + c;
          e.mzm[c] = col < ops.features ? model.base[col][j] : 0;
        }
        if (e.tile_update) {
          for (std::size_t r = 0; r < s.R; ++r) {
            for (std::size_t c = 0; c < s.C; ++c) {
              const std::size_t col = t * s.C + c;
              e.pd[r * s.C + c] = (r < rows.size() && col < ops.features) ? ops.pd(rows[r], col, j) : 0;
            }
          }
        }
        fire(e, s.R, s.C);
        out.class_sums[label][j] += e.bundled_output;
        if (sink) sink(e);
      }
    }
  }

  for (auto& sum : out.class_sums) {
    // Each graph's sum is even, so halving the class total is exact.
    if (halve) {
      for (std::size_t j = 0; j < s.D; ++j) sum[j] /= 2;
    }
    auto q = hdc::normalize_quantize(sum, bits);
    out.chvs.push_back(std::move(q.hv));
    out.scales.push_back(q.scale);
  }
  return out;
}

GoldenInferResult run_infer(const hdc::EncodingModel& model, const hdc::TrainedModel& trained,
                            std::size_t n_queries, const Operands& ops, const AcceleratorConfig& config, bool halve,
                            const TraceSink& sink) {
  const Shape s = shape_of(config, model, ops.features);
  const std::size_t K = trained.chvs.size();
  if (K == 0) throw ParameterError("golden_infer: model has no class hypervectors");
  for (const auto& chv : trained.chvs) {
    if (chv.size() != s.D) throw ParameterError("golden_infer: CHV length does not match the encoding model");
  }
  const std::int64_t top = (std::int64_t{1} << (trained.bits - 1)) - 1;
  const std::size_t outer = static_cast<std::size_t>(ceil_div(static_cast<std::int64_t>(s.D), config.cols));
  const std::int64_t per_batch = static_cast<std::int64_t>(outer * (s.tiles * s.C + K));

  GoldenInferResult out;
  out.dots.assign(n_queries, std::vector<std::int64_t>(K, 0));
  std::vector<std::int64_t> query_norm2(n_queries, 0);

  TileTraceEvent e;
  e.mzm.resize(s.C);
  e.pd.resize(s.R * s.C);
  std::vector<std::int64_t> buffer(s.R * s.C);

  const std::size_t batches = (n_queries + s.R - 1) / s.R;
  for (std::size_t bt = 0; bt < batches; ++bt) {
    const std::size_t first = bt * s.R;
    const std::size_t valid = std::min(s.R, n_queries - first);
    e.unit = static_cast<std::int64_t>(bt % s.U);
    std::int64_t cycle = static_cast<std::int64_t>(bt / s.U) * per_batch;

    for (std::size_t o = 0; o < outer; ++o) {
      // Encoding: C dimensions of the R queries land in the row buffer.
      std::fill(buffer.begin(), buffer.end(), 0);
      e.switch_path = SwitchPath::InferenceRows;
      for (std::size_t t = 0; t < s.tiles; ++t) {
        for (std::size_t jj = 0; jj < s.C; ++jj) {
          const std::size_t j = o * s.C + jj;
          e.cycle = cycle++;
          e.tile_update = ops.per_cycle || jj == 0;
          for (std::size_t c = 0; c < s.C; ++c) {
            const std::size_t col = t * s.C + c;
            e.mzm[c] = (col < ops.features && j < s.D) ? model.base[col][j] : 0;
          }
          if (e.tile_update) {
            for (std::size_t r = 0; r < s.R; ++r) {
              for (std::size_t c = 0; c < s.C; ++c) {
                const std::size_t col = t * s.C + c;
                const std::size_t jd = std::min(j, s.D - 1);  // padded dims multiply a zero MZM
                e.pd[r * s.C + c] = (r < valid && col < ops.features) ? ops.pd(first + r, col, jd) : 0;
              }
            }
          }
          fire(e, s.R, s.C);
          for (std::size_t r = 0; r < s.R; ++r) buffer[r * s.C + jj] += e.row_outputs[r];
          if (sink) sink(e);
        }
      }
      // Re-quantize at the A/D interface and reload the buffer as the PD tile.
      for (auto& v : buffer) {
        if (halve) v /= 2;
        v = std::clamp(round_div(v, trained.query_scale), -top - 1, top);
      }
      e.pd = buffer;
      for (std::size_t r = 0; r < valid; ++r) {
        for (std::size_t c = 0; c < s.C; ++c) query_norm2[first + r] += buffer[r * s.C + c] * buffer[r * s.C + c];
      }
      // Similarity: one CHV slice per cycle on the MZMs.
      for (std::size_t k = 0; k < K; ++k) {
        e.cycle = cycle++;
        e.tile_update = k == 0;
        for (std::size_t c = 0; c < s.C; ++c) {
          const std::size_t j = o * s.C + c;
          e.mzm[c] = j < s.D ? trained.chvs[k][j] : 0;
        }
        fire(e, s.R, s.C);
        for (std::size_t r = 0; r < valid; ++r) out.dots[first + r][k] += e.row_outputs[r];
        if (sink) sink(e);
      }
    }
  }

  std::vector<std::int64_t> chv_norm2;
  for (const auto& chv : trained.chvs) chv_norm2.push_back(chv.dot(chv));
  for (std::size_t n = 0; n < n_queries; ++n) {
    std::vector<double> row;
    for (std::size_t k = 0; k < K; ++k) row.push_back(hdc::cosine_from_dot(out.dots[n][k], chv_norm2[k], query_norm2[n]));
    out.predictions.push_back(static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin()));
    out.scores.push_back(std::move(row));
  }
  return out;
}

Operands tabular_operands(const hdc::EncodingModel& model, std::span<const std::vector<double>> xs, int bits) {
  Operands ops;
  ops.features = model.features;
  for (const auto& x : xs) {
    if (x.size() != model.features) {
      throw ParameterError("golden: expected " + std::to_string(model.features) + " features, got " +
                           std::to_string(x.size()));
    }
  }
  if (model.scheme == Scheme::Traditional) {
    auto q = std::make_shared<std::vector<std::vector<std::int64_t>>>();
    for (const auto& x : xs) q->push_back(hdc::quantize_features(x, bits, model.feature_range));
    ops.pd = [q](std::size_t r, std::size_t col, std::size_t) { return (*q)[r][col]; };
  } else if (model.scheme == Scheme::Record) {
    auto lv = std::make_shared<std::vector<std::vector<std::size_t>>>();
    for (const auto& x : xs) {
      std::vector<std::size_t> row;
      for (std::size_t i = 0; i < x.size(); ++i) row.push_back(hdc::level_index(model, i, x[i]));
      lv->push_back(std::move(row));
    }
    ops.per_cycle = true;
    ops.pd = [lv, &model](std::size_t r, std::size_t col, std::size_t j) { return model.levels[(*lv)[r][col]][j]; };
  } else {
    throw ParameterError("golden: graph models take GraphInstance inputs");
  }
  return ops;
}

Operands graph_operands(const hdc::EncodingModel& model, std::span<const hdc::GraphInstance> graphs) {
  if (model.scheme != Scheme::Graph) throw ParameterError("golden: model is not a graph model");
  auto mem = std::make_shared<std::vector<std::vector<Hypervector>>>();
  for (const auto& g : graphs) mem->push_back(hdc::memory_hypervectors(model, g));
  Operands ops;
  ops.features = model.features;
  ops.per_cycle = true;
  ops.pd = [mem](std::size_t r, std::size_t col, std::size_t j) -> std::int64_t {
    const auto& m = (*mem)[r];
    return col < m.size() ? m[col][j] : 0;
  };
  return ops;
}

}  // namespace

GoldenTrainResult golden_train(const hdc::EncodingModel& model, const hdc::LabeledDataset& data,
                               const AcceleratorConfig& config, int bits, const TraceSink& sink) {
  data.validate();
  std::vector<std::vector<double>> xs;
  std::vector<std::size_t> labels;
  for (const auto& s : data.samples) {
    xs.push_back(s.features);
    labels.push_back(s.label);
  }
  return run_train(model, labels, data.num_classes, tabular_operands(model, xs, bits), config, bits, false, sink);
}

GoldenTrainResult golden_train(const hdc::EncodingModel& model, std::span<const hdc::GraphInstance> graphs,
                               std::size_t num_classes, const AcceleratorConfig& config, int bits,
                               const TraceSink& sink) {
  std::vector<std::size_t> labels;
  for (const auto& g : graphs) {
    if (g.label >= num_classes) throw ParameterError("golden: graph label out of range");
    labels.push_back(g.label);
  }
  return run_train(model, labels, num_classes, graph_operands(model, graphs), config, bits, true, sink);
}

GoldenInferResult golden_infer(const hdc::EncodingModel& model, const hdc::TrainedModel& trained,
                               std::span<const std::vector<double>> queries, const AcceleratorConfig& config,
                               const TraceSink& sink) {
  return run_infer(model, trained, queries.size(), tabular_operands(model, queries, trained.bits), config, false,
                   sink);
}

GoldenInferResult golden_infer(const hdc::EncodingModel& model, const hdc::TrainedModel& trained,
                               std::span<const hdc::GraphInstance> queries, const AcceleratorConfig& config,
                               const TraceSink& sink) {
  return run_infer(model, trained, queries.size(), graph_operands(model, queries), config, true, sink);
}

void TraceCounter::operator()(const TileTraceEvent& e) {
  const auto R = config_.rows, C = config_.cols;
  ++events_;
  mzm_ += C;
  dac_ += C;
  if (e.tile_update) {
    ++tile_updates_;
    dac_ += R * C;
  }
  adc_ += e.switch_path == SwitchPath::TrainingBundle ? 1 : R;
  const auto u = static_cast<std::size_t>(e.unit);
  if (u >= next_cycle_.size()) {
    next_cycle_.resize(u + 1, -1);
    unit_updates_.resize(u + 1, 0);
  }
  // Units pick up work round by round, so a unit's cycles are either
  // consecutive or jump to the start of its next assignment.
  if (next_cycle_[u] >= 0 && e.cycle < next_cycle_[u]) contiguous_ = false;
  next_cycle_[u] = e.cycle + 1;
  if (e.tile_update) ++unit_updates_[u];
}

std::int64_t TraceCounter::critical_cycles() const {
  std::int64_t m = 0;
  for (auto c : next_cycle_) m = std::max(m, c);
  return m;
}

std::int64_t TraceCounter::critical_tile_updates() const {
  std::int64_t m = 0;
  for (auto c : unit_updates_) m = std::max(m, c);
  return m;
}

std::string to_ndjson(const TileTraceEvent& e) {
  nlohmann::ordered_json j;
  j["cycle"] = e.cycle;
  j["unit"] = e.unit;
  j["mzm"] = e.mzm;
  const std::size_t C = e.mzm.size();
  nlohmann::json tile = nlohmann::json::array();
  for (std::size_t r = 0; C > 0 && r < e.pd.size() / C; ++r) {
    tile.push_back(std::vector<std::int64_t>(e.pd.begin() + static_cast<std::ptrdiff_t>(r * C),
                                             e.pd.begin() + static_cast<std::ptrdiff_t>((r + 1) * C)));
  }
  j["pd"] = tile;
  j["switch_path"] = e.switch_path == SwitchPath::TrainingBundle ? "TrainingBundle" : "InferenceRows";
  if (e.switch_path == SwitchPath::TrainingBundle) {
    j["bundled_output"] = e.bundled_output;
  } else {
    j["row_outputs"] = e.row_outputs;
  }
  j["tile_update"] = e.tile_update;
  return j.dump();
}

void write_ndjson(std::ostream& out, std::span<const TileTraceEvent> events) {
  for (const auto& e : events) out << to_ndjson(e) << '\n';
}

}  // namespace photohdc
