#pragma once

// Tile-level golden model of the photonic datapath. Walks the exact tile
// traversal of the discrete schedule, forms every MZM-vector x PD-tile product
// in integers and routes row currents the way the switches do. Its CHVs and
// similarity scores must equal hdc-core bit for bit.

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "photohdc/config.hpp"
#include "photohdc/hdc.hpp"

namespace photohdc {

enum class SwitchPath { TrainingBundle, InferenceRows };

struct TileTraceEvent {
  std::int64_t cycle = 0;  // per-unit cycle index
  std::int64_t unit = 0;
  std::vector<std::int64_t> mzm;  // C values
  std::vector<std::int64_t> pd;   // R x C, row major
  SwitchPath switch_path = SwitchPath::TrainingBundle;
  std::vector<std::int64_t> row_outputs;  // R values
  std::int64_t bundled_output = 0;        // sum of row outputs (training path)
  bool tile_update = false;               // PD tile reprogrammed this cycle
};

using TraceSink = std::function<void(const TileTraceEvent&)>;

std::string to_ndjson(const TileTraceEvent& e);
void write_ndjson(std::ostream& out, std::span<const TileTraceEvent> events);

// Recounts schedule counters from a trace.
class TraceCounter {
 public:
  explicit TraceCounter(const AcceleratorConfig& config) : config_(config) {}
  void operator()(const TileTraceEvent& e);

  std::int64_t events() const { return events_; }
  std::int64_t tile_updates() const { return tile_updates_; }
  std::int64_t dac_conversions() const { return dac_; }
  std::int64_t adc_conversions() const { return adc_; }
  std::int64_t mzm_modulations() const { return mzm_; }
  // Busy cycles of the slowest unit.
  std::int64_t critical_cycles() const;
  // Tile updates of the busiest unit.
  std::int64_t critical_tile_updates() const;
  // Cycles between consecutive events on one unit are all accounted for.
  bool contiguous() const { return contiguous_; }

 private:
  AcceleratorConfig config_;
  std::int64_t events_ = 0, tile_updates_ = 0, dac_ = 0, adc_ = 0, mzm_ = 0;
  std::vector<std::int64_t> next_cycle_;
  std::vector<std::int64_t> unit_updates_;
  bool contiguous_ = true;
};

struct GoldenTrainResult {
  std::vector<hdc::Hypervector> class_sums;  // digital partial accumulation, pre-normalization
  std::vector<hdc::Hypervector> chvs;
  std::vector<std::int64_t> scales;
};

struct GoldenInferResult {
  std::vector<std::vector<std::int64_t>> dots;  // [query][class]
  std::vector<std::vector<double>> scores;      // cosine similarities
  std::vector<std::size_t> predictions;
};

GoldenTrainResult golden_train(const hdc::EncodingModel& model, const hdc::LabeledDataset& data,
                               const AcceleratorConfig& config, int bits, const TraceSink& sink = {});
GoldenTrainResult golden_train(const hdc::EncodingModel& model, std::span<const hdc::GraphInstance> graphs,
                               std::size_t num_classes, const AcceleratorConfig& config, int bits,
                               const TraceSink& sink = {});

GoldenInferResult golden_infer(const hdc::EncodingModel& model, const hdc::TrainedModel& trained,
                               std::span<const std::vector<double>> queries, const AcceleratorConfig& config,
                               const TraceSink& sink = {});
GoldenInferResult golden_infer(const hdc::EncodingModel& model, const hdc::TrainedModel& trained,
                               std::span<const hdc::GraphInstance> queries, const AcceleratorConfig& config,
                               const TraceSink& sink = {});

}  // namespace photohdc
