#include "photohdc/reference.hpp"

#include <array>

namespace photohdc {

namespace {

constexpr AcceleratorConfig cfg(std::int64_t r, std::int64_t c, std::int64_t u, std::int64_t pds) {
  AcceleratorConfig a;
  a.rows = r;
  a.cols = c;
  a.units = u;
  a.f_ghz = 5.0;
  a.pds_per_dac = pds;
  a.dac_rate_gsps = 10.0;
  a.bits = 4;
  a.dac_sharing_enabled = pds > 1;
  return a;
}

// 10 PDs per DAC is the most sharing a 10 GS/s DAC allows with a 1 ns update.
constexpr auto kTradTrain = cfg(128, 76, 4, 10);
constexpr auto kTradInfer = cfg(128, 128, 4, 10);
constexpr auto kRecTrain = cfg(128, 16, 2, 1);
constexpr auto kRecInfer = cfg(84, 52, 1, 1);
constexpr auto kGraphTrain = cfg(108, 8, 4, 1);
constexpr auto kGraphInfer = cfg(96, 48, 1, 1);

constexpr auto T = Scheme::Traditional;
constexpr auto R = Scheme::Record;
constexpr auto G = Scheme::Graph;
constexpr auto TR = Mode::Training;
constexpr auto IN = Mode::Inference;

constexpr std::array kRows{
    ReferenceRow{T, TR, "ISOLET", kTradTrain, 0.09, 4.83},
    ReferenceRow{T, TR, "UCIHAR", kTradTrain, 0.08, 4.86},
    ReferenceRow{T, TR, "FACE", kTradTrain, 6.7, 4.96},
    ReferenceRow{T, TR, "PAMAP", kTradTrain, 0.98, 4.94},
    ReferenceRow{T, TR, "PECAN", kTradTrain, 0.18, 4.73},
    ReferenceRow{T, IN, "ISOLET", kTradInfer, 8.71, 10.34},
    ReferenceRow{T, IN, "UCIHAR", kTradInfer, 8.54, 10.17},
    ReferenceRow{T, IN, "FACE", kTradInfer, 8.41, 10.38},
    ReferenceRow{T, IN, "PAMAP", kTradInfer, 1.8, 9.36},
    ReferenceRow{T, IN, "PECAN", kTradInfer, 5.1, 10.01},
    ReferenceRow{R, TR, "ISOLET", kRecTrain, 0.7, 17.26},
    ReferenceRow{R, TR, "UCIHAR", kRecTrain, 0.63, 16.94},
    ReferenceRow{R, TR, "FACE", kRecTrain, 56.85, 17.54},
    ReferenceRow{R, TR, "PAMAP", kRecTrain, 9.13, 16.46},
    ReferenceRow{R, TR, "PECAN", kRecTrain, 1.24, 17.03},
    ReferenceRow{R, IN, "ISOLET", kRecInfer, 122.45, 18.41},
    ReferenceRow{R, IN, "UCIHAR", kRecInfer, 110.04, 18.61},
    ReferenceRow{R, IN, "FACE", kRecInfer, 117.94, 18.81},
    ReferenceRow{R, IN, "PAMAP", kRecInfer, 20.69, 13.5},
    ReferenceRow{R, IN, "PECAN", kRecInfer, 59.44, 19.14},
    ReferenceRow{G, TR, "DD", kGraphTrain, 0.07, 14.61},
    ReferenceRow{G, TR, "ENZYMES", kGraphTrain, 0.005, 11.47},
    ReferenceRow{G, TR, "PROTEINS", kGraphTrain, 0.01, 13.97},
    ReferenceRow{G, IN, "DD", kGraphInfer, 52.14, 19.86},
    ReferenceRow{G, IN, "ENZYMES", kGraphInfer, 9.85, 12.52},
    ReferenceRow{G, IN, "PROTEINS", kGraphInfer, 9.14, 16.09},
};

}  // namespace

std::span<const ReferenceRow> reference_rows() { return kRows; }

AcceleratorConfig reference_config(Scheme scheme, Mode mode) {
  for (const auto& r : kRows) {
    if (r.scheme == scheme && r.mode == mode) return r.config;
  }
  throw NotFoundError("no reference configuration for " + std::string(to_string(scheme)) + " " +
                      std::string(to_string(mode)));
}

}  // namespace photohdc
