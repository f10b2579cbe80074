#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stgraph/ingest.hpp"

namespace stgraph::synth {

// SplitMix64: state advances by the golden-gamma constant, output is the
// finalizer mix. Chosen over std engines so identical seeds give
// identical bytes on every platform.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound), bound > 0; modulo bias is irrelevant here.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
  int range(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }
};

struct ScenarioParams {
  std::uint64_t seed = 42;
  int plays = 10;
  int frames_min = 8;
  int frames_max = 40;
  double event_rate = 0.2;  // expected events per second
  std::map<std::string, double> leaf_mix;  // leaf id -> weight
  // Lateral drift of the ball toward the right wing, meters per second;
  // also biases pass targets rightward when positive.
  double lateral_bias = 0.0;
  double advance_bias = 0.8;  // carrier progress toward the try line, m/s
  double first_result_odds = 0.4;  // probability of results[0]
  std::map<std::string, std::string> meta;  // tags stamped on every play
};

// Named parameter sets biasing drift, advance, and leaf mix so that the
// generated feature distributions separate qualitatively.
ScenarioParams preset(const std::string& name);
std::vector<std::string> preset_names();

// Deterministic: identical (cfg, params) give identical datasets; each
// play derives its own sub-seed so generation order is immaterial.
// Every generated play passes validate_play.
Dataset generate(const ModelConfig& cfg, const ScenarioParams& params);

}  // namespace stgraph::synth
