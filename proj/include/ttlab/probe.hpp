#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ttlab/flat_surface.hpp"
#include "ttlab/report.hpp"

namespace ttlab {

inline constexpr const char* kProbeLabel =
    "probe — not a proof; convergence guaranteed only outside a zero-density set";

/// splitmix64 finaliser.
uint64_t splitmix64(uint64_t x);

/// Seed of the substream for sample `k` at time index `time_index`. Each substream drives
/// an std::mt19937_64, whose output sequence is fixed by the standard.
uint64_t substream_seed(uint64_t seed, uint64_t time_index, uint64_t k);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double unit_double(uint64_t bits);

struct ProbeOptions {
  std::vector<double> times{0.0};
  int samples = 200;
  uint64_t seed = 0;
  double radius = 1.0;
  long cap = 2'000'000;  // cylinder passages per sample
  int bins = 10;
  int threads = 1;
};

struct ProbeSample {
  bool dropped = false;
  double shortest = 0.0;  // censored at the radius
  bool censored = false;
  int count_le_1 = 0;
};

struct ProbeTime {
  double t = 0.0;
  int used = 0;
  int dropped = 0;
  std::vector<double> shortest;  // sorted, used samples only
  int censored = 0;
  std::vector<int> histogram;    // bins over [0, radius]; censored samples go to the last bin
  double mean_shortest = 0.0;
  double mean_count_le_1 = 0.0;
  double ks_previous = -1.0;     // -1 for the first time
  double cesaro_shortest = 0.0;  // trapezoid average of the means over [t_0, t]
  double cesaro_count_le_1 = 0.0;
};

struct ProbeReport {
  uint64_t seed = 0;
  int samples = 0;
  double radius = 0.0;
  std::vector<ProbeTime> times;
  int dropped = 0;

  Report to_report() const;
};

/// Two-sample Kolmogorov-Smirnov statistic of sorted samples.
double ks_distance(const std::vector<double>& a, const std::vector<double>& b);

/// One sample: uniform twists, g_t, then the saddle search.
ProbeSample probe_sample(const NumericSurface& q, double t, const ProbeOptions& opt, uint64_t time_index, uint64_t k);

/// Throws OutOfRange outside samples <= 1e5, genus <= 5, 0 <= t <= 5.
ProbeReport run_probe(const NumericSurface& q, const ProbeOptions& opt);

}  // namespace ttlab
