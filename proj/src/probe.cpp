#include "ttlab/probe.hpp"

#include <algorithm>
#include <random>
#include <thread>

#include "ttlab/errors.hpp"

namespace ttlab {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t substream_seed(uint64_t seed, uint64_t time_index, uint64_t k) {
  return splitmix64(splitmix64(splitmix64(seed) ^ time_index) ^ k);
}

double unit_double(uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

double ks_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return 0.0;
  size_t i = 0, j = 0;
  double best = 0.0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    best = std::max(best, std::abs(i / na - j / nb));
  }
  return best;
}

ProbeSample probe_sample(const NumericSurface& q, double t, const ProbeOptions& opt, uint64_t time_index, uint64_t k) {
  std::mt19937_64 rng(substream_seed(opt.seed, time_index, k));
  NumericSurface p = q;
  for (int i = 0; i < p.num_cylinders(); ++i) p.twists[i] = unit_double(rng()) * p.circumference(i);
  p = geodesic_flow(p, t);

  ProbeSample s;
  auto found = saddle_connections_up_to(p, opt.radius, opt.cap);
  if (!found.complete) {
    s.dropped = true;
    return s;
  }
  s.censored = found.connections.empty();
  s.shortest = s.censored ? opt.radius : found.connections.front().length();
  for (const auto& c : found.connections)
    if (c.length() <= 1.0) ++s.count_le_1;
  return s;
}

ProbeReport run_probe(const NumericSurface& q, const ProbeOptions& opt) {
  if (opt.samples < 1 || opt.samples > 100000) throw Error(ErrorCode::OutOfRange, "samples must lie in 1..100000");
  if (q.config.genus > 5) throw Error(ErrorCode::OutOfRange, "probe is limited to genus <= 5");
  if (opt.bins < 1) throw Error(ErrorCode::OutOfRange, "need at least one histogram bin");
  if (opt.times.empty()) throw Error(ErrorCode::OutOfRange, "no times given");
  for (double t : opt.times)
    if (!(t >= 0.0 && t <= 5.0)) throw Error(ErrorCode::OutOfRange, "probe times must lie in [0, 5]");

  ProbeReport report;
  report.seed = opt.seed;
  report.samples = opt.samples;
  report.radius = opt.radius;
  const int threads = std::max(1, opt.threads);

  for (size_t ti = 0; ti < opt.times.size(); ++ti) {
    const double t = opt.times[ti];
    std::vector<ProbeSample> samples(opt.samples);
    auto work = [&](int first) {
      for (int k = first; k < opt.samples; k += threads) samples[k] = probe_sample(q, t, opt, ti, k);
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
      for (auto& th : pool) th.join();
    }

    ProbeTime pt;
    pt.t = t;
    pt.histogram.assign(opt.bins, 0);
    double count_sum = 0.0, shortest_sum = 0.0;
    for (const auto& s : samples) {
      if (s.dropped) {
        ++pt.dropped;
        continue;
      }
      ++pt.used;
      pt.shortest.push_back(s.shortest);
      pt.censored += s.censored;
      int bin = s.censored ? opt.bins - 1 : std::min(opt.bins - 1, static_cast<int>(s.shortest / opt.radius * opt.bins));
      ++pt.histogram[bin];
      shortest_sum += s.shortest;
      count_sum += s.count_le_1;
    }
    std::sort(pt.shortest.begin(), pt.shortest.end());
    if (pt.used > 0) {
      pt.mean_shortest = shortest_sum / pt.used;
      pt.mean_count_le_1 = count_sum / pt.used;
    }
    report.dropped += pt.dropped;

    if (ti == 0) {
      pt.cesaro_shortest = pt.mean_shortest;
      pt.cesaro_count_le_1 = pt.mean_count_le_1;
    } else {
      const ProbeTime& prev = report.times.back();
      pt.ks_previous = ks_distance(prev.shortest, pt.shortest);
      const double span_prev = prev.t - opt.times[0], span = t - opt.times[0];
      const double dt = t - prev.t;
      if (span > 0) {
        pt.cesaro_shortest = (prev.cesaro_shortest * span_prev + 0.5 * dt * (prev.mean_shortest + pt.mean_shortest)) / span;
        pt.cesaro_count_le_1 =
            (prev.cesaro_count_le_1 * span_prev + 0.5 * dt * (prev.mean_count_le_1 + pt.mean_count_le_1)) / span;
      } else {
        pt.cesaro_shortest = pt.mean_shortest;
        pt.cesaro_count_le_1 = pt.mean_count_le_1;
      }
    }
    report.times.push_back(std::move(pt));
  }
  return report;
}

Report ProbeReport::to_report() const {
  Report r;
  r.add("label", kProbeLabel);
  r.add("seed", std::to_string(seed));
  r.add("samples", samples);
  r.add("radius", radius);
  std::string ts;
  for (const auto& pt : times) ts += (ts.empty() ? "" : ",") + format_double(pt.t);
  r.add("times", ts);
  for (size_t i = 0; i < times.size(); ++i) {
    const auto& pt = times[i];
    const std::string p = "T" + std::to_string(i) + ".";
    r.add(p + "t", pt.t);
    r.add(p + "used", pt.used);
    r.add(p + "dropped", pt.dropped);
    r.add(p + "shortest.mean", pt.mean_shortest);
    r.add(p + "shortest.censored", pt.censored);
    std::string hist;
    for (int c : pt.histogram) hist += (hist.empty() ? "" : ",") + std::to_string(c);
    r.add(p + "shortest.histogram", hist);
    r.add(p + "count_le_1.mean", pt.mean_count_le_1);
    if (i > 0) r.add(p + "ks_previous", pt.ks_previous);
    r.add(p + "cesaro.shortest", pt.cesaro_shortest);
    r.add(p + "cesaro.count_le_1", pt.cesaro_count_le_1);
  }
  r.add("dropped", dropped);
  return r;
}

}  // namespace ttlab
