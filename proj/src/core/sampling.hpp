#ifndef FBH_CORE_SAMPLING_HPP
#define FBH_CORE_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include "core/ambient.hpp"
#include "core/hypersurface.hpp"

namespace fbh {

// splitmix64: deterministic across platforms, one independent stream per
// (seed, sample index) so parallel evaluation cannot reorder draws.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

inline Rng stream_rng(std::uint64_t seed, std::uint64_t index) {
  Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  r.next();
  return r;
}

struct Box {
  std::vector<double> lo, hi;
  static Box cube(int dim, double l, double h) {
    Box b;
    b.lo.assign(dim, l);
    b.hi.assign(dim, h);
    return b;
  }
  int dim() const { return static_cast<int>(lo.size()); }
};

// Chart points whose images are admissible in the ambient space. Rejected
// draws are resampled from the same per-index stream; never clamped.
std::vector<std::vector<double>> sample_chart_points(const ConformalSpace& space,
                                                     const ImmersionChart& chart, const Box& box,
                                                     int count, std::uint64_t seed);

std::vector<std::vector<double>> sample_ambient_points(const ConformalSpace& space, const Box& box,
                                                       int count, std::uint64_t seed);

// count pairs (X, Y) of ambient vectors with entries in [-1, 1].
std::vector<std::pair<std::vector<double>, std::vector<double>>> sample_planes(int n, int count,
                                                                               std::uint64_t seed);

void parallel_for(int jobs, int count, const std::function<void(int)>& fn);

}  // namespace fbh

#endif
