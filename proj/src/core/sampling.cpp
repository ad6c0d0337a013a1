#include "core/sampling.hpp"

#include <thread>

namespace fbh {

namespace {

constexpr int kMaxRejects = 4000;

std::vector<double> draw_point(Rng& rng, const Box& box) {
  std::vector<double> x(box.dim());
  for (int i = 0; i < box.dim(); ++i) x[i] = rng.uniform(box.lo[i], box.hi[i]);
  return x;
}

}  // namespace

std::vector<std::vector<double>> sample_chart_points(const ConformalSpace& space,
                                                     const ImmersionChart& chart, const Box& box,
                                                     int count, std::uint64_t seed) {
  if (box.dim() != chart.m) throw Error("sample box dimension does not match the chart");
  std::vector<std::vector<double>> out(count);
  bool any = false;
  for (int i = 0; i < count; ++i) {
    Rng rng = stream_rng(seed, static_cast<std::uint64_t>(i));
    for (int attempt = 0; attempt < kMaxRejects; ++attempt) {
      std::vector<double> x = draw_point(rng, box);
      try {
        std::vector<double> p = chart.map_point(x);
        if (!space.admissible(p)) continue;
        out[i] = std::move(x);
        any = true;
        break;
      } catch (const Error&) {
        continue;
      }
    }
    if (out[i].empty())
      throw UsageError("no admissible sample point found in the chart box (check guards/box)");
  }
  if (!any) throw UsageError("sampler produced no admissible points");
  return out;
}

std::vector<std::vector<double>> sample_ambient_points(const ConformalSpace& space, const Box& box,
                                                       int count, std::uint64_t seed) {
  if (box.dim() != space.n) throw Error("sample box dimension does not match the ambient space");
  std::vector<std::vector<double>> out(count);
  for (int i = 0; i < count; ++i) {
    Rng rng = stream_rng(seed, static_cast<std::uint64_t>(i));
    for (int attempt = 0; attempt < kMaxRejects; ++attempt) {
      std::vector<double> p = draw_point(rng, box);
      if (space.admissible(p)) {
        out[i] = std::move(p);
        break;
      }
    }
    if (out[i].empty())
      throw UsageError("no admissible ambient sample point found (check guards/box)");
  }
  return out;
}

std::vector<std::pair<std::vector<double>, std::vector<double>>> sample_planes(int n, int count,
                                                                               std::uint64_t seed) {
  std::vector<std::pair<std::vector<double>, std::vector<double>>> out(count);
  for (int i = 0; i < count; ++i) {
    Rng rng = stream_rng(seed * 0x51ed2701 + 7, static_cast<std::uint64_t>(i));
    std::vector<double> X(n), Y(n);
    for (int a = 0; a < n; ++a) X[a] = rng.uniform(-1.0, 1.0);
    for (int a = 0; a < n; ++a) Y[a] = rng.uniform(-1.0, 1.0);
    out[i] = {std::move(X), std::move(Y)};
  }
  return out;
}

void parallel_for(int jobs, int count, const std::function<void(int)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  jobs = std::min<int>(jobs, count);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w]() {
      try {
        for (int i = w; i < count; i += jobs) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace fbh
