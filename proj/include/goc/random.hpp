#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace goc {

// Deterministic random stream addressed by a seed path, e.g.
// {base_seed, trial, arm}. Two streams built from the same path produce the
// same sequence regardless of which thread or in which order they are used.
class RandomStream {
 public:
  RandomStream(std::uint64_t base_seed, std::initializer_list<std::uint64_t> path);

  /// Uniform on [0, 1).
  double uniform() { return unit_(engine_); }
  double normal() { return gauss_(engine_); }
  bool bernoulli(double p) { return uniform() < p; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

inline RandomStream::RandomStream(std::uint64_t base_seed,
                                  std::initializer_list<std::uint64_t> path) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * (path.size() + 1));
  auto push = [&words](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffULL));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(base_seed);
  for (std::uint64_t p : path) push(p);
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

}  // namespace goc
