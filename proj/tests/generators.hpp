#pragma once

// Small seeded generators for the property tests. Every case prints its seed
// on failure through doctest's CAPTURE, so a failing draw can be replayed.

#include "specfilt/filters.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace gen {

class Source {
 public:
  explicit Source(std::uint64_t seed) : engine_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[index(0, items.size() - 1)];
  }

  specfilt::filters::Family family() {
    return pick(std::vector{specfilt::filters::Family::Butterworth, specfilt::filters::Family::LinkwitzRiley,
                            specfilt::filters::Family::ChebyshevI, specfilt::filters::Family::ChebyshevII});
  }

  /// A valid design with order at most max_order; LR gets an even order.
  specfilt::filters::DesignParams design(int max_order, double cutoff = 1.0) {
    specfilt::filters::DesignParams p;
    p.family = family();
    p.order = integer(1, max_order);
    if (p.family == specfilt::filters::Family::LinkwitzRiley) p.order = 2 * integer(1, max_order / 2);
    p.ripple = pick(std::vector{0.01, 0.1, 0.5, 1.0});
    p.cutoff = cutoff;
    return p;
  }

 private:
  std::mt19937_64 engine_;
};

inline constexpr int kCases = 40;

}  // namespace gen
