#ifndef PARETO_CFAR_RANDOM_HPP_
#define PARETO_CFAR_RANDOM_HPP_

#include <cstdint>
#include <limits>

namespace pareto_cfar {

/// Finalizer of the SplitMix64 generator (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// SplitMix64 engine. Satisfies std::uniform_random_bit_generator, so it can
/// drive the <random> distributions as well as `open_uniform`.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    state_ += kGolden;
    return mix64(state_);
  }

  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

 private:
  std::uint64_t state_;
};

/// Independent stream for one Monte Carlo trial. The stream depends only on
/// (seed, trialIndex), which makes results independent of how trials are
/// distributed over workers.
constexpr SplitMix64 trial_stream(std::uint64_t seed,
                                  std::uint64_t trialIndex) noexcept {
  const std::uint64_t key = mix64(seed ^ 0x6A09E667F3BCC909ULL);
  return SplitMix64(mix64(key + (trialIndex + 1) * SplitMix64::kGolden));
}

/// Uniform draw on the open interval (0,1): 53 random bits offset by half an
/// ulp, so neither 0 nor 1 is ever returned.
template <typename Rng>
double open_uniform(Rng &rng) {
  static_assert(Rng::min() == 0 &&
                    Rng::max() == std::numeric_limits<std::uint64_t>::max(),
                "open_uniform needs a full-range 64-bit engine");
  const std::uint64_t bits = static_cast<std::uint64_t>(rng()) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace pareto_cfar

#endif  // PARETO_CFAR_RANDOM_HPP_
