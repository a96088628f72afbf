#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>

namespace glnsa {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic child stream of `seed` identified by a tuple of tags, e.g.
// (iteration, cell, phase). Streams do not depend on evaluation order.
inline Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = mix64(seed);
  for (auto t : tags) h = mix64(h ^ mix64(t + 0x632be59bd9b4e019ULL));
  return Rng(h);
}

// Uniform integer in [lo, hi].
template <typename Int, typename Gen>
Int uniform_int(Gen& rng, Int lo, Int hi) {
  return std::uniform_int_distribution<Int>(lo, hi)(rng);
}

template <typename Gen>
double uniform_real(Gen& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Two distinct uniform positions in [0, size); requires size >= 2.
template <typename Gen>
std::pair<std::size_t, std::size_t> distinct_pair(Gen& rng, std::size_t size) {
  const auto a = uniform_int<std::size_t>(rng, 0, size - 1);
  auto b = uniform_int<std::size_t>(rng, 0, size - 2);
  if (b >= a) ++b;
  return {a, b};
}

}  // namespace glnsa
