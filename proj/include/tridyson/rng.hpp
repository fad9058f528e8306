#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace tridyson {

/// SplitMix64 finalizer; used only to derive well-mixed seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Purpose tags so different consumers of one (seed, index) pair never share a stream.
enum class StreamTag : std::uint64_t {
  kNoise = 1,
  kExactBessel = 2,
  kGbe = 3,
  kIdentities = 4,
  kRefine = 5,
};

using Engine = std::mt19937_64;

/// Independent engine for (seed, index, tag). Same triple, same stream.
inline Engine make_stream(std::uint64_t seed, std::uint64_t index, StreamTag tag) {
  std::uint64_t s = splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  s = splitmix64(s ^ splitmix64(static_cast<std::uint64_t>(tag)));
  std::array<std::uint32_t, 8> words{};
  for (std::size_t i = 0; i < words.size(); i += 2) {
    s = splitmix64(s);
    words[i] = static_cast<std::uint32_t>(s);
    words[i + 1] = static_cast<std::uint32_t>(s >> 32);
  }
  std::seed_seq seq(words.begin(), words.end());
  return Engine(seq);
}

}  // namespace tridyson
