#pragma once

// Helpers shared by the unit tests: seeded random elements and small
// brute-force utilities that do not go through the library under test.

#include "rings.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace testing_support {

inline constexpr std::uint64_t kSeed = 20261019;

inline const std::array<cmdyn::RingKind, 3> kAllRings = {cmdyn::RingKind::Gaussian, cmdyn::RingKind::SixthRoot,
                                                         cmdyn::RingKind::FifthRoot};

inline cmdyn::RingElement random_element(const cmdyn::RingSpec& spec, std::mt19937_64& rng, long bound = 6) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  std::vector<cmdyn::Integer> coeffs(spec.degree);
  for (auto& c : coeffs) c = dist(rng);
  return cmdyn::RingElement(spec, std::move(coeffs));
}

inline cmdyn::RingElement random_nonzero(const cmdyn::RingSpec& spec, std::mt19937_64& rng, long bound = 6) {
  for (;;) {
    auto a = random_element(spec, rng, bound);
    if (!a.is_zero()) return a;
  }
}

inline cmdyn::RingElement element(const cmdyn::RingSpec& spec, std::vector<long> coeffs) {
  std::vector<cmdyn::Integer> out(coeffs.begin(), coeffs.end());
  out.resize(spec.degree, 0);
  return cmdyn::RingElement(spec, std::move(out));
}

}  // namespace testing_support
