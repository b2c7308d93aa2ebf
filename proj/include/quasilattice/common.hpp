// Copyright (c) 2026 the quasilattice authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ql {

inline constexpr const char* kVersion = "0.1.0";

// Bad user input: mismatched dimensions, malformed windows, unparsable specs.
class structural_error : public std::runtime_error {
public:
  explicit structural_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A numeric invariant failed: tolerance exceeded, tail bound violated,
// singular basis where an invertible one is required.
class numeric_error : public std::runtime_error {
public:
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// No complete CP-scheme exists for the requested (m, group).
class obstruction_error : public std::runtime_error {
public:
  obstruction_error(long p, const std::string& msg)
      : std::runtime_error(msg), witness_prime(p) {}
  long witness_prime;
};

// FNV-1a, used to stamp output files with input digests.
inline std::uint64_t fnv1a(const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t fnv1a(const std::string& s) { return fnv1a(s.data(), s.size()); }

}  // namespace ql
