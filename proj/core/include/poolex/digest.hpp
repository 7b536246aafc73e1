#pragma once

#include <cstdint>
#include <string>

#include "poolex/matrix.hpp"

namespace poolex {

/// How rows are compared when building a digest.
struct DigestMode {
  enum class Kind { Exact, Quantized };
  Kind kind = Kind::Exact;
  double epsilon = 1e-8;

  static DigestMode exact() { return {Kind::Exact, 0.0}; }
  static DigestMode quantized(double eps = 1e-8) { return {Kind::Quantized, eps}; }
};

/// Canonical byte encoding of a multiset of feature rows.
///
/// Rows are mapped to integers (exactly, or by round(x / epsilon)), sorted
/// lexicographically and serialized, so two digests compare equal iff the row
/// multisets are equal (up to quantization).
struct MultisetDigest {
  std::string bytes;
  DigestMode mode;

  /// 64-bit FNV-1a of `bytes`, hex encoded; for display only.
  std::string short_hex() const;

  friend bool operator==(const MultisetDigest& a, const MultisetDigest& b) {
    return a.bytes == b.bytes;
  }
};

/// Throws Error on an empty matrix, on non-integral entries in exact mode, and
/// on NaN/Inf or quantization overflow in quantized mode.
MultisetDigest multiset_digest(const Matrix& rows, DigestMode mode);

}  // namespace poolex
