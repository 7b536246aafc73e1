#include "poolex/digest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "poolex/error.hpp"

namespace poolex {

namespace {

void append_le(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::int64_t to_key(double v, const DigestMode& mode, Eigen::Index r, Eigen::Index c) {
  if (!std::isfinite(v)) {
    throw Error("multiset_digest: row " + std::to_string(r) + " column " + std::to_string(c) +
                " is not finite");
  }
  double scaled = v;
  if (mode.kind == DigestMode::Kind::Exact) {
    if (std::floor(v) != v) {
      throw Error("multiset_digest: exact mode needs integer entries, got " + std::to_string(v));
    }
  } else {
    if (!(mode.epsilon > 0.0)) throw Error("multiset_digest: epsilon must be positive");
    scaled = std::round(v / mode.epsilon);
  }
  if (std::fabs(scaled) >= 9.0e18) throw Error("multiset_digest: value out of quantization range");
  std::int64_t key = static_cast<std::int64_t>(scaled);
  return key == 0 ? 0 : key;  // folds -0
}

}  // namespace

std::string MultisetDigest::short_hex() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

MultisetDigest multiset_digest(const Matrix& rows, DigestMode mode) {
  if (rows.rows() == 0 || rows.cols() == 0) throw Error("multiset_digest: empty matrix");
  std::vector<std::vector<std::int64_t>> keys(static_cast<std::size_t>(rows.rows()));
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    auto& key = keys[static_cast<std::size_t>(r)];
    key.reserve(static_cast<std::size_t>(rows.cols()));
    for (Eigen::Index c = 0; c < rows.cols(); ++c) key.push_back(to_key(rows(r, c), mode, r, c));
  }
  std::sort(keys.begin(), keys.end());

  MultisetDigest d;
  d.mode = mode;
  d.bytes.push_back(mode.kind == DigestMode::Kind::Exact ? 'E' : 'Q');
  append_le(d.bytes, static_cast<std::uint64_t>(rows.rows()));
  append_le(d.bytes, static_cast<std::uint64_t>(rows.cols()));
  for (const auto& key : keys) {
    for (std::int64_t v : key) append_le(d.bytes, static_cast<std::uint64_t>(v));
  }
  return d;
}

}  // namespace poolex
