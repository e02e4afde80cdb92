#pragma once

#include <cstdint>
#include <stdexcept>

namespace parkfrozen {

// Counter-based 64-bit generator built on the SplitMix64 finalizer.
// Every draw is a pure function of (seed, stream, counter), so any position
// of any stream can be recomputed independently and results are identical
// across platforms and thread schedules.
inline uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

inline uint64_t hash_at(uint64_t key, uint64_t counter) {
  return mix64(key + 0x9E3779B97F4A7C15ULL * (counter + 1));
}

inline uint64_t stream_key(uint64_t seed, uint64_t stream) {
  return mix64(mix64(seed ^ 0x6A09E667F3BCC909ULL) + 0x9E3779B97F4A7C15ULL * stream);
}

// Seed for replica `index` of a base seed; documented derivation hash(seed, index).
inline uint64_t replica_seed(uint64_t seed, uint64_t index) {
  return hash_at(stream_key(seed, 0xC001D00DULL), index);
}

// Map a 64-bit word to [0, n) by the high multiply trick. The bias is
// below n / 2^64 which is immaterial at the sizes used here.
inline uint32_t bounded(uint64_t h, uint32_t n) {
  return static_cast<uint32_t>((static_cast<unsigned __int128>(h) * n) >> 64);
}

inline double to_unit_double(uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

struct OrientedEdge {
  int32_t tail = 0;  // X_i, 0-based
  int32_t head = 0;  // Y_i, 0-based
  int64_t index = 0; // 1-based position in the stream
};

// Stream of i.i.d. uniform oriented edges over n vertices, plus an auxiliary
// lane of uniform reals (used by the parameter-p process and redirections).
// Replaying the same (n, seed) yields the identical sequence.
class EdgeStream {
public:
  EdgeStream(int64_t n, uint64_t seed)
      : n_(n), seed_(seed),
        key_tail_(stream_key(seed, 1)),
        key_head_(stream_key(seed, 2)),
        key_aux_(stream_key(seed, 3)) {
    if (n < 1) throw std::invalid_argument("EdgeStream: n must be >= 1");
    if (n > 0x7FFFFFFF) throw std::invalid_argument("EdgeStream: n too large");
  }

  int64_t n() const { return n_; }
  uint64_t seed() const { return seed_; }
  int64_t position() const { return pos_; }

  OrientedEdge edge_at(int64_t i) const { // i is 1-based
    OrientedEdge e;
    e.tail = static_cast<int32_t>(bounded(hash_at(key_tail_, static_cast<uint64_t>(i)), static_cast<uint32_t>(n_)));
    e.head = static_cast<int32_t>(bounded(hash_at(key_head_, static_cast<uint64_t>(i)), static_cast<uint32_t>(n_)));
    e.index = i;
    return e;
  }

  double aux_uniform_at(int64_t i) const {
    return to_unit_double(hash_at(key_aux_, static_cast<uint64_t>(i)));
  }

  uint64_t aux_word_at(int64_t i) const { return hash_at(key_aux_, static_cast<uint64_t>(i)); }

  OrientedEdge next() { return edge_at(++pos_); }

private:
  int64_t n_;
  uint64_t seed_;
  uint64_t key_tail_, key_head_, key_aux_;
  int64_t pos_ = 0;
};

// Small sequential generator for auxiliary randomness (permutations, coins).
class Rng {
public:
  explicit Rng(uint64_t seed, uint64_t stream = 0) : key_(stream_key(seed, 0x100 + stream)) {}
  uint64_t next_word() { return hash_at(key_, ++ctr_); }
  uint32_t next_below(uint32_t n) { return bounded(next_word(), n); }
  double next_unit() { return to_unit_double(next_word()); }
  bool next_bit() { return (next_word() >> 63) != 0; }

private:
  uint64_t key_;
  uint64_t ctr_ = 0;
};

} // namespace parkfrozen
