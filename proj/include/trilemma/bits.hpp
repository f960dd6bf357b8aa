// Copyright 2026 The ldp-trilemma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRILEMMA_BITS_HPP_
#define TRILEMMA_BITS_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace trilemma {

// A bit string of explicit length. Bits are stored big-endian within bytes
// (bit 0 is the most significant bit of byte 0); the trailing padding bits of
// the last byte are always zero, so equal payloads compare equal bytewise.
class BitPayload {
 public:
  BitPayload() = default;

  std::size_t bit_size() const { return bit_size_; }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

  void append_bit(bool bit) {
    if (bit_size_ % 8 == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<std::uint8_t>(1u << (7 - bit_size_ % 8));
    ++bit_size_;
  }

  // Appends the low `count` bits of `value`, most significant first.
  void append_bits(std::uint64_t value, int count) {
    if (count < 0 || count > 64)
      throw std::invalid_argument("BitPayload::append_bits: bad count");
    for (int i = count - 1; i >= 0; --i) append_bit((value >> i) & 1u);
  }

  bool bit(std::size_t i) const {
    if (i >= bit_size_) throw std::out_of_range("BitPayload::bit");
    return (bytes_[i / 8] >> (7 - i % 8)) & 1u;
  }

  std::uint64_t read_bits(std::size_t pos, int count) const {
    if (count < 0 || count > 64)
      throw std::invalid_argument("BitPayload::read_bits: bad count");
    std::uint64_t v = 0;
    for (int i = 0; i < count; ++i) v = (v << 1) | (bit(pos + i) ? 1u : 0u);
    return v;
  }

  // Harness wire format: one length byte, then the zero-padded payload bytes.
  std::vector<std::uint8_t> to_wire() const {
    if (bit_size_ > 255)
      throw std::length_error("BitPayload::to_wire: payload exceeds 255 bits");
    std::vector<std::uint8_t> out;
    out.reserve(1 + bytes_.size());
    out.push_back(static_cast<std::uint8_t>(bit_size_));
    out.insert(out.end(), bytes_.begin(), bytes_.end());
    return out;
  }

  static BitPayload from_wire(std::span<const std::uint8_t> wire) {
    if (wire.empty()) throw std::invalid_argument("BitPayload::from_wire: empty");
    const std::size_t bits = wire[0];
    const std::size_t nbytes = (bits + 7) / 8;
    if (wire.size() != 1 + nbytes)
      throw std::invalid_argument("BitPayload::from_wire: size mismatch");
    BitPayload p;
    p.bit_size_ = bits;
    p.bytes_.assign(wire.begin() + 1, wire.end());
    if (bits % 8 != 0 && !p.bytes_.empty()) {
      const std::uint8_t mask =
          static_cast<std::uint8_t>(0xFFu << (8 - bits % 8));
      if ((p.bytes_.back() & ~mask) != 0)
        throw std::invalid_argument("BitPayload::from_wire: nonzero padding");
    }
    return p;
  }

  friend bool operator==(const BitPayload&, const BitPayload&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bit_size_ = 0;
};

// Packs a (sign, location) pair into exactly k bits: the sign occupies the
// top bit, the location the k-1 low-order bits. For k = 1 the location field
// is empty and loc must be 0.
inline BitPayload pack_message(bool sign, std::uint32_t loc, int k) {
  if (k < 1 || k > 32) throw std::invalid_argument("pack_message: bad k");
  if (k < 32 && loc >= (1u << (k - 1)))
    throw std::overflow_error("pack_message: loc does not fit in k-1 bits");
  const std::uint64_t value =
      (static_cast<std::uint64_t>(sign ? 1 : 0) << (k - 1)) | loc;
  BitPayload p;
  p.append_bits(value, k);
  return p;
}

inline std::pair<bool, std::uint32_t> unpack_message(const BitPayload& payload,
                                                     int k) {
  if (k < 1 || k > 32) throw std::invalid_argument("unpack_message: bad k");
  if (payload.bit_size() != static_cast<std::size_t>(k))
    throw std::invalid_argument("unpack_message: payload length != k");
  const std::uint64_t value = payload.read_bits(0, k);
  const bool sign = (value >> (k - 1)) & 1u;
  const std::uint32_t loc =
      static_cast<std::uint32_t>(value & ((1ull << (k - 1)) - 1));
  return {sign, loc};
}

}  // namespace trilemma

#endif  // TRILEMMA_BITS_HPP_
