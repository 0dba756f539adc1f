#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stegcost/common.hpp"
#include "stegcost/rng.hpp"

namespace stegcost {

// A covert bitstream; every element is 0 or 1.
using BitVec = std::vector<std::uint8_t>;

BitVec bits_from_bytes(const Bytes& data);  // MSB first within each byte
Bytes bytes_from_bits(const BitVec& bits);  // size must be a multiple of 8

std::uint64_t bits_to_uint(const BitVec& bits);            // MSB first, size <= 64
BitVec uint_to_bits(std::uint64_t value, std::size_t width);

// Covert-stream framing: a 16-bit big-endian length header (bit count for
// bit streams, byte count for byte streams) precedes the payload; the rest
// of the carrier capacity is padding. Framing makes roundtrips well defined
// when a message is shorter than the carrier, and caps one flow's framed
// message at 65535 bits / bytes.
inline constexpr std::size_t kFrameHeaderBits = 16;
inline constexpr std::size_t kFrameHeaderBytes = 2;

BitVec frame_bits(const BitVec& message, std::size_t capacity_bits);
BitVec deframe_bits(const BitVec& wire);
Bytes frame_bytes(const Bytes& message, std::size_t capacity_bytes, std::uint64_t pad_seed);
Bytes deframe_bytes(const Bytes& wire);

BitVec random_bits(std::size_t n, CounterRng& rng);
Bytes random_bytes(std::size_t n, CounterRng& rng);

}  // namespace stegcost
