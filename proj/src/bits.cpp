#include "stegcost/bits.hpp"

#include <string>

namespace stegcost {

BitVec bits_from_bytes(const Bytes& data) {
  BitVec bits;
  bits.reserve(data.size() * 8);
  for (std::uint8_t b : data) {
    for (int i = 7; i >= 0; --i) bits.push_back((b >> i) & 1);
  }
  return bits;
}

Bytes bytes_from_bits(const BitVec& bits) {
  if (bits.size() % 8 != 0) throw EncodingError("bit count is not a multiple of 8");
  Bytes out(bits.size() / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw EncodingError("bit value out of range");
    out[i / 8] = static_cast<std::uint8_t>((out[i / 8] << 1) | bits[i]);
  }
  return out;
}

std::uint64_t bits_to_uint(const BitVec& bits) {
  if (bits.size() > 64) throw EncodingError("too many bits for a 64-bit value");
  std::uint64_t v = 0;
  for (std::uint8_t b : bits) {
    if (b > 1) throw EncodingError("bit value out of range");
    v = (v << 1) | b;
  }
  return v;
}

BitVec uint_to_bits(std::uint64_t value, std::size_t width) {
  if (width > 64) throw EncodingError("bit width exceeds 64");
  if (width < 64 && (value >> width) != 0) throw EncodingError("value does not fit width");
  BitVec bits(width, 0);
  for (std::size_t i = 0; i < width; ++i) {
    bits[width - 1 - i] = static_cast<std::uint8_t>((value >> i) & 1);
  }
  return bits;
}

BitVec frame_bits(const BitVec& message, std::size_t capacity_bits) {
  if (message.size() > 0xFFFF) throw CapacityError("framed message exceeds 65535 bits");
  if (message.size() + kFrameHeaderBits > capacity_bits) {
    throw CapacityError("message of " + std::to_string(message.size()) +
                        " bits does not fit capacity of " + std::to_string(capacity_bits));
  }
  BitVec wire = uint_to_bits(message.size(), kFrameHeaderBits);
  wire.insert(wire.end(), message.begin(), message.end());
  wire.resize(capacity_bits, 0);
  return wire;
}

BitVec deframe_bits(const BitVec& wire) {
  if (wire.size() < kFrameHeaderBits) throw EncodingError("stream shorter than frame header");
  std::uint64_t len = bits_to_uint(BitVec(wire.begin(), wire.begin() + kFrameHeaderBits));
  if (kFrameHeaderBits + len > wire.size()) throw EncodingError("frame length exceeds stream");
  return BitVec(wire.begin() + kFrameHeaderBits, wire.begin() + kFrameHeaderBits + len);
}

Bytes frame_bytes(const Bytes& message, std::size_t capacity_bytes, std::uint64_t pad_seed) {
  if (message.size() > 0xFFFF) throw CapacityError("framed message exceeds 65535 bytes");
  if (message.size() + kFrameHeaderBytes > capacity_bytes) {
    throw CapacityError("message of " + std::to_string(message.size()) +
                        " bytes does not fit capacity of " + std::to_string(capacity_bytes));
  }
  Bytes wire;
  wire.reserve(capacity_bytes);
  wire.push_back(static_cast<std::uint8_t>(message.size() >> 8));
  wire.push_back(static_cast<std::uint8_t>(message.size() & 0xFF));
  wire.insert(wire.end(), message.begin(), message.end());
  CounterRng pad(pad_seed, kStreamPad);
  while (wire.size() < capacity_bytes) {
    wire.push_back(static_cast<std::uint8_t>(pad.next_u64() & 0xFF));
  }
  return wire;
}

Bytes deframe_bytes(const Bytes& wire) {
  if (wire.size() < kFrameHeaderBytes) throw EncodingError("stream shorter than frame header");
  std::size_t len = (static_cast<std::size_t>(wire[0]) << 8) | wire[1];
  if (kFrameHeaderBytes + len > wire.size()) throw EncodingError("frame length exceeds stream");
  return Bytes(wire.begin() + kFrameHeaderBytes, wire.begin() + kFrameHeaderBytes + len);
}

BitVec random_bits(std::size_t n, CounterRng& rng) {
  BitVec bits(n, 0);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
  return bits;
}

Bytes random_bytes(std::size_t n, CounterRng& rng) {
  Bytes out(n, 0);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng.next_u64() & 0xFF);
  return out;
}

}  // namespace stegcost
