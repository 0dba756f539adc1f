#include "stegcost/hash.hpp"

#include <openssl/evp.h>

namespace stegcost {

std::array<std::uint8_t, 32> sha256(const Bytes& data) {
  std::array<std::uint8_t, 32> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != digest.size()) {
    throw Error("sha256 digest failed");
  }
  return digest;
}

}  // namespace stegcost
