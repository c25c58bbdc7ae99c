#ifndef EPSMULT_DIGEST_HPP
#define EPSMULT_DIGEST_HPP

#include "error.hpp"

#include <openssl/evp.h>

#include <memory>
#include <string>
#include <string_view>

namespace epsmult {

/// Lower-case hex SHA-256 of `data`.
inline std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx)
    throw InvariantFailure("cannot allocate digest context");
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
    throw InvariantFailure("SHA-256 computation failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

} // namespace epsmult

#endif
