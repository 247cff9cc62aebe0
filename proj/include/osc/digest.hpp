#pragma once

#include <string>
#include <string_view>

namespace osc {

// Hex-encoded digests. Used for law hashes and certificate fingerprints.
using Digest = std::string;

Digest sha256_hex(std::string_view data);

// Keyed MAC; certificate signatures use this rather than public keys.
Digest hmac_sha256_hex(std::string_view key, std::string_view data);

}  // namespace osc
