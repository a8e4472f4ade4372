// Toy block-cipher families for desk-scale experiments. Every family is a
// bijection of the N-bit block space by construction; decrypt inverts
// encrypt exactly.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cbc_chaos/block_state.hpp"

namespace cbc_chaos {

enum class CipherFamily {
  identity,
  negation,
  xor_key,
  bit_permutation,
  mini_feistel,
};

std::string family_name(CipherFamily f);
CipherFamily family_from_name(const std::string& name);

struct CipherSpec {
  CipherFamily family = CipherFamily::identity;
  int n_bits = 0;
  std::uint64_t key = 0;                 // xor_key
  std::vector<int> permutation;          // bit_permutation: out bit j = in bit permutation[j]
  std::vector<std::uint64_t> round_keys; // mini_feistel, one entry per round
  std::optional<std::uint64_t> seed;     // provenance when drawn randomly
};

// Throws std::invalid_argument when the spec violates its family's shape
// (width, key range, permutation validity, round count, even halves).
void validate(const CipherSpec& spec);

BlockState encrypt(const CipherSpec& spec, const BlockState& x);
BlockState decrypt(const CipherSpec& spec, const BlockState& x);

CipherSpec identity_cipher(int n_bits);
CipherSpec negation_cipher(int n_bits);

constexpr int kMiniFeistelDefaultRounds = 3;

// Same family, width and seed always yield the same spec.
CipherSpec random_cipher(CipherFamily family, int n_bits, std::uint64_t seed);

nlohmann::ordered_json to_json(const CipherSpec& spec);
CipherSpec cipher_from_json(const nlohmann::json& j);

}  // namespace cbc_chaos
