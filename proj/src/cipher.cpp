#include "cbc_chaos/cipher.hpp"

#include <stdexcept>

#include "cbc_chaos/rng.hpp"

namespace cbc_chaos {

std::string family_name(CipherFamily f) {
  switch (f) {
    case CipherFamily::identity: return "identity";
    case CipherFamily::negation: return "negation";
    case CipherFamily::xor_key: return "xor_key";
    case CipherFamily::bit_permutation: return "bit_permutation";
    case CipherFamily::mini_feistel: return "mini_feistel";
  }
  throw std::logic_error("unknown cipher family");
}

CipherFamily family_from_name(const std::string& name) {
  if (name == "identity") return CipherFamily::identity;
  if (name == "negation") return CipherFamily::negation;
  if (name == "xor_key") return CipherFamily::xor_key;
  if (name == "bit_permutation") return CipherFamily::bit_permutation;
  if (name == "mini_feistel") return CipherFamily::mini_feistel;
  throw std::invalid_argument("unknown cipher family: " + name);
}

void validate(const CipherSpec& spec) {
  if (spec.n_bits < 1 || spec.n_bits > BlockState::kMaxBits)
    throw std::invalid_argument("cipher width out of range");
  const std::uint64_t mask = (std::uint64_t{1} << spec.n_bits) - 1;
  switch (spec.family) {
    case CipherFamily::identity:
    case CipherFamily::negation:
      break;
    case CipherFamily::xor_key:
      if (spec.key & ~mask)
        throw std::invalid_argument("xor_key key does not fit the width");
      break;
    case CipherFamily::bit_permutation: {
      if (static_cast<int>(spec.permutation.size()) != spec.n_bits)
        throw std::invalid_argument("permutation length must equal the width");
      std::vector<bool> seen(spec.permutation.size(), false);
      for (int p : spec.permutation) {
        if (p < 0 || p >= spec.n_bits || seen[static_cast<std::size_t>(p)])
          throw std::invalid_argument("malformed bit permutation");
        seen[static_cast<std::size_t>(p)] = true;
      }
      break;
    }
    case CipherFamily::mini_feistel:
      if (spec.n_bits % 2 != 0)
        throw std::invalid_argument("mini_feistel needs an even width");
      if (spec.round_keys.size() < 2)
        throw std::invalid_argument("mini_feistel needs at least 2 rounds");
      break;
  }
}

namespace {

std::uint64_t rotl_half(std::uint64_t r, int amount, int half) {
  const std::uint64_t mask = (std::uint64_t{1} << half) - 1;
  amount %= half;
  if (amount == 0) return r & mask;
  return ((r << amount) | (r >> (half - amount))) & mask;
}

// Keyed XOR-rotate round function on the half-block.
std::uint64_t feistel_round(std::uint64_t r, std::uint64_t key, int half) {
  const std::uint64_t mask = (std::uint64_t{1} << half) - 1;
  return (rotl_half(r, static_cast<int>(key % static_cast<std::uint64_t>(half)),
                    half) ^
          key) &
         mask;
}

std::uint64_t feistel_encrypt(const CipherSpec& spec, std::uint64_t v) {
  const int half = spec.n_bits / 2;
  const std::uint64_t mask = (std::uint64_t{1} << half) - 1;
  std::uint64_t left = (v >> half) & mask;
  std::uint64_t right = v & mask;
  for (std::uint64_t k : spec.round_keys) {
    const std::uint64_t next_right = left ^ feistel_round(right, k, half);
    left = right;
    right = next_right;
  }
  return (left << half) | right;
}

std::uint64_t feistel_decrypt(const CipherSpec& spec, std::uint64_t v) {
  const int half = spec.n_bits / 2;
  const std::uint64_t mask = (std::uint64_t{1} << half) - 1;
  std::uint64_t left = (v >> half) & mask;
  std::uint64_t right = v & mask;
  for (auto it = spec.round_keys.rbegin(); it != spec.round_keys.rend(); ++it) {
    const std::uint64_t prev_left = right ^ feistel_round(left, *it, half);
    right = left;
    left = prev_left;
  }
  return (left << half) | right;
}

std::uint64_t permute_bits(const std::vector<int>& perm, std::uint64_t v,
                           int n, bool inverse) {
  std::uint64_t out = 0;
  for (int j = 0; j < n; ++j) {
    const int src = inverse ? j : perm[static_cast<std::size_t>(j)];
    const int dst = inverse ? perm[static_cast<std::size_t>(j)] : j;
    const std::uint64_t bit = (v >> (n - 1 - src)) & 1u;
    out |= bit << (n - 1 - dst);
  }
  return out;
}

}  // namespace

BlockState encrypt(const CipherSpec& spec, const BlockState& x) {
  validate(spec);
  if (x.size() != spec.n_bits)
    throw std::invalid_argument("block width does not match the cipher");
  switch (spec.family) {
    case CipherFamily::identity: return x;
    case CipherFamily::negation: return bitwise_negation(x);
    case CipherFamily::xor_key:
      return BlockState(x.size(), x.value() ^ spec.key);
    case CipherFamily::bit_permutation:
      return BlockState(
          x.size(), permute_bits(spec.permutation, x.value(), x.size(), false));
    case CipherFamily::mini_feistel:
      return BlockState(x.size(), feistel_encrypt(spec, x.value()));
  }
  throw std::logic_error("unknown cipher family");
}

BlockState decrypt(const CipherSpec& spec, const BlockState& x) {
  validate(spec);
  if (x.size() != spec.n_bits)
    throw std::invalid_argument("block width does not match the cipher");
  switch (spec.family) {
    case CipherFamily::identity: return x;
    case CipherFamily::negation: return bitwise_negation(x);
    case CipherFamily::xor_key:
      return BlockState(x.size(), x.value() ^ spec.key);
    case CipherFamily::bit_permutation:
      return BlockState(
          x.size(), permute_bits(spec.permutation, x.value(), x.size(), true));
    case CipherFamily::mini_feistel:
      return BlockState(x.size(), feistel_decrypt(spec, x.value()));
  }
  throw std::logic_error("unknown cipher family");
}

CipherSpec identity_cipher(int n_bits) {
  CipherSpec spec;
  spec.family = CipherFamily::identity;
  spec.n_bits = n_bits;
  validate(spec);
  return spec;
}

CipherSpec negation_cipher(int n_bits) {
  CipherSpec spec;
  spec.family = CipherFamily::negation;
  spec.n_bits = n_bits;
  validate(spec);
  return spec;
}

CipherSpec random_cipher(CipherFamily family, int n_bits, std::uint64_t seed) {
  CipherSpec spec;
  spec.family = family;
  spec.n_bits = n_bits;
  spec.seed = seed;
  Rng rng(seed, {static_cast<std::uint32_t>(family),
                 static_cast<std::uint32_t>(n_bits)});
  switch (family) {
    case CipherFamily::identity:
    case CipherFamily::negation:
      break;
    case CipherFamily::xor_key:
      spec.key = rng.below(std::uint64_t{1} << n_bits);
      break;
    case CipherFamily::bit_permutation: {
      spec.permutation.resize(static_cast<std::size_t>(n_bits));
      for (int j = 0; j < n_bits; ++j)
        spec.permutation[static_cast<std::size_t>(j)] = j;
      for (int j = n_bits - 1; j > 0; --j) {
        const auto i = static_cast<std::size_t>(
            rng.below(static_cast<std::uint64_t>(j) + 1));
        std::swap(spec.permutation[static_cast<std::size_t>(j)],
                  spec.permutation[i]);
      }
      break;
    }
    case CipherFamily::mini_feistel:
      for (int r = 0; r < kMiniFeistelDefaultRounds; ++r)
        spec.round_keys.push_back(rng.next());
      break;
  }
  validate(spec);
  return spec;
}

nlohmann::ordered_json to_json(const CipherSpec& spec) {
  nlohmann::ordered_json j;
  j["family"] = family_name(spec.family);
  j["N"] = spec.n_bits;
  switch (spec.family) {
    case CipherFamily::identity:
    case CipherFamily::negation:
      break;
    case CipherFamily::xor_key:
      j["key"] = spec.key;
      break;
    case CipherFamily::bit_permutation:
      j["key"] = spec.permutation;
      break;
    case CipherFamily::mini_feistel:
      j["key"] = spec.round_keys;
      break;
  }
  if (spec.seed) j["seed"] = *spec.seed;
  return j;
}

CipherSpec cipher_from_json(const nlohmann::json& j) {
  CipherSpec spec;
  if (!j.is_object() || !j.contains("family") || !j.contains("N"))
    throw std::invalid_argument("cipher spec needs family and N fields");
  spec.family = family_from_name(j.at("family").get<std::string>());
  spec.n_bits = j.at("N").get<int>();
  switch (spec.family) {
    case CipherFamily::identity:
    case CipherFamily::negation:
      break;
    case CipherFamily::xor_key:
      if (!j.contains("key") || !j.at("key").is_number_unsigned())
        throw std::invalid_argument("xor_key spec needs an unsigned key");
      spec.key = j.at("key").get<std::uint64_t>();
      break;
    case CipherFamily::bit_permutation:
      if (!j.contains("key") || !j.at("key").is_array())
        throw std::invalid_argument(
            "bit_permutation spec needs a permutation array key");
      spec.permutation = j.at("key").get<std::vector<int>>();
      break;
    case CipherFamily::mini_feistel:
      if (!j.contains("key") || !j.at("key").is_array())
        throw std::invalid_argument(
            "mini_feistel spec needs a round-key array key");
      spec.round_keys = j.at("key").get<std::vector<std::uint64_t>>();
      break;
  }
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  validate(spec);
  return spec;
}

}  // namespace cbc_chaos
