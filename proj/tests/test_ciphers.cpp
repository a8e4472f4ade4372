// Toy cipher families: bijectivity, roundtrips, validation, serialization.
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cbc_chaos/cipher.hpp"

using namespace cbc_chaos;

namespace {

// Exhaustive bijection + inverse check over the whole block space.
void check_sound(const CipherSpec& spec) {
  const std::uint64_t size = std::uint64_t{1} << spec.n_bits;
  std::vector<bool> seen(size, false);
  for (std::uint64_t v = 0; v < size; ++v) {
    BlockState x(spec.n_bits, v);
    BlockState y = encrypt(spec, x);
    REQUIRE_FALSE(seen[y.value()]);
    seen[y.value()] = true;
    REQUIRE(decrypt(spec, y) == x);
  }
}

}  // namespace

TEST_CASE("identity and negation singletons") {
  CipherSpec id = identity_cipher(10);
  CHECK(encrypt(id, BlockState(10, 693)).value() == 693);
  CipherSpec neg = negation_cipher(10);
  CHECK(encrypt(neg, BlockState(10, 0)).value() == 1023);
  CHECK(encrypt(neg, BlockState(10, 693)).value() == (~693u & 1023u));
}

TEST_CASE("xor key cipher") {
  CipherSpec spec;
  spec.family = CipherFamily::xor_key;
  spec.n_bits = 10;
  spec.key = 0b1000000001;
  validate(spec);
  CHECK(encrypt(spec, BlockState(10, 0)).value() == 0b1000000001);
  CHECK(encrypt(spec, BlockState(10, 0b1000000001)).value() == 0);
  spec.key = 0;
  CHECK(encrypt(spec, BlockState(10, 123)).value() == 123);
}

TEST_CASE("every family is bijective with a working inverse") {
  check_sound(identity_cipher(10));
  check_sound(negation_cipher(10));
  check_sound(random_cipher(CipherFamily::xor_key, 10, 5));
  check_sound(random_cipher(CipherFamily::bit_permutation, 10, 6));
  check_sound(random_cipher(CipherFamily::mini_feistel, 10, 7));
  // Other widths, including the widest feistel tested exhaustively.
  check_sound(random_cipher(CipherFamily::bit_permutation, 5, 3));
  check_sound(random_cipher(CipherFamily::mini_feistel, 12, 4));
  check_sound(random_cipher(CipherFamily::xor_key, 1, 1));
}

TEST_CASE("four round feistel from seed 1 is a bijection") {
  CipherSpec spec = random_cipher(CipherFamily::mini_feistel, 10, 1);
  REQUIRE(spec.round_keys.size() == kMiniFeistelDefaultRounds);
  // Extend to four rounds; soundness must not depend on the round count.
  spec.round_keys.push_back(spec.round_keys[0] ^ spec.round_keys[1]);
  validate(spec);
  check_sound(spec);
}

TEST_CASE("random ciphers are deterministic in the seed") {
  for (CipherFamily fam :
       {CipherFamily::xor_key, CipherFamily::bit_permutation,
        CipherFamily::mini_feistel}) {
    CipherSpec a = random_cipher(fam, 10, 42);
    CipherSpec b = random_cipher(fam, 10, 42);
    CHECK(to_json(a) == to_json(b));
    CHECK(a.seed.has_value());
    CHECK(*a.seed == 42);
    CipherSpec c = random_cipher(fam, 10, 43);
    bool differs = false;
    for (std::uint64_t v = 0; v < 1024; ++v)
      differs = differs ||
                encrypt(a, BlockState(10, v)) != encrypt(c, BlockState(10, v));
    CHECK(differs);
  }
}

TEST_CASE("random bit permutations are permutations of 0..N-1") {
  CipherSpec spec = random_cipher(CipherFamily::bit_permutation, 10, 99);
  std::vector<int> sorted = spec.permutation;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> want(10);
  std::iota(want.begin(), want.end(), 0);
  CHECK(sorted == want);
}

TEST_CASE("cipher validation rejects malformed specs") {
  CipherSpec bad_key;
  bad_key.family = CipherFamily::xor_key;
  bad_key.n_bits = 10;
  bad_key.key = 1024;
  CHECK_THROWS_AS(validate(bad_key), std::invalid_argument);

  CipherSpec bad_perm;
  bad_perm.family = CipherFamily::bit_permutation;
  bad_perm.n_bits = 3;
  bad_perm.permutation = {0, 0, 2};
  CHECK_THROWS_AS(validate(bad_perm), std::invalid_argument);

  CipherSpec odd_feistel;
  odd_feistel.family = CipherFamily::mini_feistel;
  odd_feistel.n_bits = 9;
  odd_feistel.round_keys = {1, 2, 3};
  CHECK_THROWS_AS(validate(odd_feistel), std::invalid_argument);

  CipherSpec no_rounds;
  no_rounds.family = CipherFamily::mini_feistel;
  no_rounds.n_bits = 10;
  CHECK_THROWS_AS(validate(no_rounds), std::invalid_argument);
}

TEST_CASE("cipher specs roundtrip through json") {
  for (CipherFamily fam :
       {CipherFamily::identity, CipherFamily::negation, CipherFamily::xor_key,
        CipherFamily::bit_permutation, CipherFamily::mini_feistel}) {
    CipherSpec spec = random_cipher(fam, 10, 21);
    CipherSpec back = cipher_from_json(to_json(spec));
    CHECK(back.family == spec.family);
    CHECK(back.n_bits == spec.n_bits);
    for (std::uint64_t v : {0ull, 17ull, 512ull, 1023ull})
      CHECK(encrypt(back, BlockState(10, v)) ==
            encrypt(spec, BlockState(10, v)));
  }
}

TEST_CASE("family names roundtrip") {
  for (CipherFamily fam :
       {CipherFamily::identity, CipherFamily::negation, CipherFamily::xor_key,
        CipherFamily::bit_permutation, CipherFamily::mini_feistel})
    CHECK(family_from_name(family_name(fam)) == fam);
  CHECK_THROWS_AS(family_from_name("rot13"), std::invalid_argument);
}
