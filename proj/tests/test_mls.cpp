#include <doctest.h>

#include <numeric>

#include "ofdmim/config.hpp"
#include "ofdmim/mls.hpp"

using namespace ofdmim;

TEST_CASE("built-in polynomials give maximal period and two-valued autocorrelation") {
  CHECK_NOTHROW(validate_builtin_mls_table());
  for (std::size_t m = 2; m <= 10; ++m) {
    CAPTURE(m);
    const auto bits = gen_mls(builtin_mls(m));
    REQUIRE(bits.size() == (std::size_t{1} << m) - 1);
    const auto acf = circular_autocorrelation(to_bipolar(bits));
    CHECK(acf[0] == static_cast<long>(bits.size()));
    for (std::size_t s = 1; s < acf.size(); ++s) CHECK(acf[s] == -1);
  }
}

TEST_CASE("degree-3 sequence from the all-ones state") {
  // s[t+3] = s[t+1] ^ s[t] for x^3 + x + 1
  const auto bits = gen_mls({3, 0b1011});
  CHECK(bits == std::vector<std::uint8_t>{1, 1, 1, 0, 0, 1, 0});
}

TEST_CASE("degree-6 balance: 32 ones, 31 zeros") {
  const auto bits = gen_mls(builtin_mls(6));
  CHECK(builtin_mls(6).polynomial == 0b1000011u);
  const auto ones = std::accumulate(bits.begin(), bits.end(), 0);
  CHECK(ones == 32);
  CHECK(bits.size() - ones == 31);
}

TEST_CASE("degree-2 smallest case has period 3") {
  CHECK(gen_mls({2, 0b111}).size() == 3);
}

TEST_CASE("non-primitive polynomials are caught by the period check") {
  CHECK_THROWS_AS(gen_mls({4, 0b11111}), ConfigError);  // x^4+x^3+x^2+x+1, period 5
  CHECK_THROWS_AS(gen_mls({4, 0b10101}), ConfigError);  // (x^2+x+1)^2
  CHECK_THROWS_AS(gen_mls({4, 0b1011}), ConfigError);   // wrong degree
  CHECK_THROWS_AS(builtin_mls(11), ConfigError);
}

TEST_CASE("cyclic Hadamard matrices are orthogonal") {
  for (std::size_t n = 4; n <= 256; n *= 2) {
    CAPTURE(n);
    const auto h = cyclic_hadamard(n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(h[0][i] == 1);
      CHECK(h[i][0] == 1);
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        long dot = 0;
        for (std::size_t i = 0; i < n; ++i) dot += h[a][i] * h[b][i];
        CHECK(dot == (a == b ? static_cast<long>(n) : 0));
      }
    }
  }
  CHECK_THROWS_AS(cyclic_hadamard(48), ConfigError);
}
