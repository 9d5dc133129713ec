#include "ofdmim/mls.hpp"

#include <bit>
#include <string>

#include "ofdmim/config.hpp"

namespace ofdmim {

namespace {

struct TableEntry {
  std::size_t degree;
  std::uint32_t polynomial;
};

constexpr TableEntry kPrimitive[] = {
    {2, 0b111},                // x^2 + x + 1
    {3, 0b1011},               // x^3 + x + 1
    {4, 0b10011},              // x^4 + x + 1
    {5, 0b100101},             // x^5 + x^2 + 1
    {6, 0b1000011},            // x^6 + x + 1
    {7, 0b10000011},           // x^7 + x + 1
    {8, 0b100011101},          // x^8 + x^4 + x^3 + x^2 + 1
    {9, 0b1000010001},         // x^9 + x^4 + 1
    {10, 0b10000001001},       // x^10 + x^3 + 1
};

}  // namespace

MlsSpec builtin_mls(std::size_t degree) {
  for (const auto& e : kPrimitive) {
    if (e.degree == degree) return {e.degree, e.polynomial};
  }
  throw ConfigError("no built-in primitive polynomial for degree " + std::to_string(degree));
}

void validate_builtin_mls_table() {
  for (const auto& e : kPrimitive) gen_mls({e.degree, e.polynomial});
}

std::vector<std::uint8_t> gen_mls(const MlsSpec& spec) {
  const std::size_t m = spec.degree;
  if (m < 2 || m > 31) throw ConfigError("MLS degree must be in [2, 31]");
  if ((spec.polynomial >> m) != 1U || (spec.polynomial & 1U) == 0) {
    throw ConfigError("feedback polynomial must have degree m and a constant term");
  }
  // State bit i holds s[t + i]; s[t + m] = XOR of s[t + i] over the low coefficients.
  const std::uint32_t feedback = spec.polynomial & ((1U << m) - 1U);
  const std::uint32_t initial = (1U << m) - 1U;
  const std::size_t period = spec.period();

  std::vector<std::uint8_t> out(period);
  std::uint32_t state = initial;
  for (std::size_t t = 0; t < period; ++t) {
    if (t > 0 && state == initial) {
      throw ConfigError("polynomial is not primitive: period " + std::to_string(t) + " < " +
                        std::to_string(period));
    }
    out[t] = static_cast<std::uint8_t>(state & 1U);
    const std::uint32_t next = static_cast<std::uint32_t>(std::popcount(state & feedback) & 1);
    state = (state >> 1) | (next << (m - 1));
  }
  if (state != initial) throw ConfigError("polynomial is not primitive: state did not recur");
  return out;
}

std::vector<int> to_bipolar(const std::vector<std::uint8_t>& bits) {
  std::vector<int> out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) out[i] = bits[i] ? -1 : 1;
  return out;
}

std::vector<long> circular_autocorrelation(const std::vector<int>& seq) {
  const std::size_t len = seq.size();
  std::vector<long> acf(len, 0);
  for (std::size_t shift = 0; shift < len; ++shift) {
    long sum = 0;
    for (std::size_t i = 0; i < len; ++i) sum += seq[i] * seq[(i + shift) % len];
    acf[shift] = sum;
  }
  return acf;
}

std::vector<std::vector<int>> cyclic_hadamard(std::size_t size) {
  if (size < 4 || !is_power_of_two(size)) {
    throw ConfigError("cyclic Hadamard size must be a power of two >= 4");
  }
  const auto core = to_bipolar(gen_mls(builtin_mls(log2_exact(size))));
  const std::size_t len = core.size();
  std::vector<std::vector<int>> h(size, std::vector<int>(size, 1));
  for (std::size_t a = 0; a < len; ++a) {
    for (std::size_t b = 0; b < len; ++b) h[a + 1][b + 1] = core[(b + len - a) % len];
  }
  return h;
}

}  // namespace ofdmim
