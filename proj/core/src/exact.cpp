#include "ovcp/exact.hpp"

namespace ovcp {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;  // exact: result is C(n-k+i, i) after each step
  }
  return result;
}

BigInt pow_int(const BigInt& base, unsigned exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1u) result *= b;
    exp >>= 1u;
    if (exp > 0) b *= b;
  }
  return result;
}

}  // namespace ovcp
