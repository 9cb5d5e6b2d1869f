#include "hfree/numeric.hpp"

namespace hfree {

BigInt binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;  // exact: the prefix product is divisible by i!
  }
  return result;
}

double to_double(const Rat& q) { return q.convert_to<double>(); }

std::string rat_to_string(const Rat& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) {
    s += "/";
    s += denominator(q).str();
  }
  return s;
}

bool is_integer(const Rat& q) { return denominator(q) == 1; }

}  // namespace hfree
