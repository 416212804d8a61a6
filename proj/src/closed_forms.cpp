#include "unizero/closed_forms.hpp"

#include <numeric>
#include <string>

#include "unizero/error.hpp"

namespace unizero {

std::int64_t totient(std::int64_t k) {
  if (k < 1) throw Error("totient: k must be positive");
  std::int64_t result = k;
  std::int64_t m = k;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

std::int64_t mod_inverse(std::int64_t b, std::int64_t k) {
  if (k < 2) throw Error("mod_inverse: modulus must be at least 2");
  std::int64_t old_r = ((b % k) + k) % k, r = k;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) throw Error("mod_inverse: " + std::to_string(b) + " is not invertible mod " + std::to_string(k));
  return ((old_s % k) + k) % k;
}

std::int64_t prop5_count(std::int64_t k) {
  if (k < 2) throw Error("prop5_count: k must be at least 2");
  return 2 * totient(k) - 1;
}

IntMatrix prop5_matrix(const Prop5Label& label) {
  const std::int64_t k = label.k;
  const std::int64_t b = label.b;
  const int eps = label.epsilon;
  if (k < 2 || b < 1 || b >= k || std::gcd(b, k) != 1 || (eps != 1 && eps != -1))
    throw Error("prop5: label outside (Z/kZ)* x {+-1}");
  if (eps == -1 && b == 1) throw Error("prop5: label (-1, 1) forces a zero entry");
  std::int64_t c = (-eps * mod_inverse(b, k)) % k;
  if (c <= 0) c += k;
  const std::int64_t num = eps + b * c;
  if (num % k != 0) throw Error("prop5: epsilon + b c not divisible by k");
  const std::int64_t a = num / k;
  return IntMatrix{{a, b}, {c, k}};
}

std::vector<Prop5Matrix> prop5_enumerate(std::int64_t k) {
  if (k < 2) throw Error("prop5_enumerate: k must be at least 2");
  std::vector<Prop5Matrix> out;
  for (int eps : {-1, 1}) {
    for (std::int64_t b = 1; b < k; ++b) {
      if (std::gcd(b, k) != 1 || (eps == -1 && b == 1)) continue;
      const Prop5Label label{eps, b, k};
      out.push_back({label, prop5_matrix(label)});
    }
  }
  return out;
}

}  // namespace unizero
