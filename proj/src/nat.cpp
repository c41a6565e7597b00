#include "wb/nat.hpp"

#include <limits>
#include <stdexcept>

namespace wb {

Rat pow2(long e) {
  Nat one = 1;
  if (e >= 0) return Rat(one << e, 1);
  return Rat(one, one << (-e));
}

Nat pair(const Nat& a, const Nat& b) {
  Nat s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<Nat, Nat> unpair(const Nat& c) {
  // s = floor((sqrt(8c+1)-1)/2), then b = c - s(s+1)/2.
  Nat disc = 8 * c + 1;
  Nat s = (sqrt(disc) - 1) / 2;
  while (s * (s + 1) / 2 > c) --s;
  while ((s + 1) * (s + 2) / 2 <= c) ++s;
  Nat b = c - s * (s + 1) / 2;
  return {Nat(s - b), b};
}

namespace {
Nat zigzag(const Nat& num, bool negative) {
  if (!negative) return num * 2;
  return num * 2 - 1;
}
}  // namespace

Nat rat_code(const Rat& q) {
  Nat num = numerator(q);
  bool neg = num < 0;
  if (neg) num = -num;
  return pair(zigzag(num, neg), denominator(q) - 1);
}

Rat rat_decode(const Nat& code) {
  auto [z, dm1] = unpair(code);
  Nat num = (z % 2 == 0) ? Nat(z / 2) : Nat((z + 1) / 2);
  Rat q(num, Nat(dm1 + 1));
  return (z % 2 == 0) ? q : Rat(-q);
}

std::uint64_t to_u64(const Nat& n) {
  if (n < 0 || n > std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error("natural out of uint64 range");
  return n.convert_to<std::uint64_t>();
}

std::string rat_str(const Rat& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rat parse_rat(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rat(Nat(text), 1);
  Nat num(text.substr(0, slash));
  Nat den(text.substr(slash + 1));
  if (den <= 0) throw std::invalid_argument("rational with nonpositive denominator: " + text);
  return Rat(num, den);
}

}  // namespace wb
