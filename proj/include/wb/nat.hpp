#ifndef WB_NAT_HPP
#define WB_NAT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>

namespace wb {

// Naturals are unbounded: finite-sequence codes, machine registers and term
// numerals all live here. Values are kept non-negative by convention.
using Nat = boost::multiprecision::cpp_int;

// Exact rationals; every comparison in the workbench is exact.
using Rat = boost::multiprecision::cpp_rational;

// 2^e for possibly negative e.
Rat pow2(long e);

// Cantor pairing (a+b)(a+b+1)/2 + b and its inverse.
Nat pair(const Nat& a, const Nat& b);
std::pair<Nat, Nat> unpair(const Nat& c);

// Rationals coded as naturals: pair(zigzag(numerator), denominator-1) with
// zigzag(n) = 2n for n >= 0 and -2n-1 otherwise. Used for rational literals
// in terms and for Cauchy codes fed through type-1 objects.
Nat rat_code(const Rat& q);
Rat rat_decode(const Nat& code);

std::uint64_t to_u64(const Nat& n);  // throws if out of range
std::string rat_str(const Rat& q);
Rat parse_rat(const std::string& text);  // "p/q" or "p", optional leading '-'

}  // namespace wb

#endif
