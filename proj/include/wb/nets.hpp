#ifndef WB_NETS_HPP
#define WB_NETS_HPP

#include "wb/common.hpp"
#include "wb/encode.hpp"
#include "wb/nat.hpp"

#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace wb::nets {

// ---------------------------------------------------------------------------
// Directed index sets: finite sets of canonically coded Baire points, ordered
// by inclusion. The union of two indices realizes upward directedness.
// ---------------------------------------------------------------------------
class DirectedIndex {
 public:
  DirectedIndex() = default;
  static DirectedIndex empty() { return {}; }
  static DirectedIndex of_points(const std::vector<encode::BairePoint>& points);
  static DirectedIndex of_codes(std::vector<Nat> codes);

  DirectedIndex union_with(const DirectedIndex& o) const;
  bool subset_of(const DirectedIndex& o) const;
  bool operator==(const DirectedIndex&) const = default;

  std::size_t size() const { return codes_.size(); }
  const std::vector<Nat>& codes() const { return codes_; }
  encode::BairePoint point(std::size_t i) const;

  // Index <-> Baire point coding for witness searches: g(0) is the size,
  // g(1..size) the member codes; reads at most max_size+1 values of g.
  static DirectedIndex decode_from(const encode::BairePoint& g, std::size_t max_size);
  encode::BairePoint encode_as_point() const;

  std::string to_string() const;

 private:
  std::vector<Nat> codes_;  // sorted, unique
};

// ---------------------------------------------------------------------------
// Nets (phalanxes) into Cantor space or the unit interval.
// ---------------------------------------------------------------------------
enum class NetSort { Cantor, UnitInterval };

struct Net {
  NetSort sort;
  std::function<encode::BairePoint(const DirectedIndex&)> cantor_value;
  std::function<encode::Real(const DirectedIndex&)> real_value;

  static Net cantor(std::function<encode::BairePoint(const DirectedIndex&)> value);
  static Net unit(std::function<encode::Real(const DirectedIndex&)> value);
};

// Modulus of convergence: an index past which the net stays within 2^-k of
// its limit.
struct Modulus {
  std::function<DirectedIndex(int k)> at;
};

// ---------------------------------------------------------------------------
// Monotonicity on sampled comparable pairs. Cantor sort compares
// lexicographically to cmp_depth; unit sort compares at working precision
// (x_a <= x_b accepted unless the approximations certify x_a > x_b).
// ---------------------------------------------------------------------------
bool check_increasing(const Net& net,
                      const std::vector<std::pair<DirectedIndex, DirectedIndex>>& sample_pairs,
                      int cmp_depth, int precision = 20);

// Jump access for limit computation: answers "is there an index d whose value
// is >=lex sigma * 0^omega" for binary sigma, or Unknown.
struct JUnknown {};
using JAccess = std::function<std::variant<bool, JUnknown>(const std::vector<int>& sigma)>;

// Bit-by-bit limit of an increasing Cantor net via jump queries:
// f(n) = 1 iff some net value is >=lex f-bar-n * <1> * 0^omega.
std::variant<std::vector<int>, OutOfFuel> limit_monotone_cantor(const JAccess& jump, int depth);

// Modulus check: for k <= k_max, all sampled supersets d of mod(k) satisfy
// |x_d - limit| < 2^-k, certified at working precision.
bool check_modulus(const Net& net, const encode::Real& limit, const Modulus& mod, int k_max,
                   int samples_per_k, const std::vector<encode::BairePoint>& extra_point_pool,
                   std::uint64_t seed);

}  // namespace wb::nets

#endif
