#include "wb/nets.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace wb::nets {

DirectedIndex DirectedIndex::of_points(const std::vector<encode::BairePoint>& points) {
  std::vector<Nat> codes;
  codes.reserve(points.size());
  for (const auto& p : points) codes.push_back(p.canonical_code());
  return of_codes(std::move(codes));
}

DirectedIndex DirectedIndex::of_codes(std::vector<Nat> codes) {
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  DirectedIndex d;
  d.codes_ = std::move(codes);
  return d;
}

DirectedIndex DirectedIndex::union_with(const DirectedIndex& o) const {
  std::vector<Nat> codes = codes_;
  codes.insert(codes.end(), o.codes_.begin(), o.codes_.end());
  return of_codes(std::move(codes));
}

bool DirectedIndex::subset_of(const DirectedIndex& o) const {
  return std::includes(o.codes_.begin(), o.codes_.end(), codes_.begin(), codes_.end());
}

encode::BairePoint DirectedIndex::point(std::size_t i) const {
  return encode::BairePoint::from_code(codes_.at(i));
}

DirectedIndex DirectedIndex::decode_from(const encode::BairePoint& g, std::size_t max_size) {
  Nat count = g(0);
  std::size_t n = count > Nat(max_size) ? max_size : count.convert_to<std::size_t>();
  std::vector<Nat> codes;
  codes.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) codes.push_back(g(Nat(i)));
  return of_codes(std::move(codes));
}

encode::BairePoint DirectedIndex::encode_as_point() const {
  std::vector<Nat> prefix;
  prefix.push_back(Nat(codes_.size()));
  prefix.insert(prefix.end(), codes_.begin(), codes_.end());
  return encode::BairePoint::table(std::move(prefix),
                                   encode::TailRule{encode::TailRule::Kind::Constant, 0, {}});
}

std::string DirectedIndex::to_string() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    if (i) os << ",";
    os << codes_[i];
  }
  os << "}";
  return os.str();
}

Net Net::cantor(std::function<encode::BairePoint(const DirectedIndex&)> value) {
  Net n;
  n.sort = NetSort::Cantor;
  n.cantor_value = std::move(value);
  return n;
}

Net Net::unit(std::function<encode::Real(const DirectedIndex&)> value) {
  Net n;
  n.sort = NetSort::UnitInterval;
  n.real_value = std::move(value);
  return n;
}

bool check_increasing(const Net& net,
                      const std::vector<std::pair<DirectedIndex, DirectedIndex>>& sample_pairs,
                      int cmp_depth, int precision) {
  for (const auto& [lo, hi] : sample_pairs) {
    if (!lo.subset_of(hi)) continue;  // only comparable pairs constrain the net
    if (net.sort == NetSort::Cantor) {
      if (encode::lex_compare_bounded(net.cantor_value(lo), net.cantor_value(hi),
                                      static_cast<std::size_t>(cmp_depth)) > 0)
        return false;
    } else {
      // Reject only when the approximations certify x_lo > x_hi.
      Rat a = net.real_value(lo).approx(precision);
      Rat b = net.real_value(hi).approx(precision);
      if (a - b > pow2(-precision)) return false;
    }
  }
  return true;
}

std::variant<std::vector<int>, OutOfFuel> limit_monotone_cantor(const JAccess& jump, int depth) {
  std::vector<int> bits;
  for (int n = 0; n < depth; ++n) {
    std::vector<int> candidate = bits;
    candidate.push_back(1);
    auto answer = jump(candidate);
    if (std::holds_alternative<JUnknown>(answer)) return OutOfFuel{};
    bits.push_back(std::get<bool>(answer) ? 1 : 0);
  }
  return bits;
}

bool check_modulus(const Net& net, const encode::Real& limit, const Modulus& mod, int k_max,
                   int samples_per_k, const std::vector<encode::BairePoint>& extra_point_pool,
                   std::uint64_t seed) {
  if (net.sort != NetSort::UnitInterval)
    throw std::logic_error("check_modulus expects a unit-interval net");
  std::mt19937_64 rng(seed);
  for (int k = 0; k <= k_max; ++k) {
    DirectedIndex base = mod.at(k);
    for (int s = 0; s < samples_per_k; ++s) {
      // A random superset of mod(k) drawn from the pool.
      DirectedIndex d = base;
      if (!extra_point_pool.empty()) {
        std::size_t extras = rng() % (extra_point_pool.size() + 1);
        std::vector<encode::BairePoint> pts;
        for (std::size_t i = 0; i < extras; ++i)
          pts.push_back(extra_point_pool[rng() % extra_point_pool.size()]);
        if (!pts.empty()) d = d.union_with(DirectedIndex::of_points(pts));
      }
      int p = k + 4;
      Rat gap = (net.real_value(d) - limit).abs().approx(p);
      // Certified strict bound: gap + 2^-p < 2^-k implies |x_d - limit| < 2^-k.
      if (!(gap + pow2(-p) < pow2(-k))) return false;
    }
  }
  return true;
}

}  // namespace wb::nets
