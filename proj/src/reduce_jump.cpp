#include "wb/reduce.hpp"

namespace wb::reduce {

nets::Net jump_to_netlimit(const funct::Functional2OnPairs& Y) {
  auto eval = Y.eval;
  return nets::Net::cantor([eval](const nets::DirectedIndex& w) {
    std::vector<encode::BairePoint> points;
    points.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) points.push_back(w.point(i));
    return encode::BairePoint::host(
        [eval, points](const Nat& k) -> Nat {
          for (const auto& p : points)
            if (eval(p, k) == 0) return 1;
          return 0;
        },
        "phalanx-value");
  });
}

std::variant<std::vector<int>, OutOfFuel> limit_from_sigma_jump(const SigmaJump& jump, int depth) {
  std::vector<int> bits;
  std::vector<Nat> prefix;
  for (int n = 0; n < depth; ++n) {
    encode::FinSeq candidate = encode::FinSeq(prefix).append(1);
    funct::JumpAnswer answer = jump(candidate);
    if (std::holds_alternative<funct::UnknownJ>(answer)) return OutOfFuel{};
    int bit = std::holds_alternative<funct::InJ>(answer) ? 1 : 0;
    bits.push_back(bit);
    prefix.push_back(Nat(bit));
  }
  return bits;
}

NetJumpData netlimit_to_jump(const nets::Net& net, std::size_t index_decode_limit) {
  if (net.sort != nets::NetSort::Cantor)
    throw std::logic_error("netlimit_to_jump expects a Cantor-sorted net");
  auto value = net.cantor_value;
  funct::Functional2OnPairs Y;
  Y.label = "net-geqlex";
  Y.eval = [value, index_decode_limit](const encode::BairePoint& g, const Nat& sigma_code) -> Nat {
    nets::DirectedIndex w = nets::DirectedIndex::decode_from(g, index_decode_limit);
    encode::FinSeq sigma = encode::FinSeq::decode(sigma_code);
    std::vector<int> bits;
    bits.reserve(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) bits.push_back(sigma.at(i) == 0 ? 0 : 1);
    return encode::geq_lex_zero_padded(value(w), bits) ? 0 : 1;
  };
  return NetJumpData{std::move(Y), index_decode_limit};
}

IndexJumpSearcher::IndexJumpSearcher(funct::Functional2OnPairs Y,
                                     std::vector<encode::BairePoint> pool, bool exhaustive,
                                     std::size_t index_decode_limit)
    : Y_(std::move(Y)),
      pool_(std::move(pool)),
      exhaustive_(exhaustive),
      limit_(index_decode_limit),
      accumulated_(std::make_shared<nets::DirectedIndex>()) {}

funct::JumpAnswer IndexJumpSearcher::query(const encode::FinSeq& sigma) {
  Nat code = sigma.code();
  auto try_index = [&](const nets::DirectedIndex& w) -> bool {
    if (w.size() > limit_) return false;
    return Y_.eval(w.encode_as_point(), code) == 0;
  };
  if (try_index(*accumulated_)) return funct::InJ{accumulated_->encode_as_point()};
  for (const auto& p : pool_) {
    nets::DirectedIndex extended = accumulated_->union_with(nets::DirectedIndex::of_points({p}));
    if (try_index(extended)) {
      *accumulated_ = extended;
      return funct::InJ{extended.encode_as_point()};
    }
  }
  if (exhaustive_) return funct::NotInJ{};
  return funct::UnknownJ{};
}

SigmaJump IndexJumpSearcher::as_sigma_jump() {
  auto self = *this;  // shares the accumulated index
  return [self](const encode::FinSeq& sigma) mutable { return self.query(sigma); };
}

}  // namespace wb::reduce
