#ifndef WB_COMMON_HPP
#define WB_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wb {

using Fuel = std::uint64_t;

// Step/precision budget shared by the term evaluator, the oracle machine,
// and every unbounded search in the workbench.
struct EvalBudget {
  Fuel fuel = 100000;
  int precision = 20;
};

// Marker result for bounded searches that ran out of steps. Distinguishable
// from every numeral; never conflated with an answer.
struct OutOfFuel {
  bool operator==(const OutOfFuel&) const = default;
};

// Internal control-flow signal: a nested evaluation exhausted its budget.
// Caught at operation boundaries and converted to an OutOfFuel result.
struct OutOfFuelSignal {};

// A query hit an oracle/provider whose promise turned out to be false
// (e.g. a mu totality witness with no zero under the bound).
class OracleFailure : public std::runtime_error {
 public:
  explicit OracleFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wb

#endif
