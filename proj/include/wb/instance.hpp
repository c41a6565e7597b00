#ifndef WB_INSTANCE_HPP
#define WB_INSTANCE_HPP

#include "wb/common.hpp"
#include "wb/reduce.hpp"

#include <string>
#include <vector>

namespace wb::instance {

// Exit codes for the batch driver (documented in the README):
//   0 Validated, 2 ProviderInvalid, 3 ValidationFailed, 4 OutOfFuel,
//   5 NoWitness, 6 AntecedentRefuted, 10 schema/parse error.
enum ExitCode : int {
  kValidated = 0,
  kProviderInvalid = 2,
  kValidationFailed = 3,
  kOutOfFuel = 4,
  kNoWitness = 5,
  kAntecedentRefuted = 6,
  kSchemaError = 10,
};

int exit_code_for(const reduce::Failure& f);

struct RunOptions {
  EvalBudget budget;
  std::uint64_t seed = 0;
  bool dump_trace = false;
  std::string timestamp = "0";  // callers pass wall-clock time; tests pin it
};

struct RunOutcome {
  int exit_code = kValidated;
  std::string verdict;
  std::string report_text;
};

class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// Run a versioned instance document (JSON text) or a file containing one.
RunOutcome run_instance_text(const std::string& json_text, const RunOptions& options);
RunOutcome run_instance(const std::string& path, const RunOptions& options);

struct CatalogEntry {
  std::string name;
  std::string anchor;          // the classical statement the reduction realizes
  std::string instance_class;  // what instances the desk-scale pipeline accepts
};

const std::vector<CatalogEntry>& list_reductions();
std::string render_catalog();

}  // namespace wb::instance

#endif
