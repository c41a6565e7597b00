#ifndef WB_OMACHINE_HPP
#define WB_OMACHINE_HPP

#include "wb/common.hpp"
#include "wb/encode.hpp"
#include "wb/nat.hpp"

#include <string>
#include <variant>
#include <vector>

namespace wb::omachine {

// ---------------------------------------------------------------------------
// A minimal register machine with one oracle-query instruction. Registers
// hold naturals; programs are finite instruction lists. Text form, one
// instruction per line ("; ..." comments, "name:" labels):
//
//   load  r i      r := i
//   mov   rd rs    rd := rs
//   inc   r        r := r + 1
//   dec   r        r := r - 1 (truncated)
//   jz    r lbl    jump to lbl if r = 0
//   jmp   lbl
//   query rd rs    rd := X(rs)
//   halt           result is r0
// ---------------------------------------------------------------------------
enum class Op { Load, Mov, Inc, Dec, Jz, Jmp, Query, Halt };

struct Instr {
  Op op;
  int a = 0;      // first register
  int b = 0;      // second register
  Nat imm;        // load immediate
  int target = 0; // jump target (instruction index)
};

class OracleProgram {
 public:
  static OracleProgram parse(const std::string& text);
  static OracleProgram from_instrs(std::vector<Instr> code);

  const std::vector<Instr>& code() const { return code_; }
  int register_count() const { return registers_; }
  std::string to_string() const;

 private:
  std::vector<Instr> code_;
  int registers_ = 1;
};

struct QueryEvent {
  std::size_t step;  // step index at which the query was issued
  Nat arg;
  Nat answer;
};

struct Config {
  std::size_t pc;
  std::vector<Nat> regs;
  bool operator==(const Config&) const = default;
};

// configs[i] is the configuration before step i; the final entry is the
// halting configuration. Queries are listed in issue order.
struct Trace {
  std::vector<Config> configs;
  std::vector<QueryEvent> queries;
  std::string to_string() const;
  std::string digest() const;  // short stable hash over the rendered trace
};

struct Halted {
  Nat value;
  Trace trace;
};

struct MalformedProgram {
  std::string what;
};

using RunResult = std::variant<Halted, OutOfFuel, MalformedProgram>;

// Run with the input loaded into r0, r1, ... and every other register 0.
RunResult run(const OracleProgram& prog, const encode::BairePoint& oracle,
              const encode::FinSeq& input, const EvalBudget& budget);

// True iff the trace is a complete halting computation of prog on input,
// with oracle answers read from the trace itself.
bool t_predicate(const OracleProgram& prog, const encode::FinSeq& input, const Trace& trace);

// The unbounded least-zero search: starting from r0 = first input entry
// (0 for empty input), halts with the least n >= r0 such that X(n) = 0.
const OracleProgram& least_zero_search_program();

}  // namespace wb::omachine

#endif
