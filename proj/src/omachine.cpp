#include "wb/omachine.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace wb::omachine {

namespace {

struct RawInstr {
  std::string op;
  std::vector<std::string> args;
  std::size_t line;
};

int parse_reg(const std::string& text, std::size_t line) {
  if (text.size() < 2 || text[0] != 'r')
    throw std::invalid_argument("line " + std::to_string(line) + ": expected register, got '" +
                                text + "'");
  return std::stoi(text.substr(1));
}

}  // namespace

OracleProgram OracleProgram::parse(const std::string& text) {
  std::vector<RawInstr> raw;
  std::map<std::string, int> labels;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto semi = line.find(';'); semi != std::string::npos) line.resize(semi);
    std::istringstream ls(line);
    std::string word;
    std::vector<std::string> words;
    while (ls >> word) words.push_back(word);
    if (words.empty()) continue;
    if (words[0].back() == ':') {
      labels[words[0].substr(0, words[0].size() - 1)] = static_cast<int>(raw.size());
      words.erase(words.begin());
      if (words.empty()) continue;
    }
    raw.push_back({words[0], {words.begin() + 1, words.end()}, lineno});
  }

  std::vector<Instr> code;
  for (const auto& r : raw) {
    auto need = [&](std::size_t n) {
      if (r.args.size() != n)
        throw std::invalid_argument("line " + std::to_string(r.line) + ": '" + r.op +
                                    "' takes " + std::to_string(n) + " argument(s)");
    };
    auto label_target = [&](const std::string& name) {
      auto it = labels.find(name);
      if (it == labels.end())
        throw std::invalid_argument("line " + std::to_string(r.line) + ": unknown label '" +
                                    name + "'");
      return it->second;
    };
    Instr i;
    if (r.op == "load") {
      need(2);
      i = {Op::Load, parse_reg(r.args[0], r.line), 0, Nat(r.args[1]), 0};
    } else if (r.op == "mov") {
      need(2);
      i = {Op::Mov, parse_reg(r.args[0], r.line), parse_reg(r.args[1], r.line), 0, 0};
    } else if (r.op == "inc") {
      need(1);
      i = {Op::Inc, parse_reg(r.args[0], r.line), 0, 0, 0};
    } else if (r.op == "dec") {
      need(1);
      i = {Op::Dec, parse_reg(r.args[0], r.line), 0, 0, 0};
    } else if (r.op == "jz") {
      need(2);
      i = {Op::Jz, parse_reg(r.args[0], r.line), 0, 0, label_target(r.args[1])};
    } else if (r.op == "jmp") {
      need(1);
      i = {Op::Jmp, 0, 0, 0, label_target(r.args[0])};
    } else if (r.op == "query") {
      need(2);
      i = {Op::Query, parse_reg(r.args[0], r.line), parse_reg(r.args[1], r.line), 0, 0};
    } else if (r.op == "halt") {
      need(0);
      i = {Op::Halt, 0, 0, 0, 0};
    } else {
      throw std::invalid_argument("line " + std::to_string(r.line) + ": unknown op '" + r.op +
                                  "'");
    }
    code.push_back(std::move(i));
  }
  return from_instrs(std::move(code));
}

OracleProgram OracleProgram::from_instrs(std::vector<Instr> code) {
  OracleProgram p;
  int regs = 1;
  for (const auto& i : code) regs = std::max({regs, i.a + 1, i.b + 1});
  p.code_ = std::move(code);
  p.registers_ = regs;
  return p;
}

std::string OracleProgram::to_string() const {
  std::ostringstream os;
  for (std::size_t pc = 0; pc < code_.size(); ++pc) {
    const Instr& i = code_[pc];
    os << "L" << pc << ": ";
    switch (i.op) {
      case Op::Load: os << "load r" << i.a << " " << i.imm; break;
      case Op::Mov: os << "mov r" << i.a << " r" << i.b; break;
      case Op::Inc: os << "inc r" << i.a; break;
      case Op::Dec: os << "dec r" << i.a; break;
      case Op::Jz: os << "jz r" << i.a << " L" << i.target; break;
      case Op::Jmp: os << "jmp L" << i.target; break;
      case Op::Query: os << "query r" << i.a << " r" << i.b; break;
      case Op::Halt: os << "halt"; break;
    }
    os << "\n";
  }
  return os.str();
}

std::string Trace::to_string() const {
  std::ostringstream os;
  std::size_t q = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    os << i << " pc=" << configs[i].pc << " regs=";
    for (std::size_t r = 0; r < configs[i].regs.size(); ++r) {
      if (r) os << ",";
      os << configs[i].regs[r];
    }
    while (q < queries.size() && queries[q].step == i) {
      os << " query(" << queries[q].arg << ")=" << queries[q].answer;
      ++q;
    }
    os << "\n";
  }
  return os.str();
}

std::string Trace::digest() const {
  // FNV-1a over the rendered trace.
  std::string body = to_string();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : body) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

namespace {

struct StepOutcome {
  Config next;
  std::optional<QueryEvent> query;
  bool halted = false;
};

// One machine step; the oracle is abstracted so replay can feed answers from
// a recorded trace.
template <typename OracleFn>
StepOutcome step(const OracleProgram& prog, const Config& c, std::size_t step_index,
                 OracleFn&& oracle) {
  const Instr& i = prog.code()[c.pc];
  StepOutcome out{c, std::nullopt, false};
  Config& n = out.next;
  n.pc = c.pc + 1;
  switch (i.op) {
    case Op::Load: n.regs[i.a] = i.imm; break;
    case Op::Mov: n.regs[i.a] = c.regs[i.b]; break;
    case Op::Inc: n.regs[i.a] = c.regs[i.a] + 1; break;
    case Op::Dec: n.regs[i.a] = c.regs[i.a] == 0 ? Nat(0) : Nat(c.regs[i.a] - 1); break;
    case Op::Jz:
      if (c.regs[i.a] == 0) n.pc = static_cast<std::size_t>(i.target);
      break;
    case Op::Jmp: n.pc = static_cast<std::size_t>(i.target); break;
    case Op::Query: {
      Nat answer = oracle(c.regs[i.b]);
      out.query = QueryEvent{step_index, c.regs[i.b], answer};
      n.regs[i.a] = std::move(answer);
      break;
    }
    case Op::Halt: out.halted = true; n.pc = c.pc; break;
  }
  return out;
}

Config initial_config(const OracleProgram& prog, const encode::FinSeq& input) {
  Config c;
  c.pc = 0;
  c.regs.assign(std::max<std::size_t>(prog.register_count(), input.size()), Nat(0));
  for (std::size_t i = 0; i < input.size(); ++i) c.regs[i] = input.at(i);
  return c;
}

}  // namespace

RunResult run(const OracleProgram& prog, const encode::BairePoint& oracle,
              const encode::FinSeq& input, const EvalBudget& budget) {
  if (prog.code().empty()) return MalformedProgram{"empty program"};
  for (const Instr& i : prog.code()) {
    if ((i.op == Op::Jz || i.op == Op::Jmp) &&
        (i.target < 0 || static_cast<std::size_t>(i.target) >= prog.code().size()))
      return MalformedProgram{"jump target out of range"};
  }
  Trace trace;
  Config c = initial_config(prog, input);
  trace.configs.push_back(c);
  for (Fuel used = 0; used < budget.fuel; ++used) {
    if (c.pc >= prog.code().size()) return MalformedProgram{"program counter out of range"};
    StepOutcome out =
        step(prog, c, trace.configs.size() - 1, [&](const Nat& n) { return oracle(n); });
    if (out.query) trace.queries.push_back(*out.query);
    if (out.halted) return Halted{c.regs[0], std::move(trace)};
    c = std::move(out.next);
    trace.configs.push_back(c);
  }
  return OutOfFuel{};
}

bool t_predicate(const OracleProgram& prog, const encode::FinSeq& input, const Trace& trace) {
  if (prog.code().empty() || trace.configs.empty()) return false;
  if (!(trace.configs.front() == initial_config(prog, input))) return false;
  std::size_t q = 0;
  for (std::size_t i = 0; i + 1 < trace.configs.size(); ++i) {
    const Config& c = trace.configs[i];
    if (c.pc >= prog.code().size()) return false;
    bool query_ok = true;
    StepOutcome out = step(prog, c, i, [&](const Nat& arg) -> Nat {
      if (q >= trace.queries.size() || trace.queries[q].step != i ||
          trace.queries[q].arg != arg) {
        query_ok = false;
        return 0;
      }
      return trace.queries[q++].answer;
    });
    if (!query_ok || out.halted) return false;
    if (!(out.next == trace.configs[i + 1])) return false;
  }
  // The final configuration must sit on a halt instruction.
  const Config& last = trace.configs.back();
  if (last.pc >= prog.code().size()) return false;
  if (prog.code()[last.pc].op != Op::Halt) return false;
  return q == trace.queries.size();
}

const OracleProgram& least_zero_search_program() {
  static const OracleProgram prog = OracleProgram::parse(R"(
; least n >= r0 with X(n) = 0
search: query r1 r0
        jz r1 found
        inc r0
        jmp search
found:  halt
)");
  return prog;
}

}  // namespace wb::omachine
