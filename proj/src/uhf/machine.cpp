#include <sstream>

#include "ekt/error.hpp"
#include "ekt/uhf/uhf.hpp"

namespace ekt::uhf {

bool CounterMachine::accepts_within(unsigned long input, unsigned long steps) const {
  std::map<std::size_t, unsigned long> counters;
  counters[0] = input;
  std::size_t pc = 0;
  for (unsigned long t = 0; t < steps; ++t) {
    if (pc >= program.size()) return false;  // running off the end rejects
    const Instr& ins = program[pc];
    switch (ins.kind) {
      case Instr::Kind::Inc:
        ++counters[ins.reg];
        ++pc;
        break;
      case Instr::Kind::DecJz:
        if (counters[ins.reg] == 0) {
          pc = ins.target;
        } else {
          --counters[ins.reg];
          ++pc;
        }
        break;
      case Instr::Kind::Accept:
        return true;
      case Instr::Kind::Reject:
        return false;
    }
  }
  return false;
}

unsigned long CounterMachine::accepted_count(unsigned long s) const {
  unsigned long count = 0;
  for (unsigned long x = 0; x <= s; ++x)
    if (accepts_within(x, s)) ++count;
  return count;
}

CounterMachine machine_accept_all() {
  CounterMachine m;
  m.program.push_back({CounterMachine::Instr::Kind::Accept, 0, 0});
  return m;
}

CounterMachine machine_reject_all() {
  CounterMachine m;
  m.program.push_back({CounterMachine::Instr::Kind::Reject, 0, 0});
  return m;
}

CounterMachine machine_accept_even() {
  // subtract 2 until the input counter drops below 2, accept iff it is 0
  CounterMachine m;
  using K = CounterMachine::Instr::Kind;
  // 0: decjz 0 -> 4 (zero -> accept)
  // 1: decjz 0 -> 3 (odd -> reject)
  // 2: jump back to 0 via an always-taken decjz on an empty counter
  m.program.push_back({K::DecJz, 0, 4});
  m.program.push_back({K::DecJz, 0, 3});
  m.program.push_back({K::DecJz, 1, 0});
  m.program.push_back({K::Reject, 0, 0});
  m.program.push_back({K::Accept, 0, 0});
  return m;
}

unsigned long nth_prime(std::size_t e) {
  std::vector<unsigned long> primes;
  unsigned long candidate = 2;
  while (primes.size() <= e) {
    bool prime = true;
    for (unsigned long p : primes) {
      if (p * p > candidate) break;
      if (candidate % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(candidate);
    ++candidate;
  }
  return primes[e];
}

CounterMachine parse_machine_program(const std::string& text) {
  CounterMachine m;
  std::stringstream ss(text);
  std::string instr;
  while (std::getline(ss, instr, ';')) {
    std::stringstream is(instr);
    std::string op;
    is >> op;
    if (op.empty()) continue;
    using K = CounterMachine::Instr::Kind;
    if (op == "inc") {
      std::size_t r;
      if (!(is >> r)) throw ParseError("machine: inc needs a register");
      m.program.push_back({K::Inc, r, 0});
    } else if (op == "decjz") {
      std::size_t r, t;
      if (!(is >> r >> t)) throw ParseError("machine: decjz needs a register and a target");
      m.program.push_back({K::DecJz, r, t});
    } else if (op == "accept") {
      m.program.push_back({K::Accept, 0, 0});
    } else if (op == "reject") {
      m.program.push_back({K::Reject, 0, 0});
    } else {
      throw ParseError("machine: unknown instruction '" + op + "'");
    }
  }
  if (m.program.empty()) throw ParseError("machine: empty program");
  return m;
}

}  // namespace ekt::uhf
