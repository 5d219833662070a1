#include <algorithm>
#include <mutex>
#include <sstream>

#include "ekt/error.hpp"
#include "ekt/uhf/uhf.hpp"

namespace ekt::uhf {

namespace {

struct StageCache {
  std::function<Supernatural::StageMap(std::size_t)> fn;
  std::vector<Supernatural::StageMap> memo;
  std::mutex mu;

  Supernatural::StageMap get(std::size_t j) {
    std::scoped_lock lock(mu);
    while (memo.size() <= j) {
      Supernatural::StageMap next = fn(memo.size());
      for (std::size_t i = 1; i < next.size(); ++i)
        if (next[i - 1].first >= next[i].first)
          throw Error("Supernatural: stage map must be sorted by prime");
      if (!memo.empty()) {
        // monotone per prime
        for (const auto& [p, e] : memo.back()) {
          unsigned long now = 0;
          for (const auto& [q, f] : next)
            if (q == p) now = f;
          if (now < e) throw Error("Supernatural: stages must be pointwise monotone");
        }
      }
      memo.push_back(std::move(next));
    }
    return memo[j];
  }
};

}  // namespace

Supernatural::Supernatural(std::function<StageMap(std::size_t)> stages) {
  auto cache = std::make_shared<StageCache>();
  cache->fn = std::move(stages);
  stage_impl_ = cache;
}

Supernatural::StageMap Supernatural::stage(std::size_t j) const {
  return std::static_pointer_cast<StageCache>(stage_impl_)->get(j);
}

Nat Supernatural::stage_dim(std::size_t j) const {
  Nat n = 1;
  for (const auto& [p, e] : stage(j)) {
    Nat pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), p, e);
    n *= pe;
  }
  return n;
}

std::function<Nat(std::size_t)> Supernatural::dim_fn() const {
  Supernatural copy = *this;
  return [copy](std::size_t j) { return copy.stage_dim(j); };
}

Supernatural Supernatural::from_exponents(
    const std::vector<std::pair<unsigned long, std::optional<unsigned long>>>& exps) {
  auto sorted = exps;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i - 1].first == sorted[i].first)
      throw Error("Supernatural: duplicate prime in exponent list");
  return Supernatural([sorted](std::size_t j) {
    StageMap m;
    for (const auto& [p, e] : sorted) {
      unsigned long h = e ? std::min<unsigned long>(*e, j) : j;
      if (h > 0) m.emplace_back(p, h);
    }
    return m;
  });
}

Supernatural hard_supernatural(std::vector<CounterMachine> machines) {
  auto ms = std::make_shared<std::vector<CounterMachine>>(std::move(machines));
  return Supernatural([ms](std::size_t j) {
    Supernatural::StageMap m;
    for (std::size_t e = 0; e < ms->size(); ++e) {
      unsigned long h = (*ms)[e].accepted_count(static_cast<unsigned long>(j));
      if (h > 0) m.emplace_back(nth_prime(e), h);
    }
    std::sort(m.begin(), m.end());
    return m;
  });
}

Supernatural parse_supernatural(const std::string& text) {
  std::vector<std::pair<unsigned long, std::optional<unsigned long>>> exps;
  std::vector<std::pair<std::size_t, CounterMachine>> machines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::stringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "machine") {
      std::size_t index;
      if (!(ls >> index)) throw ParseError("supernatural: machine needs an index");
      std::string rest;
      std::getline(ls, rest);
      machines.emplace_back(index, parse_machine_program(rest));
    } else {
      unsigned long p = std::stoul(head);
      std::string e;
      if (!(ls >> e)) throw ParseError("supernatural: missing exponent");
      if (e == "inf")
        exps.emplace_back(p, std::nullopt);
      else
        exps.emplace_back(p, std::stoul(e));
    }
  }
  if (machines.empty()) return Supernatural::from_exponents(exps);
  auto ms = std::make_shared<std::vector<std::pair<std::size_t, CounterMachine>>>(machines);
  Supernatural base = Supernatural::from_exponents(exps);
  return Supernatural([ms, base](std::size_t j) {
    std::map<unsigned long, unsigned long> acc;
    for (const auto& [p, e] : base.stage(j)) acc[p] = e;
    for (const auto& [idx, m] : *ms) {
      unsigned long h = m.accepted_count(static_cast<unsigned long>(j));
      unsigned long p = nth_prime(idx);
      if (h > acc[p]) acc[p] = h;
    }
    Supernatural::StageMap out;
    for (const auto& [p, e] : acc)
      if (e > 0) out.emplace_back(p, e);
    return out;
  });
}

std::function<Nat(std::size_t)> parse_certificate_dims(const std::string& text) {
  std::stringstream ss(text);
  std::string word;
  if (!(ss >> word) || word != "dims") throw ParseError("certificate: expected 'dims <rule>'");
  std::string rule;
  if (!(ss >> rule)) throw ParseError("certificate: missing rule");
  if (rule == "powers") {
    unsigned long b;
    if (!(ss >> b) || b == 0) throw ParseError("certificate: powers needs a positive base");
    return [b](std::size_t j) {
      Nat n;
      mpz_ui_pow_ui(n.get_mpz_t(), b, static_cast<unsigned long>(j));
      return n;
    };
  }
  if (rule == "factorial") {
    return [](std::size_t j) {
      Nat n;
      mpz_fac_ui(n.get_mpz_t(), static_cast<unsigned long>(j) + 1);
      return n;
    };
  }
  if (rule == "explicit") {
    std::vector<Nat> dims;
    std::string d;
    while (ss >> d) dims.emplace_back(d);
    if (dims.empty()) throw ParseError("certificate: explicit needs at least one dimension");
    return [dims](std::size_t j) { return j < dims.size() ? dims[j] : dims.back(); };
  }
  if (rule == "machine") {
    std::string rest;
    std::getline(ss, rest);
    CounterMachine m = parse_machine_program(rest);
    Supernatural eps = hard_supernatural({m});
    return eps.dim_fn();
  }
  throw ParseError("certificate: unknown rule '" + rule + "'");
}

}  // namespace ekt::uhf
