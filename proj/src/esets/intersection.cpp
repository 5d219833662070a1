#include <memory>
#include <mutex>
#include <sstream>

#include "ekt/error.hpp"
#include "ekt/esets/esets.hpp"

namespace ekt::esets {

using exact::pow2;

namespace {

struct ChainState {
  CeOpenSet u;
  CeClosedSet c;
  Fuel per_stage_fuel;
  std::vector<RationalBall> chain;  // chain[j] has radius < 2^-j, nested
  std::mutex mu;

  // Extends the nested chain to stage j (radius < 2^-j).
  void extend_to(std::size_t j) {
    while (chain.size() <= j) {
      std::size_t stage = chain.size();
      Rat limit = pow2(-static_cast<long>(stage));
      bool found = false;
      for (Fuel spent = 0; spent < per_stage_fuel && !found; ++spent) {
        auto ball = c.balls(Nat(static_cast<unsigned long>(spent)));
        if (!ball || ball->radius >= limit) continue;
        if (stage == 0) {
          // contained in some enumerated ball of U
          for (Fuel us = 0; us <= spent; ++us) {
            auto ub = u.balls(Nat(static_cast<unsigned long>(us)));
            if (!ub) continue;
            if (ball_subset(c.pres, *ball, *ub, 6) == Tri::Yes) {
              chain.push_back(*ball);
              found = true;
              break;
            }
          }
        } else if (ball_subset(c.pres, *ball, chain[stage - 1], 6) == Tri::Yes) {
          chain.push_back(*ball);
          found = true;
        }
      }
      if (!found)
        throw StagingError("intersection search exhausted fuel at stage " +
                           std::to_string(stage));
    }
  }
};

}  // namespace

IntersectionResult find_point_in_intersection(CeOpenSet u, CeClosedSet c, long k,
                                              Fuel per_stage_fuel) {
  if (c.arity != 1) throw Error("find_point_in_intersection: arity-1 sets only");
  auto state = std::make_shared<ChainState>();
  state->u = std::move(u);
  state->c = std::move(c);
  state->per_stage_fuel = per_stage_fuel;

  IntersectionResult out;
  try {
    state->extend_to(static_cast<std::size_t>(std::max(k, 0L)));
  } catch (const StagingError& e) {
    out.spent = per_stage_fuel * (state->chain.size() + 1);
    std::ostringstream os;
    os << "Unknown: " << e.what() << " after " << state->chain.size() << " completed stages";
    out.note = os.str();
    return out;
  }
  out.spent = per_stage_fuel * (state->chain.size());

  PresPtr pres = state->c.pres;
  auto approx = [state](long kk) {
    std::size_t stage = static_cast<std::size_t>(std::max(kk, 0L)) + 1;
    std::scoped_lock lock(state->mu);
    state->extend_to(stage);
    return tuple_points(state->chain[stage].center, 1)[0];
  };
  out.point = PointHandle(pres, approx);
  return out;
}

std::string MvnCertificate::serialize() const {
  std::ostringstream os;
  os << "mvn-chain n=" << n << "\n";
  os << "start " << start.center.get_str() << " " << start.radius.get_str() << "\n";
  for (const RationalBall& b : chain)
    os << "ball " << b.center.get_str() << " " << b.radius.get_str() << "\n";
  os << "end " << end.center.get_str() << " " << end.radius.get_str() << "\n";
  return os.str();
}

}  // namespace ekt::esets
