#include "oneclock/potential.h"

#include <algorithm>

#include "oneclock/error.h"

namespace oneclock {

PotentialMatrix::PotentialMatrix(std::size_t rows,
                                 std::vector<Rational> rate_ladder)
    : rows_(rows),
      ladder_(std::move(rate_ladder)),
      cells_(rows * ladder_.size(), 0) {}

PotentialMatrix PotentialMatrix::FromRows(
    const std::vector<std::vector<long>>& rows,
    std::vector<Rational> rate_ladder) {
  PotentialMatrix p(rows.size(), std::move(rate_ladder));
  for (std::size_t l = 0; l < rows.size(); ++l) {
    if (rows[l].size() != p.cols()) {
      throw ValidationError("potential row width does not match the ladder");
    }
    for (std::size_t r = 0; r < p.cols(); ++r) p.at(l + 1, r) = rows[l][r];
  }
  return p;
}

std::ostream& operator<<(std::ostream& os, const PotentialMatrix& p) {
  for (std::size_t l = 1; l <= p.rows(); ++l) {
    os << (l == 1 ? "[" : " ");
    for (std::size_t r = 0; r < p.cols(); ++r) {
      os << (r ? " " : "") << p.at(l, r);
    }
    os << (l == p.rows() ? "]" : "\n");
  }
  return os;
}

std::vector<Rational> RateLadder(const std::vector<Rational>& state_rates) {
  std::vector<Rational> ladder = state_rates;
  ladder.push_back(Rational());
  std::sort(ladder.begin(), ladder.end());
  ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
  return ladder;
}

PotentialMatrix ComputePotential(const PricedGame<EpsCost>& game,
                                 const StrategyProfile& profile,
                                 const std::vector<Rational>& rate_ladder) {
  const std::size_t n = game.num_states();
  PotentialMatrix p(n, rate_ladder);
  auto eval = EvaluateProfile(game, profile);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& v = eval.valuations[k];
    if (v.is_infinite()) continue;
    auto it = std::lower_bound(rate_ladder.begin(), rate_ladder.end(),
                               eval.waiting_rates[k]);
    if (it == rate_ladder.end() || *it != eval.waiting_rates[k]) {
      throw ValidationError("waiting rate " +
                            eval.waiting_rates[k].ToString() +
                            " is not on the rate ladder");
    }
    std::size_t rank = static_cast<std::size_t>(it - rate_ladder.begin());
    long delta = game.owner(static_cast<int>(k)) == Player::kMax ? 1 : -1;
    p.at(v.hops, rank) += delta;
  }
  return p;
}

bool PotentialLess(const PotentialMatrix& p, const PotentialMatrix& q) {
  if (p.rows() != q.rows() || p.rate_ladder() != q.rate_ladder()) {
    throw ValidationError("potential matrices have different shapes");
  }
  for (std::size_t r = 0; r < p.cols(); ++r) {
    for (std::size_t l = 1; l <= p.rows(); ++l) {
      if (p.at(l, r) != q.at(l, r)) return p.at(l, r) < q.at(l, r);
    }
  }
  return false;
}

}  // namespace oneclock
