#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "oneclock/cost.h"
#include "oneclock/priced_game.h"
#include "oneclock/rational.h"

namespace oneclock {

// Integer matrix over (path length 1..rows, rate rank 1..N). Entry (l, r)
// counts maximizer states minus minimizer states whose path to the terminal
// has l actions and ends by waiting at the r-th smallest rate.
class PotentialMatrix {
 public:
  PotentialMatrix() = default;
  PotentialMatrix(std::size_t rows, std::vector<Rational> rate_ladder);
  // Row-major entries, rows.size() == number of lengths.
  static PotentialMatrix FromRows(const std::vector<std::vector<long>>& rows,
                                  std::vector<Rational> rate_ladder);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return ladder_.size(); }
  const std::vector<Rational>& rate_ladder() const { return ladder_; }

  // 1-based length, 0-based rate rank.
  long at(std::size_t length, std::size_t rank) const {
    return cells_[(length - 1) * cols() + rank];
  }
  long& at(std::size_t length, std::size_t rank) {
    return cells_[(length - 1) * cols() + rank];
  }

  friend bool operator==(const PotentialMatrix&,
                         const PotentialMatrix&) = default;
  friend std::ostream& operator<<(std::ostream& os, const PotentialMatrix& p);

 private:
  std::size_t rows_ = 0;
  std::vector<Rational> ladder_;
  std::vector<long> cells_;
};

// Distinct values of `state_rates` plus 0, ascending.
std::vector<Rational> RateLadder(const std::vector<Rational>& state_rates);

// Potential of `profile` in an ε-game whose waiting actions carry their
// rates. One row per state of the game.
PotentialMatrix ComputePotential(const PricedGame<EpsCost>& game,
                                 const StrategyProfile& profile,
                                 const std::vector<Rational>& rate_ladder);

// Lexicographic order: columns by ascending rate, inside a column by
// ascending length, first difference decides. ValidationError when the
// shapes or ladders differ.
bool PotentialLess(const PotentialMatrix& p, const PotentialMatrix& q);

}  // namespace oneclock
