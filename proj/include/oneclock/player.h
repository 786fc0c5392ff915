#pragma once

#include <string_view>

namespace oneclock {

// Player 1 minimizes the cost it pays, Player 2 maximizes it.
enum class Player { kMin = 1, kMax = 2 };

inline Player Opponent(Player p) {
  return p == Player::kMin ? Player::kMax : Player::kMin;
}

inline std::string_view PlayerName(Player p) {
  return p == Player::kMin ? "min" : "max";
}

}  // namespace oneclock
