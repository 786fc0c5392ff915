#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oneclock/cli_io.h"

namespace oneclock::detail {

std::vector<CheckDoc> VerifyPriced(const PricedGame<ExtCost>& game,
                                   const GameSolution<ExtCost>& solution);
std::vector<CheckDoc> VerifySptg(const Sptg& game, const SweepResult& result);
std::vector<CheckDoc> VerifyPtg(const Ptg& game, const PtgResult& result);

}  // namespace oneclock::detail
