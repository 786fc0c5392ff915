#include "oneclock/cost.h"

#include "oneclock/error.h"

namespace oneclock {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kNegativeCost: return "negative-cost";
    case ErrorCode::kNegativeRate: return "negative-rate";
    case ErrorCode::kUnknownField: return "unknown-field";
    case ErrorCode::kDanglingReference: return "dangling-reference";
    case ErrorCode::kDuplicateId: return "duplicate-id";
    case ErrorCode::kIntervalOrder: return "interval-order";
    case ErrorCode::kEmptyInterval: return "empty-interval";
    case ErrorCode::kMissingAction: return "missing-action";
    case ErrorCode::kSyntax: return "syntax";
    case ErrorCode::kNonConvergence: return "non-convergence";
    case ErrorCode::kBudgetExceeded: return "budget-exceeded";
    case ErrorCode::kVerification: return "verification";
  }
  return "unknown";
}

ExtCost ExtCost::Parse(std::string_view text) {
  if (text == "inf") return Infinity();
  return ExtCost(Rational::Parse(text));
}

std::string ExtCost::ToString() const {
  return infinite_ ? "inf" : value_.ToString();
}

const Rational& ExtCost::value() const {
  if (infinite_) throw DomainError("value() of an infinite cost");
  return value_;
}

ExtCost& ExtCost::operator+=(const ExtCost& o) {
  if (infinite_) return *this;
  if (o.infinite_) {
    *this = Infinity();
    return *this;
  }
  value_ += o.value_;
  return *this;
}

EpsCost::EpsCost(ExtCost base, Rational eps)
    : base_(std::move(base)), eps_(std::move(eps)) {
  if (base_.is_infinite()) eps_ = Rational();
}

std::string EpsCost::ToString() const {
  if (base_.is_infinite()) return "inf";
  return base_.ToString() + "+" + eps_.ToString() + "eps";
}

EpsCost& EpsCost::operator+=(const EpsCost& o) {
  base_ += o.base_;
  if (base_.is_infinite()) {
    eps_ = Rational();
  } else {
    eps_ += o.eps_;
  }
  return *this;
}

}  // namespace oneclock
