#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "oneclock/cli_io.h"
#include "json_location.h"

namespace oneclock {

using json = nlohmann::ordered_json;

const char* GameKindName(GameKind kind) {
  switch (kind) {
    case GameKind::kPriced: return "priced";
    case GameKind::kSptg: return "sptg";
    case GameKind::kPtg: return "ptg";
  }
  return "?";
}

std::string Diagnostic::ToString() const {
  std::string out;
  if (line) {
    out += "line " + std::to_string(line);
    if (column) out += ":" + std::to_string(column);
    out += ": ";
  }
  if (!field.empty()) out += field + ": ";
  out += ErrorCodeName(code);
  out += ": " + message;
  return out;
}

int GameDocument::StateIndex(std::string_view id) const {
  if (id == "bot") return kTerminal;
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (states[k].id == id) return static_cast<int>(k);
  }
  throw ValidationError("unknown state " + std::string(id),
                        ErrorCode::kDanglingReference);
}

namespace {

class Reader {
 public:
  explicit Reader(const detail::LocationMap& where) : where_(where) {}

  [[noreturn]] void Fail(ErrorCode code, const std::string& field,
                         const std::string& message) const {
    Diagnostic d;
    d.code = code;
    d.field = field;
    auto [line, column] = where_.Find(field);
    d.line = line;
    d.column = column;
    d.message = message;
    throw DocumentError(std::move(d));
  }

  void OnlyKeys(const json& obj, const std::string& at,
                std::initializer_list<const char*> allowed) const {
    for (const auto& [key, value] : obj.items()) {
      bool ok = std::any_of(allowed.begin(), allowed.end(),
                            [&](const char* a) { return key == a; });
      if (!ok) {
        Fail(ErrorCode::kUnknownField, at + "/" + key,
             "unknown field \"" + key + "\"");
      }
    }
  }

  const json& Need(const json& obj, const std::string& at,
                   const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end()) {
      Fail(ErrorCode::kValidation, at, std::string("missing field \"") + key +
                                           "\"");
    }
    return *it;
  }

  const json& Object(const json& v, const std::string& at) const {
    if (!v.is_object()) Fail(ErrorCode::kValidation, at, "expected an object");
    return v;
  }

  std::string String(const json& v, const std::string& at) const {
    if (!v.is_string()) Fail(ErrorCode::kValidation, at, "expected a string");
    return v.get<std::string>();
  }

  bool Bool(const json& v, const std::string& at) const {
    if (!v.is_boolean()) Fail(ErrorCode::kValidation, at, "expected true or false");
    return v.get<bool>();
  }

  // Integers, or strings holding "p/q", an integer, or (if allowed) "inf".
  ExtCost Number(const json& v, const std::string& at, bool allow_inf) const {
    if (v.is_number_integer()) {
      return ExtCost(Rational::Parse(v.dump()));
    }
    if (v.is_number_float()) {
      Fail(ErrorCode::kDomain, at,
           "floating-point literal " + v.dump() +
               " is not exact; write it as a string such as \"1/2\"");
    }
    if (!v.is_string()) Fail(ErrorCode::kDomain, at, "expected a number");
    const std::string s = v.get<std::string>();
    if (s == "inf") {
      if (!allow_inf) Fail(ErrorCode::kDomain, at, "inf is not allowed here");
      return ExtCost::Infinity();
    }
    try {
      return ExtCost(Rational::Parse(s));
    } catch (const Error&) {
      Fail(ErrorCode::kDomain, at, "\"" + s + "\" is not an exact rational");
    }
  }

 private:
  const detail::LocationMap& where_;
};

GameDocument Read(const json& root, const Reader& r) {
  GameDocument doc;
  r.Object(root, "");
  r.OnlyKeys(root, "", {"format", "version", "kind", "states", "actions"});
  if (root.contains("format") &&
      r.String(root["format"], "/format") != "oneclock-game") {
    r.Fail(ErrorCode::kValidation, "/format",
           "expected \"oneclock-game\"");
  }
  const json& version = r.Need(root, "", "version");
  if (!version.is_number_integer() || version.get<long>() != kFormatVersion) {
    r.Fail(ErrorCode::kValidation, "/version",
           "unsupported format version " + version.dump() + " (expected " +
               std::to_string(kFormatVersion) + ")");
  }
  const std::string kind = r.String(r.Need(root, "", "kind"), "/kind");
  if (kind == "priced") {
    doc.kind = GameKind::kPriced;
  } else if (kind == "sptg") {
    doc.kind = GameKind::kSptg;
  } else if (kind == "ptg") {
    doc.kind = GameKind::kPtg;
  } else {
    r.Fail(ErrorCode::kValidation, "/kind",
           "kind must be priced, sptg or ptg, got \"" + kind + "\"");
  }
  const bool timed = doc.kind != GameKind::kPriced;

  const json& states = r.Need(root, "", "states");
  if (!states.is_array() || states.empty()) {
    r.Fail(ErrorCode::kValidation, "/states", "expected a non-empty array");
  }
  std::set<std::string> ids;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const std::string at = "/states/" + std::to_string(k);
    const json& s = r.Object(states[k], at);
    if (timed) {
      r.OnlyKeys(s, at, {"id", "owner", "rate"});
    } else {
      r.OnlyKeys(s, at, {"id", "owner"});
    }
    StateDoc st;
    st.id = r.String(r.Need(s, at, "id"), at + "/id");
    if (st.id.empty() || st.id == "bot") {
      r.Fail(ErrorCode::kValidation, at + "/id",
             "state id \"" + st.id + "\" is reserved or empty");
    }
    if (!ids.insert(st.id).second) {
      r.Fail(ErrorCode::kDuplicateId, at + "/id",
             "state id \"" + st.id + "\" is used twice");
    }
    const json& owner = r.Need(s, at, "owner");
    if (!owner.is_number_integer() ||
        (owner.get<long>() != 1 && owner.get<long>() != 2)) {
      r.Fail(ErrorCode::kValidation, at + "/owner", "owner must be 1 or 2");
    }
    st.owner = owner.get<long>() == 1 ? Player::kMin : Player::kMax;
    if (timed) {
      ExtCost rate = r.Number(r.Need(s, at, "rate"), at + "/rate", false);
      st.rate = rate.value();
      if (st.rate.sign() < 0) {
        r.Fail(ErrorCode::kNegativeRate, at + "/rate",
               "rate " + st.rate.ToString() + " is negative");
      }
    }
    doc.states.push_back(std::move(st));
  }

  const json& actions = r.Need(root, "", "actions");
  if (!actions.is_array()) {
    r.Fail(ErrorCode::kValidation, "/actions", "expected an array");
  }
  std::set<std::string> action_ids;
  std::vector<std::size_t> count(doc.states.size(), 0);
  for (std::size_t j = 0; j < actions.size(); ++j) {
    const std::string at = "/actions/" + std::to_string(j);
    const json& a = r.Object(actions[j], at);
    if (doc.kind == GameKind::kPtg) {
      r.OnlyKeys(a, at, {"id", "from", "to", "cost", "interval", "reset"});
    } else {
      r.OnlyKeys(a, at, {"id", "from", "to", "cost"});
    }
    ActionDoc ac;
    ac.id = r.String(r.Need(a, at, "id"), at + "/id");
    if (ac.id.empty() || ac.id == "wait") {
      r.Fail(ErrorCode::kValidation, at + "/id",
             "action id \"" + ac.id + "\" is reserved or empty");
    }
    if (!action_ids.insert(ac.id).second) {
      r.Fail(ErrorCode::kDuplicateId, at + "/id",
             "action id \"" + ac.id + "\" is used twice");
    }
    ac.from = r.String(r.Need(a, at, "from"), at + "/from");
    if (!ids.count(ac.from)) {
      r.Fail(ErrorCode::kDanglingReference, at + "/from",
             "no state \"" + ac.from + "\"");
    }
    ac.to = r.String(r.Need(a, at, "to"), at + "/to");
    if (ac.to != "bot" && !ids.count(ac.to)) {
      r.Fail(ErrorCode::kDanglingReference, at + "/to",
             "no state \"" + ac.to + "\"");
    }
    ac.cost = r.Number(r.Need(a, at, "cost"), at + "/cost", true);
    if (ac.cost < ExtCost::Zero()) {
      r.Fail(ErrorCode::kNegativeCost, at + "/cost",
             "cost " + ac.cost.ToString() + " is negative");
    }
    if (doc.kind == GameKind::kPtg) {
      const std::string iat = at + "/interval";
      const json& iv = r.Object(r.Need(a, at, "interval"), iat);
      r.OnlyKeys(iv, iat, {"lo", "hi", "lo_closed", "hi_closed"});
      Interval in;
      in.lo = r.Number(r.Need(iv, iat, "lo"), iat + "/lo", false).value();
      in.hi = r.Number(r.Need(iv, iat, "hi"), iat + "/hi", false).value();
      if (iv.contains("lo_closed")) {
        in.lo_closed = r.Bool(iv["lo_closed"], iat + "/lo_closed");
      }
      if (iv.contains("hi_closed")) {
        in.hi_closed = r.Bool(iv["hi_closed"], iat + "/hi_closed");
      }
      if (in.lo.sign() < 0) {
        r.Fail(ErrorCode::kIntervalOrder, iat + "/lo",
               "interval starts below 0");
      }
      if (in.hi < in.lo) {
        r.Fail(ErrorCode::kIntervalOrder, iat,
               "lo " + in.lo.ToString() + " exceeds hi " + in.hi.ToString());
      }
      if (in.IsEmpty()) {
        r.Fail(ErrorCode::kEmptyInterval, iat,
               "interval " + in.ToString() + " is empty");
      }
      ac.interval = in;
      if (a.contains("reset")) ac.reset = r.Bool(a["reset"], at + "/reset");
      if (ac.reset && ac.to == "bot") {
        r.Fail(ErrorCode::kValidation, at + "/reset",
               "a reset action must lead to a state");
      }
    }
    ++count[doc.StateIndex(ac.from)];
    doc.actions.push_back(std::move(ac));
  }

  for (std::size_t k = 0; k < doc.states.size(); ++k) {
    if (!count[k]) {
      r.Fail(ErrorCode::kMissingAction, "/states/" + std::to_string(k),
             "state \"" + doc.states[k].id + "\" has no action");
    }
  }
  if (doc.kind == GameKind::kPtg) {
    Rational m;
    for (const auto& a : doc.actions) m = Max(m, a.interval->hi);
    if (m.sign() == 0) {
      r.Fail(ErrorCode::kValidation, "/actions",
             "every interval ends at 0, so the horizon is empty");
    }
    std::vector<bool> ok(doc.states.size(), false);
    for (const auto& a : doc.actions) {
      if (a.interval->Contains(m)) ok[doc.StateIndex(a.from)] = true;
    }
    for (std::size_t k = 0; k < ok.size(); ++k) {
      if (!ok[k]) {
        r.Fail(ErrorCode::kMissingAction, "/states/" + std::to_string(k),
               "state \"" + doc.states[k].id +
                   "\" has no action available at the horizon " +
                   m.ToString());
      }
    }
  }
  return doc;
}

json NumberJson(const ExtCost& c) { return c.ToString(); }

std::string StateName(int k) {
  return k == kTerminal ? "bot" : "s" + std::to_string(k);
}

}  // namespace

GameDocument ParseGame(std::string_view text) {
  detail::LocationMap where;
  json root;
  try {
    where = detail::LocateValues(text);
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    Diagnostic d;
    d.code = ErrorCode::kSyntax;
    std::tie(d.line, d.column) = detail::LineColumn(text, e.byte ? e.byte - 1 : 0);
    std::string what = e.what();
    // nlohmann prefixes "[json.exception.parse_error.101] parse error at ..."
    auto colon = what.find(": ");
    d.message = colon == std::string::npos ? what : what.substr(colon + 2);
    throw DocumentError(std::move(d));
  } catch (const detail::DuplicateKey& e) {
    Diagnostic d;
    d.code = ErrorCode::kSyntax;
    d.field = e.field;
    d.line = e.line;
    d.column = e.column;
    d.message = "key appears twice in one object";
    throw DocumentError(std::move(d));
  }
  return Read(root, Reader(where));
}

std::string FormatGame(const GameDocument& doc) {
  json root = json::object();
  root["format"] = "oneclock-game";
  root["version"] = doc.version;
  root["kind"] = GameKindName(doc.kind);
  json states = json::array();
  for (const auto& s : doc.states) {
    json o = json::object();
    o["id"] = s.id;
    o["owner"] = static_cast<int>(s.owner);
    if (doc.kind != GameKind::kPriced) o["rate"] = s.rate.ToString();
    states.push_back(std::move(o));
  }
  json actions = json::array();
  for (const auto& a : doc.actions) {
    json o = json::object();
    o["id"] = a.id;
    o["from"] = a.from;
    o["to"] = a.to;
    o["cost"] = NumberJson(a.cost);
    if (doc.kind == GameKind::kPtg) {
      const Interval& in = *a.interval;
      o["interval"] = {{"lo", in.lo.ToString()},
                       {"hi", in.hi.ToString()},
                       {"lo_closed", in.lo_closed},
                       {"hi_closed", in.hi_closed}};
      o["reset"] = a.reset;
    }
    actions.push_back(std::move(o));
  }
  root["states"] = std::move(states);
  root["actions"] = std::move(actions);
  return root.dump(2) + "\n";
}

namespace {

void RequireKind(const GameDocument& doc, GameKind kind) {
  if (doc.kind != kind) {
    throw ValidationError(std::string("expected a ") + GameKindName(kind) +
                          " document, got " + GameKindName(doc.kind));
  }
}

}  // namespace

PricedGame<ExtCost> ToPricedGame(const GameDocument& doc) {
  RequireKind(doc, GameKind::kPriced);
  PricedGame<ExtCost> g;
  for (const auto& s : doc.states) g.AddState(s.owner);
  for (const auto& a : doc.actions) {
    g.AddAction(doc.StateIndex(a.from), doc.StateIndex(a.to), a.cost);
  }
  g.Validate();
  return g;
}

Sptg ToSptg(const GameDocument& doc) {
  RequireKind(doc, GameKind::kSptg);
  Sptg g;
  for (const auto& s : doc.states) g.AddState(s.owner, s.rate);
  for (const auto& a : doc.actions) {
    g.AddAction(doc.StateIndex(a.from), doc.StateIndex(a.to), a.cost);
  }
  g.Validate();
  return g;
}

Ptg ToPtg(const GameDocument& doc) {
  RequireKind(doc, GameKind::kPtg);
  Ptg g;
  for (const auto& s : doc.states) g.AddState(s.owner, s.rate);
  for (const auto& a : doc.actions) {
    g.AddAction(doc.StateIndex(a.from), doc.StateIndex(a.to), a.cost,
                *a.interval, a.reset);
  }
  g.Validate();
  return g;
}

GameDocument ToDocument(const PricedGame<ExtCost>& game) {
  GameDocument doc;
  doc.kind = GameKind::kPriced;
  for (std::size_t k = 0; k < game.num_states(); ++k) {
    doc.states.push_back({StateName(static_cast<int>(k)),
                          game.owner(static_cast<int>(k)), Rational()});
  }
  for (std::size_t j = 0; j < game.num_actions(); ++j) {
    const auto& a = game.action(static_cast<int>(j));
    doc.actions.push_back({"a" + std::to_string(j), StateName(a.source),
                           StateName(a.target), a.cost, std::nullopt, false});
  }
  return doc;
}

GameDocument ToDocument(const Sptg& game) {
  GameDocument doc = ToDocument(game.core);
  doc.kind = GameKind::kSptg;
  for (std::size_t k = 0; k < game.num_states(); ++k) {
    doc.states[k].rate = game.rates[k];
  }
  return doc;
}

GameDocument ToDocument(const Ptg& game) {
  GameDocument doc;
  doc.kind = GameKind::kPtg;
  for (std::size_t k = 0; k < game.num_states(); ++k) {
    doc.states.push_back({StateName(static_cast<int>(k)),
                          game.owner(static_cast<int>(k)),
                          game.rate(static_cast<int>(k))});
  }
  for (std::size_t j = 0; j < game.num_actions(); ++j) {
    const auto& a = game.action(static_cast<int>(j));
    doc.actions.push_back({"a" + std::to_string(j), StateName(a.source),
                           StateName(a.target), a.cost, a.interval, a.reset});
  }
  return doc;
}

}  // namespace oneclock
