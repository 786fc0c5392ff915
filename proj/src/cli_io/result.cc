#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "oneclock/cli_io.h"
#include "json_location.h"

namespace oneclock {

using json = nlohmann::ordered_json;

bool ResultDocument::verified() const {
  for (const auto& c : verification) {
    if (!c.ok) return false;
  }
  return true;
}

namespace {

std::vector<std::string> StateIds(const GameDocument& doc) {
  std::vector<std::string> ids;
  for (const auto& s : doc.states) ids.push_back(s.id);
  return ids;
}

std::string ActionName(const GameDocument& doc, int label) {
  return label == kWait ? "wait" : doc.actions[label].id;
}

std::vector<std::vector<CellDoc>> Cells(const GameDocument& doc,
                                        const TimedStrategyProfile& p) {
  std::vector<std::vector<CellDoc>> out;
  for (const auto& cells : p.cells) {
    auto& row = out.emplace_back();
    for (const auto& c : cells) {
      row.push_back({c.lo, c.hi, c.lo_closed, c.hi_closed,
                     ActionName(doc, c.label)});
    }
  }
  return out;
}

}  // namespace

ResultDocument MakeResult(const GameDocument& doc,
                          const GameSolution<ExtCost>& solution) {
  ResultDocument r;
  r.kind = GameKind::kPriced;
  r.ids = StateIds(doc);
  r.point_values = solution.values;
  for (std::size_t k = 0; k < doc.states.size(); ++k) {
    r.choices.push_back(ActionName(doc, solution.profile[k]));
  }
  r.stats = {{"iterations", solution.iterations}};
  return r;
}

ResultDocument MakeResult(const GameDocument& doc, const SweepResult& result) {
  ResultDocument r;
  r.kind = GameKind::kSptg;
  r.ids = StateIds(doc);
  r.values = result.values;
  r.strategy.push_back(Cells(doc, result.strategy));
  r.stats = {{"L", result.stats.event_points},
             {"sweep_steps", result.stats.sweep_steps},
             {"switch_count", result.stats.switch_count},
             {"oracle_calls", 1}};
  r.wall_seconds = result.stats.wall_seconds;
  return r;
}

ResultDocument MakeResult(const GameDocument& doc, const PtgResult& result) {
  ResultDocument r;
  r.kind = GameKind::kPtg;
  r.ids = StateIds(doc);
  r.values = result.values;
  r.ladder = result.ladder;
  for (std::size_t l = 0; l < result.strategy.layers.size(); ++l) {
    r.strategy.push_back(Cells(doc, result.strategy.layers[l]));
    // end_action[i][k] belongs to the interval ending at ladder[i - 2].
    const auto& ends = result.strategy.end_action[l];
    auto& layer = r.end_actions.emplace_back(doc.states.size());
    for (std::size_t i = 2; i < ends.size(); ++i) {
      for (std::size_t k = 0; k < doc.states.size(); ++k) {
        if (ends[i][k] == kWait) continue;
        layer[k].push_back({result.ladder[i - 2], ActionName(doc, ends[i][k])});
      }
    }
  }
  // L sums the interior kinks of all interval games.
  r.stats = {{"L", result.stats.event_points},
             {"sweep_steps", result.stats.sweep_steps},
             {"switch_count", result.stats.switch_count},
             {"oracle_calls", result.stats.oracle_calls},
             {"layers", result.stats.layers},
             {"reset_destinations", result.stats.reset_destinations},
             {"ladder_size", result.stats.ladder_size}};
  r.wall_seconds = result.stats.wall_seconds;
  return r;
}

namespace {

json FunctionJson(const PiecewiseLinearFn& f) {
  json segs = json::array();
  const auto& b = f.breakpoints();
  const auto& s = f.segments();
  const auto& p = f.point_values();
  for (std::size_t i = 0; i < s.size(); ++i) {
    json o = {{"left", b[i].ToString()},
              {"right", b[i + 1].ToString()},
              {"value_at_left", s[i].start.ToString()},
              {"slope", s[i].slope.ToString()},
              {"value_at_right", f.SegmentEnd(i).ToString()}};
    if (p[i] != s[i].start) {
      o["left_jump"] = true;
      o["left_point"] = p[i].ToString();
    }
    if (i + 1 == s.size() && p[i + 1] != f.SegmentEnd(i)) {
      o["right_jump"] = true;
      o["right_point"] = p[i + 1].ToString();
    }
    segs.push_back(std::move(o));
  }
  return segs;
}

json CellJson(const CellDoc& c) {
  return {{"lo", c.lo.ToString()},
          {"hi", c.hi.ToString()},
          {"lo_closed", c.lo_closed},
          {"hi_closed", c.hi_closed},
          {"action", c.action}};
}

}  // namespace

std::string EmitResult(const ResultDocument& r) {
  json root = json::object();
  root["format"] = "oneclock-result";
  root["version"] = r.version;
  root["kind"] = GameKindName(r.kind);
  json states = json::array();
  for (std::size_t k = 0; k < r.ids.size(); ++k) {
    json o = {{"id", r.ids[k]}};
    if (r.kind == GameKind::kPriced) {
      o["value"] = r.point_values[k].ToString();
      o["action"] = r.choices[k];
    } else {
      o["value"] = FunctionJson(r.values[k]);
      json layers = json::array();
      for (std::size_t l = 0; l < r.strategy.size(); ++l) {
        json cells = json::array();
        for (const auto& c : r.strategy[l][k]) cells.push_back(CellJson(c));
        json layer = {{"cells", cells}};
        if (r.kind == GameKind::kPtg) {
          json ends = json::array();
          for (const auto& e : r.end_actions[l][k]) {
            ends.push_back({{"before", e.at.ToString()}, {"action", e.action}});
          }
          layer["end_actions"] = ends;
        }
        layers.push_back(std::move(layer));
      }
      o["strategy"] = std::move(layers);
    }
    states.push_back(std::move(o));
  }
  root["states"] = std::move(states);
  if (r.kind == GameKind::kPtg) {
    json ladder = json::array();
    for (const auto& x : r.ladder) ladder.push_back(x.ToString());
    root["ladder"] = std::move(ladder);
  }
  json stats = json::object();
  for (const auto& [name, value] : r.stats) stats[name] = value;
  if (r.wall_seconds) stats["wall_seconds"] = *r.wall_seconds;
  root["stats"] = std::move(stats);
  if (!r.verification.empty()) {
    json checks = json::array();
    for (const auto& c : r.verification) {
      checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    }
    root["verification"] = {{"ok", r.verified()}, {"checks", checks}};
  }
  return root.dump(2) + "\n";
}

namespace {

[[noreturn]] void Bad(const std::string& field, const std::string& message) {
  Diagnostic d;
  d.code = ErrorCode::kValidation;
  d.field = field;
  d.message = message;
  throw DocumentError(std::move(d));
}

const json& At(const json& o, const char* key, const std::string& field) {
  if (!o.is_object() || !o.contains(key)) {
    Bad(field, std::string("missing field \"") + key + "\"");
  }
  return o[key];
}

std::string Str(const json& v, const std::string& field) {
  if (!v.is_string()) Bad(field, "expected a string");
  return v.get<std::string>();
}

ExtCost Cost(const json& v, const std::string& field) {
  try {
    return ExtCost::Parse(Str(v, field));
  } catch (const DocumentError&) {
    throw;
  } catch (const Error& e) {
    Bad(field, e.what());
  }
}

Rational Rat(const json& v, const std::string& field) {
  ExtCost c = Cost(v, field);
  if (c.is_infinite()) Bad(field, "expected a finite rational");
  return c.value();
}

PiecewiseLinearFn FunctionFrom(const json& segs, const std::string& field) {
  if (!segs.is_array() || segs.empty()) Bad(field, "expected segments");
  std::vector<Rational> breaks;
  std::vector<PiecewiseLinearFn::Segment> segments;
  std::vector<ExtCost> points;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const std::string at = field + "/" + std::to_string(i);
    const json& s = segs[i];
    Rational left = Rat(At(s, "left", at), at + "/left");
    if (!breaks.empty() && breaks.back() != left) {
      Bad(at + "/left", "segments do not tile the domain");
    }
    if (breaks.empty()) breaks.push_back(left);
    breaks.push_back(Rat(At(s, "right", at), at + "/right"));
    ExtCost start = Cost(At(s, "value_at_left", at), at + "/value_at_left");
    segments.push_back({start, Rat(At(s, "slope", at), at + "/slope")});
    bool jump = s.value("left_jump", false);
    points.push_back(jump ? Cost(At(s, "left_point", at), at + "/left_point")
                          : start);
  }
  // The final point value: the last segment's left limit unless flagged.
  const json& last = segs.back();
  const std::string at = field + "/" + std::to_string(segs.size() - 1);
  if (last.value("right_jump", false)) {
    points.push_back(Cost(At(last, "right_point", at), at + "/right_point"));
  } else {
    points.push_back(Cost(At(last, "value_at_right", at), at + "/value_at_right"));
  }
  try {
    return PiecewiseLinearFn(std::move(breaks), std::move(segments),
                             std::move(points));
  } catch (const Error& e) {
    Bad(field, e.what());
  }
}

CellDoc CellFrom(const json& c, const std::string& at) {
  CellDoc out;
  out.lo = Rat(At(c, "lo", at), at + "/lo");
  out.hi = Rat(At(c, "hi", at), at + "/hi");
  out.lo_closed = At(c, "lo_closed", at).get<bool>();
  out.hi_closed = At(c, "hi_closed", at).get<bool>();
  out.action = Str(At(c, "action", at), at + "/action");
  return out;
}

}  // namespace

ResultDocument ParseResult(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    Diagnostic d;
    d.code = ErrorCode::kSyntax;
    std::tie(d.line, d.column) = detail::LineColumn(text, e.byte ? e.byte - 1 : 0);
    d.message = e.what();
    throw DocumentError(std::move(d));
  }
  ResultDocument r;
  try {
    if (Str(At(root, "format", ""), "/format") != "oneclock-result") {
      Bad("/format", "expected \"oneclock-result\"");
    }
    r.version = At(root, "version", "").get<int>();
    if (r.version != kFormatVersion) Bad("/version", "unsupported version");
    std::string kind = Str(At(root, "kind", ""), "/kind");
    if (kind == "priced") {
      r.kind = GameKind::kPriced;
    } else if (kind == "sptg") {
      r.kind = GameKind::kSptg;
    } else if (kind == "ptg") {
      r.kind = GameKind::kPtg;
    } else {
      Bad("/kind", "unknown kind \"" + kind + "\"");
    }
    const json& states = At(root, "states", "");
    for (std::size_t k = 0; k < states.size(); ++k) {
      const std::string at = "/states/" + std::to_string(k);
      const json& s = states[k];
      r.ids.push_back(Str(At(s, "id", at), at + "/id"));
      if (r.kind == GameKind::kPriced) {
        r.point_values.push_back(Cost(At(s, "value", at), at + "/value"));
        r.choices.push_back(Str(At(s, "action", at), at + "/action"));
        continue;
      }
      r.values.push_back(FunctionFrom(At(s, "value", at), at + "/value"));
      const json& layers = At(s, "strategy", at);
      if (k == 0) {
        r.strategy.resize(layers.size());
        if (r.kind == GameKind::kPtg) r.end_actions.resize(layers.size());
      }
      if (layers.size() != r.strategy.size()) {
        Bad(at + "/strategy", "layer count differs between states");
      }
      for (std::size_t l = 0; l < layers.size(); ++l) {
        const std::string lat = at + "/strategy/" + std::to_string(l);
        auto& cells = r.strategy[l].emplace_back();
        const json& cs = At(layers[l], "cells", lat);
        for (std::size_t i = 0; i < cs.size(); ++i) {
          cells.push_back(CellFrom(cs[i], lat + "/cells/" + std::to_string(i)));
        }
        if (r.kind != GameKind::kPtg) continue;
        auto& ends = r.end_actions[l].emplace_back();
        for (const auto& e : At(layers[l], "end_actions", lat)) {
          ends.push_back({Rat(At(e, "before", lat), lat + "/end_actions"),
                          Str(At(e, "action", lat), lat + "/end_actions")});
        }
      }
    }
    if (r.kind == GameKind::kPtg) {
      for (const auto& x : At(root, "ladder", "")) {
        r.ladder.push_back(Rat(x, "/ladder"));
      }
    }
    for (const auto& [name, value] : At(root, "stats", "").items()) {
      if (name == "wall_seconds") {
        r.wall_seconds = value.get<double>();
      } else {
        r.stats.emplace_back(name, value.get<std::uint64_t>());
      }
    }
    if (root.contains("verification")) {
      for (const auto& c : At(root["verification"], "checks", "/verification")) {
        r.verification.push_back({c.at("name").get<std::string>(),
                                  c.at("ok").get<bool>(),
                                  c.at("detail").get<std::string>()});
      }
    }
  } catch (const json::exception& e) {
    Bad("", e.what());
  }
  return r;
}

namespace {

std::string Num(const ExtCost& c, bool decimal) {
  if (!decimal || c.is_infinite()) return c.ToString();
  std::ostringstream os;
  os << std::setprecision(17) << c.value().ToDouble();
  return os.str();
}

std::string Num(const Rational& x, bool decimal) { return Num(ExtCost(x), decimal); }

}  // namespace

std::string EmitPlot(const ResultDocument& r, bool decimal) {
  std::ostringstream out;
  out << "state,x_left,x_right,v_left,v_right\n";
  auto row = [&](const std::string& id, const Rational& a, const Rational& b,
                 const ExtCost& va, const ExtCost& vb) {
    out << id << ',' << Num(a, decimal) << ',' << Num(b, decimal) << ','
        << Num(va, decimal) << ',' << Num(vb, decimal) << '\n';
  };
  for (std::size_t k = 0; k < r.values.size(); ++k) {
    const auto& f = r.values[k];
    const auto& b = f.breakpoints();
    const auto& s = f.segments();
    const auto& p = f.point_values();
    for (std::size_t i = 0; i < s.size(); ++i) {
      bool isolated = p[i] != s[i].start || (i > 0 && p[i] != f.SegmentEnd(i - 1));
      if (isolated) row(r.ids[k], b[i], b[i], p[i], p[i]);
      row(r.ids[k], b[i], b[i + 1], s[i].start, f.SegmentEnd(i));
    }
    if (p.back() != f.SegmentEnd(s.size() - 1)) {
      row(r.ids[k], b.back(), b.back(), p.back(), p.back());
    }
  }
  return out.str();
}

}  // namespace oneclock
