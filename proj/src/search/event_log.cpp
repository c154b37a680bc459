#include "ssalab/search/event_log.hpp"

#include <sstream>

#include "json.hpp"
#include "ssalab/util/errors.hpp"

namespace ssalab::search {

namespace {

using nlohmann::json;

json state_to_json(const SearchState& s) {
  json j;
  j["assignment"] = json::array();
  for (const auto& [v, val] : s.assignment) j["assignment"].push_back({v, val});
  j["domains"] = json::array();
  for (const auto& [v, dom] : s.domains)
    j["domains"].push_back({v, std::vector<Value>(dom.begin(), dom.end())});
  j["trail"] = json::array();
  for (const auto& e : s.trail)
    j["trail"].push_back({e.var, e.value, e.level, e.forced});
  j["levels"] = json::array();
  for (const auto& [l, li] : s.levels) {
    json tried = json::array();
    for (const auto& [v, val] : li.tried) tried.push_back({v, val});
    j["levels"].push_back(
        {l, li.decision_var,
         std::vector<Value>(li.domain_at_entry.begin(),
                            li.domain_at_entry.end()),
         tried,
         std::vector<int>(li.conflict_levels.begin(),
                          li.conflict_levels.end())});
  }
  j["level"] = s.level;
  if (s.conflict) j["conflict"] = s.conflict->id;
  return j;
}

SearchState state_from_json(const json& j) {
  SearchState s;
  for (const auto& p : j.at("assignment"))
    s.assignment[p.at(0).get<Var>()] = p.at(1).get<Value>();
  for (const auto& p : j.at("domains")) {
    std::set<Value> dom;
    for (const auto& v : p.at(1)) dom.insert(v.get<Value>());
    s.domains[p.at(0).get<Var>()] = std::move(dom);
  }
  for (const auto& p : j.at("trail"))
    s.trail.push_back({p.at(0).get<Var>(), p.at(1).get<Value>(),
                       p.at(2).get<int>(), p.at(3).get<bool>()});
  for (const auto& p : j.at("levels")) {
    LevelInfo li;
    li.decision_var = p.at(1).get<Var>();
    for (const auto& v : p.at(2)) li.domain_at_entry.insert(v.get<Value>());
    for (const auto& t : p.at(3))
      li.tried.insert({t.at(0).get<Var>(), t.at(1).get<Value>()});
    for (const auto& c : p.at(4)) li.conflict_levels.insert(c.get<int>());
    s.levels[p.at(0).get<int>()] = std::move(li);
  }
  s.level = j.at("level").get<int>();
  if (j.contains("conflict")) s.conflict = Conflict{j.at("conflict").get<int>()};
  return s;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::ok: return "ok";
    case Outcome::conflict: return "conflict";
    case Outcome::solved: return "solved";
    case Outcome::failed: return "failed";
  }
  return "?";
}

Outcome outcome_from(const std::string& s) {
  if (s == "ok") return Outcome::ok;
  if (s == "conflict") return Outcome::conflict;
  if (s == "solved") return Outcome::solved;
  if (s == "failed") return Outcome::failed;
  throw MalformedTrace("unknown outcome " + s);
}

}  // namespace

std::string events_to_jsonl(const std::vector<StepEvent>& events) {
  std::ostringstream os;
  for (const auto& ev : events) {
    json j;
    j["state"] = state_to_json(ev.state_before);
    j["action"] = {ev.action.kind == Action::Kind::branch ? "branch"
                                                          : "backtrack",
                   ev.action.var, ev.action.value};
    json lits = json::array();
    for (const auto& [l, t] : ev.evidence.literals) lits.push_back({l, t});
    j["evidence"] = {static_cast<int>(ev.evidence.verdict),
                     ev.evidence.inspected_id, lits};
    j["outcome"] = outcome_name(ev.outcome);
    j["backjump"] = ev.backjump_level;
    j["applied"] = json::array();
    for (const auto& [v, val] : ev.applied) j["applied"].push_back({v, val});
    os << j.dump() << '\n';
  }
  return os.str();
}

std::vector<StepEvent> events_from_jsonl(const std::string& text) {
  std::vector<StepEvent> events;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    StepEvent ev;
    ev.state_before = state_from_json(j.at("state"));
    const auto& a = j.at("action");
    ev.action.kind = a.at(0).get<std::string>() == "branch"
                         ? Action::Kind::branch
                         : Action::Kind::backtrack;
    ev.action.var = a.at(1).get<Var>();
    ev.action.value = a.at(2).get<Value>();
    const auto& evd = j.at("evidence");
    ev.evidence.verdict = static_cast<Evidence::Verdict>(evd.at(0).get<int>());
    ev.evidence.inspected_id = evd.at(1).get<int>();
    for (const auto& p : evd.at(2))
      ev.evidence.literals.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    ev.outcome = outcome_from(j.at("outcome").get<std::string>());
    ev.backjump_level = j.at("backjump").get<int>();
    for (const auto& p : j.at("applied"))
      ev.applied.emplace_back(p.at(0).get<Var>(), p.at(1).get<Value>());
    events.push_back(std::move(ev));
  }
  return events;
}

}  // namespace ssalab::search
