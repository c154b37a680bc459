#pragma once

#include <string>
#include <vector>

#include "ssalab/search/types.hpp"

namespace ssalab::search {

// Line-delimited JSON event log, one StepEvent per line.
std::string events_to_jsonl(const std::vector<StepEvent>& events);
std::vector<StepEvent> events_from_jsonl(const std::string& text);

}  // namespace ssalab::search
