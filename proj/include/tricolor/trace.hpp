#pragma once

#include <ostream>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace tricolor {

/// Receives one structured record per pipeline event. Records always carry an
/// "event" field.
class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void record(const nlohmann::json& event) = 0;
};

/// Writes each record as one JSON line.
class StreamTrace final : public TraceSink {
 public:
  explicit StreamTrace(std::ostream& os) : os_(os) {}
  void record(const nlohmann::json& event) override { os_ << event.dump() << '\n'; }

 private:
  std::ostream& os_;
};

class CollectingTrace final : public TraceSink {
 public:
  void record(const nlohmann::json& event) override { events.push_back(event); }

  std::vector<nlohmann::json> events;
};

inline void emit(TraceSink* sink, std::string_view event, nlohmann::json fields = nlohmann::json::object()) {
  if (sink == nullptr) return;
  fields["event"] = event;
  sink->record(fields);
}

}  // namespace tricolor
