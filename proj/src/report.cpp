#include "miclab/report.hpp"

#include "miclab/error.hpp"

namespace miclab {

Report& Report::put(const std::string& key, ReportValue value) {
  for (auto& entry : entries_) {
    if (entry.first == key) {
      entry.second = std::move(value);
      return *this;
    }
  }
  entries_.emplace_back(key, std::move(value));
  return *this;
}

const ReportValue* Report::find(const std::string& key) const {
  for (const auto& entry : entries_) {
    if (entry.first == key) return &entry.second;
  }
  return nullptr;
}

double Report::number(const std::string& key) const {
  const ReportValue* value = find(key);
  if (value == nullptr) throw MicError(ErrorCode::InvalidArgument, "no report entry '" + key + "'");
  if (const auto* d = std::get_if<double>(value)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(value)) return static_cast<double>(*i);
  throw MicError(ErrorCode::InvalidArgument, "report entry '" + key + "' is not numeric");
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& [key, value] : other.entries()) put(prefix + key, value);
}

}  // namespace miclab
