#pragma once

#include <cstdint>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace miclab {

using ReportValue = std::variant<bool, std::int64_t, double, std::string>;

// Flat, ordered key-value record.
class Report {
 public:
  explicit Report(std::string kind = "report") : kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }
  const std::vector<std::pair<std::string, ReportValue>>& entries() const { return entries_; }

  // Integers widen to int64, floating values to double, anything else to a string.
  template <typename T>
  Report& set(const std::string& key, T value) {
    if constexpr (std::is_same_v<T, bool>) {
      return put(key, ReportValue(value));
    } else if constexpr (std::is_integral_v<T>) {
      return put(key, ReportValue(static_cast<std::int64_t>(value)));
    } else if constexpr (std::is_floating_point_v<T>) {
      return put(key, ReportValue(static_cast<double>(value)));
    } else {
      return put(key, ReportValue(std::string(value)));
    }
  }
  Report& put(const std::string& key, ReportValue value);

  const ReportValue* find(const std::string& key) const;
  double number(const std::string& key) const;  // throws InvalidArgument if absent or not numeric

  void merge(const Report& other, const std::string& prefix = "");

 private:
  std::string kind_;
  std::vector<std::pair<std::string, ReportValue>> entries_;
};

}  // namespace miclab
