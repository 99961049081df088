#include "miclab/document.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "miclab/error.hpp"

namespace miclab {

namespace {

using Json = nlohmann::ordered_json;

std::string quote(const std::string& s) { return Json(s).dump(); }

std::string format_value(const ReportValue& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return std::isfinite(v) ? format_decimal(v) : quote(format_decimal(v));
        } else {
          return quote(v);
        }
      },
      value);
}

double read_number(const Json& node) {
  if (node.is_number()) return node.get<double>();
  if (node.is_string()) {
    const auto s = node.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
  }
  throw MicError(ErrorCode::ParseError, "expected a number, got " + node.dump());
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw MicError(ErrorCode::ParseError, e.what());
  }
}

}  // namespace

std::string format_decimal(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

std::string write_effects_document(int dimension, const std::vector<ComplexMatrix>& effects) {
  std::ostringstream out;
  out << "{\n  \"type\": \"mic\",\n  \"dimension\": " << dimension << ",\n  \"effects\": [\n";
  for (std::size_t n = 0; n < effects.size(); ++n) {
    const ComplexMatrix& m = effects[n];
    out << "    [\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      out << "      [";
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        out << "[" << format_decimal(m(r, c).real()) << ", " << format_decimal(m(r, c).imag()) << "]";
        if (c + 1 < m.cols()) out << ", ";
      }
      out << "]" << (r + 1 < m.rows() ? "," : "") << "\n";
    }
    out << "    ]" << (n + 1 < effects.size() ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
  return out.str();
}

std::string write_mic_document(const Mic& mic) {
  return write_effects_document(mic.dim(), mic.matrices());
}

EffectsDocument parse_effects_document(const std::string& text) {
  const Json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("dimension") || !doc.contains("effects")) {
    throw MicError(ErrorCode::ParseError, "MIC document needs 'dimension' and 'effects'");
  }
  if (doc.contains("type") && doc["type"] != "mic") {
    throw MicError(ErrorCode::ParseError, "document type is " + doc["type"].dump() + ", not \"mic\"");
  }
  if (!doc["dimension"].is_number_integer() || doc["dimension"].get<int>() < 1) {
    throw MicError(ErrorCode::ParseError, "'dimension' must be a positive integer");
  }
  EffectsDocument out;
  out.dimension = doc["dimension"].get<int>();
  const auto d = static_cast<std::size_t>(out.dimension);
  const Json& effects = doc["effects"];
  if (!effects.is_array() || effects.empty()) {
    throw MicError(ErrorCode::ParseError, "'effects' must be a nonempty array");
  }
  for (std::size_t n = 0; n < effects.size(); ++n) {
    const Json& rows = effects[n];
    if (!rows.is_array() || rows.size() != d) {
      throw MicError(ErrorCode::ParseError, "effect " + std::to_string(n) + " needs " +
                                                std::to_string(d) + " rows");
    }
    ComplexMatrix m(out.dimension, out.dimension);
    for (std::size_t r = 0; r < d; ++r) {
      if (!rows[r].is_array() || rows[r].size() != d) {
        throw MicError(ErrorCode::ParseError, "effect " + std::to_string(n) + " row " +
                                                  std::to_string(r) + " needs " + std::to_string(d) +
                                                  " entries");
      }
      for (std::size_t c = 0; c < d; ++c) {
        const Json& entry = rows[r][c];
        if (!entry.is_array() || entry.size() != 2) {
          throw MicError(ErrorCode::ParseError, "entries are [real, imaginary] pairs");
        }
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            Complex(read_number(entry[0]), read_number(entry[1]));
      }
    }
    out.effects.push_back(std::move(m));
  }
  return out;
}

Mic read_mic_document(const std::string& text, const ToleranceConfig& tol) {
  return make_mic(parse_effects_document(text).effects, tol);
}

std::string write_report_document(const Report& report) {
  std::ostringstream out;
  out << "{\n  \"type\": \"report\",\n  \"kind\": " << quote(report.kind()) << ",\n  \"entries\": {";
  const auto& entries = report.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out << (i == 0 ? "\n" : ",\n") << "    " << quote(entries[i].first) << ": "
        << format_value(entries[i].second);
  }
  out << (entries.empty() ? "}\n}\n" : "\n  }\n}\n");
  return out.str();
}

Report parse_report_document(const std::string& text) {
  const Json doc = parse_json(text);
  if (!doc.is_object() || doc.value("type", "") != "report" || !doc.contains("entries") ||
      !doc["entries"].is_object()) {
    throw MicError(ErrorCode::ParseError, "not a report document");
  }
  Report report(doc.value("kind", "report"));
  for (const auto& [key, node] : doc["entries"].items()) {
    if (node.is_boolean()) {
      report.set(key, node.get<bool>());
    } else if (node.is_number_integer()) {
      report.set(key, node.get<std::int64_t>());
    } else if (node.is_number()) {
      report.set(key, node.get<double>());
    } else if (node.is_string()) {
      const auto s = node.get<std::string>();
      if (s == "inf" || s == "-inf" || s == "nan") {
        report.set(key, read_number(node));
      } else {
        report.set(key, s);
      }
    } else {
      throw MicError(ErrorCode::ParseError, "report entries must be scalars: " + key);
    }
  }
  return report;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MicError(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MicError(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
  if (!out) throw MicError(ErrorCode::InvalidArgument, "write failed for " + path);
}

}  // namespace miclab
