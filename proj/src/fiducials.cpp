#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "miclab/constructions.hpp"
#include "miclab/error.hpp"

namespace miclab {

namespace {

struct FiducialRecord {
  int dim;
  std::vector<std::pair<const char*, const char*>> components;
};

// Regenerate with tools/find_fiducials.py; data/sic_fiducials.json holds the
// same values.
const std::vector<FiducialRecord>& builtin_records() {
  static const std::vector<FiducialRecord> records = {
    {2,
     {
         {"0.8880738339771152621607645964181218040117",
          "0.0"},
         {"0.3250575836718681431611241677751197028238",
          "0.3250575836718681431611241677751197028238"},
     }},
    {3,
     {
         {"0.7801804213683246598712638356908213517442",
          "0.0"},
         {"0.09077516410161923187388756759756216323841",
          "0.1572271962894069502453128157897795777382"},
         {"0.2993150465825430980617443502478485126337",
          "0.5184288681508098987242563042782932200954"},
     }},
    {4,
     {
         {"0.2011885864868658929345628159667882670663",
          "0.0"},
         {"-0.256983296271631920993076296548228548366",
          "0.3076345531059190659456908696302497829947"},
         {"0.0",
          "-0.4857122140912640390915215317681219710985"},
         {"-0.7426955103628959600845978283163505194644",
          "0.1064459666190531730111280536634615159283"},
     }},
    {5,
     {
         {"0.4855631463432102663409324710825037446652",
          "0.0"},
         {"0.2399694053578822726104856377777999621833",
          "-0.02869565745158556751509868572978507401391"},
         {"-0.4141879294113203600354411021786766370565",
          "0.03985907864314941627319732631547807062267"},
         {"-0.1627301087655512109882165837334612338774",
          "-0.1161613559212491139964612492655157438937"},
         {"-0.3613395632652026391302015102735305644104",
          "0.6017794103652695790226468640557527983927"},
     }},
  };
  return records;
}

double parse_decimal(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw MicError(ErrorCode::ParseError, "not a decimal number: '" + text + "'");
  }
  if (used != text.size()) throw MicError(ErrorCode::ParseError, "trailing characters in '" + text + "'");
  return value;
}

double component_value(const nlohmann::json& node) {
  if (node.is_string()) return parse_decimal(node.get<std::string>());
  if (node.is_number()) return node.get<double>();
  throw MicError(ErrorCode::ParseError, "vector component must be a string or number");
}

}  // namespace

const std::vector<SicFiducial>& builtin_fiducials() {
  static const std::vector<SicFiducial> fiducials = [] {
    std::vector<SicFiducial> out;
    for (const auto& record : builtin_records()) {
      SicFiducial f;
      f.dim = record.dim;
      f.provenance = FiducialProvenance::BuiltIn;
      f.vector.resize(record.dim);
      for (int i = 0; i < record.dim; ++i) {
        const auto& [re, im] = record.components[static_cast<std::size_t>(i)];
        f.vector(i) = Complex(parse_decimal(re), parse_decimal(im));
      }
      out.push_back(std::move(f));
    }
    return out;
  }();
  return fiducials;
}

const SicFiducial& builtin_fiducial(int d) {
  for (const auto& f : builtin_fiducials()) {
    if (f.dim == d) return f;
  }
  throw MicError(ErrorCode::InvalidArgument, "no built-in SIC fiducial for d = " + std::to_string(d));
}

std::vector<SicFiducial> parse_fiducials(const std::string& text, FiducialProvenance provenance) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MicError(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("records") || !doc["records"].is_array()) {
    throw MicError(ErrorCode::ParseError, "fiducial document needs a 'records' array");
  }
  std::vector<SicFiducial> out;
  for (const auto& record : doc["records"]) {
    if (!record.contains("d") || !record["d"].is_number_integer() || !record.contains("vector") ||
        !record["vector"].is_array()) {
      throw MicError(ErrorCode::ParseError, "fiducial record needs integer 'd' and array 'vector'");
    }
    SicFiducial f;
    f.dim = record["d"].get<int>();
    f.provenance = provenance;
    const auto& components = record["vector"];
    if (f.dim < 1 || components.size() != static_cast<std::size_t>(f.dim)) {
      throw MicError(ErrorCode::ParseError, "vector length differs from d");
    }
    f.vector.resize(f.dim);
    for (int i = 0; i < f.dim; ++i) {
      const auto& c = components[static_cast<std::size_t>(i)];
      if (!c.is_array() || c.size() != 2) {
        throw MicError(ErrorCode::ParseError, "components are [real, imaginary] pairs");
      }
      f.vector(i) = Complex(component_value(c[0]), component_value(c[1]));
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<SicFiducial> load_fiducials(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MicError(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_fiducials(buffer.str(), FiducialProvenance::UserSupplied);
}

}  // namespace miclab
