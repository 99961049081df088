#pragma once

#include <string>
#include <vector>

#include "miclab/povm.hpp"
#include "miclab/report.hpp"

namespace miclab {

// Documents are JSON text. Every floating-point number is written with 17
// significant digits ("%.16e"), which round-trips IEEE doubles exactly.
// Non-finite values are written as the strings "inf", "-inf" and "nan".
//
// MIC document:
//   {"type": "mic", "dimension": d,
//    "effects": [ [[ [re, im], ... ], ... ], ... ]}   (d^2 matrices, row lists)
//
// Report document:
//   {"type": "report", "kind": "...", "entries": {"key": value, ...}}

std::string format_decimal(double value);

struct EffectsDocument {
  int dimension = 0;
  std::vector<ComplexMatrix> effects;
};

std::string write_mic_document(const Mic& mic);
std::string write_effects_document(int dimension, const std::vector<ComplexMatrix>& effects);

// Throws ParseError for malformed text or shape violations.
EffectsDocument parse_effects_document(const std::string& text);
// parse_effects_document followed by MIC validation.
Mic read_mic_document(const std::string& text, const ToleranceConfig& tol = {});

std::string write_report_document(const Report& report);
Report parse_report_document(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace miclab
