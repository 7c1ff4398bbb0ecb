#pragma once

#include <string>

#include "coopt/cop.hpp"

namespace coopt {

/// Serializes an instance in the line-oriented ".cop" format:
///
///   COP 1
///   n <n>
///   d <d_1> ... <d_n>
///   u <i> <c_0> ... <c_{d_i-1}>        one line per variable, i ascending
///   e <i> <j> <row-major d_i*d_j costs> one line per edge
///   end
///
/// Variable indices are 1-based in the file, value indices 0-based. Floats
/// are emitted with 17 significant digits so parsing recovers them exactly.
/// Lines starting with '#' are comments.
std::string write_instance(const CopInstance& inst);

/// Inverse of write_instance: parse(write(inst)) is structurally identical
/// to inst. Throws ParseFault (with a line number) on malformed input,
/// dimension mismatches, duplicate edges, or a missing "end" sentinel.
CopInstance parse_instance(const std::string& text);

/// Solution file: single line "SOL <cost> <v_1> ... <v_n>" (0-based values).
std::string write_solution(double cost, const Assignment& a);
std::pair<double, Assignment> parse_solution(const std::string& text);

/// 17-significant-digit float formatting shared by the file writers.
std::string format_double(double value);

}  // namespace coopt
