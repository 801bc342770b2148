#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "normaloid/matrix.hpp"

namespace normaloid {

using Json = nlohmann::ordered_json;

/// Parses {"n": int, "data": [[re, im], ...]} (n*n entries, row-major).
/// Unknown keys are ignored. Throws InvalidMatrix on malformed input.
ComplexMatrix matrix_from_json(const nlohmann::json& j);
ComplexMatrix matrix_from_json(const Json& j);

Json matrix_to_json(const ComplexMatrix& m);

/// Vectors use the same layout with n entries.
Json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j);

ComplexMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m);

/// Serializes with stable key order, 17 significant digits for doubles,
/// non-finite numbers as null, LF line endings and a trailing newline.
std::string dump_json(const Json& j, int indent = 2);

/// printf("%.17g") formatting shared by JSON and CSV writers.
std::string format_double(double x);

}  // namespace normaloid
