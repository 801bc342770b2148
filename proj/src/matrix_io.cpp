#include "normaloid/matrix_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "normaloid/errors.hpp"

namespace normaloid {

namespace {

template <typename JsonT>
double number_at(const JsonT& entry, std::size_t k) {
  if (!entry.is_array() || entry.size() != 2 || !entry[k].is_number()) {
    throw InvalidMatrix("each entry must be a [re, im] pair of numbers");
  }
  return entry[k].template get<double>();
}

template <typename JsonT>
ComplexMatrix parse_matrix(const JsonT& j) {
  if (!j.is_object()) throw InvalidMatrix("matrix JSON must be an object");
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw InvalidMatrix("missing integer field 'n'");
  }
  const auto n = j["n"].template get<long long>();
  if (n <= 0 || n > 4096) throw InvalidMatrix("'n' must be a positive dimension");
  if (!j.contains("data") || !j["data"].is_array()) {
    throw InvalidMatrix("missing array field 'data'");
  }
  const auto& data = j["data"];
  if (data.size() != static_cast<std::size_t>(n * n)) {
    throw InvalidMatrix("'data' must hold n*n entries, got " + std::to_string(data.size()));
  }
  ComplexMatrix m(n, n);
  for (long long i = 0; i < n; ++i) {
    for (long long k = 0; k < n; ++k) {
      const auto& entry = data[static_cast<std::size_t>(i * n + k)];
      m(i, k) = Complex(number_at(entry, 0), number_at(entry, 1));
    }
  }
  require_valid(m);
  return m;
}

void emit(const Json& j, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent <= 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent > 0 ? ": " : ":";
        emit(value, indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars (e.g. [re, im] pairs) stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(),
                                    [](const Json& e) { return e.is_primitive(); });
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        emit(value, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) { return parse_matrix(j); }
ComplexMatrix matrix_from_json(const Json& j) { return parse_matrix(j); }

Json matrix_to_json(const ComplexMatrix& m) {
  Json out;
  out["n"] = m.rows();
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      data.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
  out["data"] = std::move(data);
  return out;
}

Json vector_to_json(const ComplexVector& v) {
  Json out;
  out["n"] = v.size();
  Json data = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    data.push_back(Json::array({v(i).real(), v(i).imag()}));
  out["data"] = std::move(data);
  return out;
}

ComplexVector vector_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("data") || !j["data"].is_array()) {
    throw InvalidMatrix("vector JSON must have 'n' and 'data'");
  }
  const auto n = j["n"].get<long long>();
  if (n <= 0 || j["data"].size() != static_cast<std::size_t>(n)) {
    throw InvalidMatrix("vector 'data' must hold n entries");
  }
  ComplexVector v(n);
  for (long long i = 0; i < n; ++i) {
    const auto& entry = j["data"][static_cast<std::size_t>(i)];
    v(i) = Complex(number_at(entry, 0), number_at(entry, 1));
  }
  return v;
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidMatrix("cannot open matrix file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidMatrix("malformed JSON in " + path.string() + ": " + e.what());
  }
  return matrix_from_json(j);
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidMatrix("cannot write matrix file " + path.string());
  out << dump_json(matrix_to_json(m));
}

std::string dump_json(const Json& j, int indent) {
  std::string out;
  emit(j, indent, 0, out);
  out += '\n';
  return out;
}

}  // namespace normaloid
