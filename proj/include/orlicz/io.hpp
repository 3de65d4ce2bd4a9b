#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "orlicz/convex_calculus.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/gauge.hpp"
#include "orlicz/hausdorff_net.hpp"

namespace orlicz {

using Json = nlohmann::ordered_json;

/// Malformed input with a source position; what() reads "file:line:col: message".
class ParseError : public InputError {
 public:
  ParseError(const std::string& source, int line, int column, const std::string& message);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_, column_;
};

/// Parsed JSON text that remembers where every value started.
class JsonDoc {
 public:
  static JsonDoc parse(std::string text, std::string source = "<string>");
  static JsonDoc load(const std::string& path);

  const Json& root() const { return root_; }
  const std::string& source() const { return source_; }
  const std::string& text() const { return text_; }

  /// Value at a JSON pointer ("" is the root); ParseError anchored at the closest parent if absent.
  const Json& at(const std::string& pointer) const;
  bool has(const std::string& pointer) const;
  /// ParseError anchored at the value behind `pointer` (or its closest existing parent).
  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const;

  double number(const std::string& pointer) const;
  double number_or(const std::string& pointer, double fallback) const;
  int integer(const std::string& pointer) const;
  int integer_or(const std::string& pointer, int fallback) const;
  std::string string_or(const std::string& pointer, const std::string& fallback) const;

 private:
  std::pair<int, int> position(std::size_t offset) const;
  std::string text_, source_;
  Json root_;
  std::map<std::string, std::size_t> offsets_;  // pointer → byte offset of the value
};

/// {"family": "power", "p": 4, "coef": 1} | powerlog {p, q, shift} | exp {gamma, head}
/// | table {log_t: [...], log_a: [...]}
YoungFunction parse_young(const JsonDoc& doc, const std::string& pointer);
/// {"family": "power", "alpha": 1} | powerlog {alpha, beta} | logpower {beta}
/// | table {log_r: [...], log_phi: [...]}; n comes from the caller.
GaugeFunction parse_gauge(const JsonDoc& doc, const std::string& pointer, int n);
/// [{"level": 3, "coords": [1, 5]}, ...]
CubeSet parse_cubes(const JsonDoc& doc, const std::string& pointer, int dim);

/// Comma separated coordinates, one point per line; '#' starts a comment, blank lines skipped.
/// Returns dim coordinates per point, row-major.
std::vector<double> load_point_csv(const std::string& path, int dim);

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

/// %.17g, with "inf"/"-inf"/"nan" spelled out.
std::string format_number(double v);

}  // namespace orlicz
