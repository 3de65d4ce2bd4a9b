#include "orlicz/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace orlicz {

ParseError::ParseError(const std::string& source, int line, int column, const std::string& message)
    : InputError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                 message),
      line_(line),
      column_(column) {}

namespace {

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

// Walks text that nlohmann already accepted and records where each value starts.
class Locator {
 public:
  Locator(const std::string& text, std::map<std::string, std::size_t>& out) : s_(text), out_(out) {}
  void run() { value(""); }

 private:
  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  std::string string_token() {
    std::string out;
    ++i_;  // opening quote
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\' && i_ + 1 < s_.size()) {
        char e = s_[++i_];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'r': out += '\r'; break;
          case 'b': out += '\b'; break;
          case 'f': out += '\f'; break;
          case 'u': out += "\\u"; break;  // keys with \u escapes are not addressed by position
          default: out += e;
        }
      } else {
        out += s_[i_];
      }
      ++i_;
    }
    ++i_;  // closing quote
    return out;
  }
  void value(const std::string& ptr) {
    ws();
    out_[ptr] = i_;
    if (i_ >= s_.size()) return;
    char c = s_[i_];
    if (c == '{') {
      ++i_;
      for (;;) {
        ws();
        if (i_ >= s_.size() || s_[i_] == '}') break;
        if (s_[i_] == ',') {
          ++i_;
          continue;
        }
        std::string key = string_token();
        ws();
        ++i_;  // ':'
        value(ptr + "/" + escape_token(key));
      }
      ++i_;
    } else if (c == '[') {
      ++i_;
      std::size_t k = 0;
      for (;;) {
        ws();
        if (i_ >= s_.size() || s_[i_] == ']') break;
        if (s_[i_] == ',') {
          ++i_;
          continue;
        }
        value(ptr + "/" + std::to_string(k++));
      }
      ++i_;
    } else if (c == '"') {
      string_token();
    } else {
      while (i_ < s_.size() && !std::strchr(",]} \t\r\n", s_[i_])) ++i_;
    }
  }

  const std::string& s_;
  std::map<std::string, std::size_t>& out_;
  std::size_t i_ = 0;
};

}  // namespace

JsonDoc JsonDoc::parse(std::string text, std::string source) {
  JsonDoc d;
  d.text_ = std::move(text);
  d.source_ = std::move(source);
  try {
    d.root_ = Json::parse(d.text_);
  } catch (const Json::parse_error& e) {
    std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    auto [line, col] = d.position(at);
    std::string msg = e.what();
    // drop nlohmann's "[json.exception.parse_error.101] parse error at line 1, column 2: " prefix
    if (auto p = msg.find(": "); p != std::string::npos) msg = msg.substr(p + 2);
    throw ParseError(d.source_, line, col, msg);
  }
  Locator(d.text_, d.offsets_).run();
  return d;
}

JsonDoc JsonDoc::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

std::pair<int, int> JsonDoc::position(std::size_t offset) const {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
    if (text_[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

bool JsonDoc::has(const std::string& pointer) const {
  return root_.contains(Json::json_pointer(pointer));
}

void JsonDoc::fail(const std::string& pointer, const std::string& message) const {
  std::string p = pointer;
  for (;;) {
    auto it = offsets_.find(p);
    if (it != offsets_.end()) {
      auto [line, col] = position(it->second);
      throw ParseError(source_, line, col, (pointer.empty() ? "" : pointer + ": ") + message);
    }
    if (p.empty()) break;
    p = p.substr(0, p.rfind('/'));
  }
  throw ParseError(source_, 1, 1, pointer + ": " + message);
}

const Json& JsonDoc::at(const std::string& pointer) const {
  if (!has(pointer)) fail(pointer, "missing value");
  return root_.at(Json::json_pointer(pointer));
}

double JsonDoc::number(const std::string& pointer) const {
  const Json& v = at(pointer);
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s == "inf" || s == "infinity") return kInf;
  }
  if (!v.is_number()) fail(pointer, "expected a number");
  return v.get<double>();
}

double JsonDoc::number_or(const std::string& pointer, double fallback) const {
  return has(pointer) ? number(pointer) : fallback;
}

int JsonDoc::integer(const std::string& pointer) const {
  const Json& v = at(pointer);
  if (!v.is_number_integer()) fail(pointer, "expected an integer");
  return v.get<int>();
}

int JsonDoc::integer_or(const std::string& pointer, int fallback) const {
  return has(pointer) ? integer(pointer) : fallback;
}

std::string JsonDoc::string_or(const std::string& pointer, const std::string& fallback) const {
  if (!has(pointer)) return fallback;
  const Json& v = at(pointer);
  if (!v.is_string()) fail(pointer, "expected a string");
  return v.get<std::string>();
}

namespace {

std::vector<double> number_array(const JsonDoc& doc, const std::string& pointer) {
  const Json& v = doc.at(pointer);
  if (!v.is_array()) doc.fail(pointer, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(doc.number(pointer + "/" + std::to_string(i)));
  return out;
}

std::string family_of(const JsonDoc& doc, const std::string& pointer) {
  if (!doc.at(pointer).is_object()) doc.fail(pointer, "expected an object");
  const Json& f = doc.at(pointer + "/family");
  if (!f.is_string()) doc.fail(pointer + "/family", "expected a family name");
  return f.get<std::string>();
}

}  // namespace

YoungFunction parse_young(const JsonDoc& doc, const std::string& pointer) {
  const std::string fam = family_of(doc, pointer);
  try {
    if (fam == "power")
      return YoungFunction::power(doc.number(pointer + "/p"), doc.number_or(pointer + "/coef", 1.0));
    if (fam == "powerlog")
      return YoungFunction::power_log(doc.number(pointer + "/p"), doc.number(pointer + "/q"),
                                      doc.number_or(pointer + "/shift", std::exp(1.0)));
    if (fam == "exp")
      return YoungFunction::exponential(doc.number(pointer + "/gamma"),
                                        doc.number_or(pointer + "/head", 2.0));
    if (fam == "table")
      return YoungFunction::table(number_array(doc, pointer + "/log_t"),
                                  number_array(doc, pointer + "/log_a"));
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    doc.fail(pointer, e.what());
  }
  doc.fail(pointer + "/family", "unknown Young family '" + fam + "'");
}

GaugeFunction parse_gauge(const JsonDoc& doc, const std::string& pointer, int n) {
  const std::string fam = family_of(doc, pointer);
  try {
    if (fam == "power") return GaugeFunction::power(doc.number(pointer + "/alpha"), n);
    if (fam == "powerlog")
      return GaugeFunction::power_log(doc.number(pointer + "/alpha"), doc.number(pointer + "/beta"),
                                      n);
    if (fam == "logpower") return GaugeFunction::log_power(doc.number(pointer + "/beta"), n);
    if (fam == "table")
      return GaugeFunction::table(number_array(doc, pointer + "/log_r"),
                                  number_array(doc, pointer + "/log_phi"), n);
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    doc.fail(pointer, e.what());
  }
  doc.fail(pointer + "/family", "unknown gauge family '" + fam + "'");
}

CubeSet parse_cubes(const JsonDoc& doc, const std::string& pointer, int dim) {
  const Json& v = doc.at(pointer);
  if (!v.is_array()) doc.fail(pointer, "expected an array of cubes");
  std::vector<DyadicCube> cubes;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = pointer + "/" + std::to_string(i);
    DyadicCube c{doc.integer(p + "/level"), {}};
    const Json& coords = doc.at(p + "/coords");
    if (!coords.is_array() || coords.size() != static_cast<std::size_t>(dim))
      doc.fail(p + "/coords", "expected " + std::to_string(dim) + " integer coordinates");
    for (std::size_t k = 0; k < coords.size(); ++k) {
      if (!coords[k].is_number_integer()) doc.fail(p + "/coords/" + std::to_string(k), "expected an integer");
      c.coords.push_back(coords[k].get<std::int64_t>());
    }
    cubes.push_back(std::move(c));
  }
  try {
    return CubeSet(dim, std::move(cubes));
  } catch (const InputError& e) {
    doc.fail(pointer, e.what());
  }
}

std::vector<double> load_point_csv(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::vector<double> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    int fields = 0;
    const char* p = line.c_str();
    for (;;) {
      while (*p == ' ' || *p == '\t') ++p;
      char* end = nullptr;
      double v = std::strtod(p, &end);
      if (end == p) throw ParseError(path, lineno, static_cast<int>(p - line.c_str()) + 1, "expected a number");
      out.push_back(v);
      ++fields;
      p = end;
      while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
      if (*p == '\0') break;
      if (*p != ',') throw ParseError(path, lineno, static_cast<int>(p - line.c_str()) + 1, "expected ','");
      ++p;
    }
    if (fields != dim)
      throw ParseError(path, lineno, 1,
                       "expected " + std::to_string(dim) + " coordinates, found " + std::to_string(fields));
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace orlicz
