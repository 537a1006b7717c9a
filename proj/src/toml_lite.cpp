#include "vfc/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <vector>

#include "vfc/errors.hpp"

namespace vfc {
namespace {

struct Cursor {
  const std::string& line;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  }
  bool done() const { return pos >= line.size(); }
  char peek() const { return line[pos]; }
};

[[noreturn]] void fail(const std::string& origin, int lineno, const std::string& what) {
  throw ParseError(origin + ":" + std::to_string(lineno) + ": " + what);
}

std::string parse_basic_string(Cursor& c, const std::string& origin, int lineno) {
  std::string out;
  ++c.pos;  // opening quote
  while (!c.done()) {
    char ch = c.line[c.pos++];
    if (ch == '"') return out;
    if (ch == '\\') {
      if (c.done()) break;
      char esc = c.line[c.pos++];
      switch (esc) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: fail(origin, lineno, std::string("unsupported escape \\") + esc);
      }
    } else {
      out += ch;
    }
  }
  fail(origin, lineno, "unterminated string");
}

nlohmann::json parse_scalar(Cursor& c, const std::string& origin, int lineno);

nlohmann::json parse_array(Cursor& c, const std::string& origin, int lineno) {
  nlohmann::json arr = nlohmann::json::array();
  ++c.pos;  // '['
  c.skip_ws();
  if (!c.done() && c.peek() == ']') {
    ++c.pos;
    return arr;
  }
  for (;;) {
    c.skip_ws();
    arr.push_back(parse_scalar(c, origin, lineno));
    c.skip_ws();
    if (c.done()) fail(origin, lineno, "unterminated array");
    if (c.peek() == ',') {
      ++c.pos;
      continue;
    }
    if (c.peek() == ']') {
      ++c.pos;
      return arr;
    }
    fail(origin, lineno, "expected ',' or ']' in array");
  }
}

nlohmann::json parse_scalar(Cursor& c, const std::string& origin, int lineno) {
  c.skip_ws();
  if (c.done()) fail(origin, lineno, "missing value");
  const char ch = c.peek();
  if (ch == '"') return parse_basic_string(c, origin, lineno);
  if (ch == '[') return parse_array(c, origin, lineno);

  std::size_t end = c.pos;
  while (end < c.line.size() && c.line[end] != ',' && c.line[end] != ']' &&
         c.line[end] != '#' && c.line[end] != ' ' && c.line[end] != '\t') {
    ++end;
  }
  std::string token = c.line.substr(c.pos, end - c.pos);
  c.pos = end;
  if (token == "true") return true;
  if (token == "false") return false;

  const bool looks_float = token.find_first_of(".eE") != std::string::npos;
  if (!looks_float) {
    long long iv = 0;
    auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), iv);
    if (ec == std::errc() && p == token.data() + token.size()) return iv;
  }
  double dv = 0;
  auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), dv);
  if (ec == std::errc() && p == token.data() + token.size()) return dv;
  fail(origin, lineno, "cannot parse value '" + token + "'");
}

std::string parse_key(Cursor& c, const std::string& origin, int lineno) {
  c.skip_ws();
  if (!c.done() && c.peek() == '"') return parse_basic_string(c, origin, lineno);
  std::size_t start = c.pos;
  while (!c.done() &&
         (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '_' ||
          c.peek() == '-')) {
    ++c.pos;
  }
  if (c.pos == start) fail(origin, lineno, "expected a key");
  return c.line.substr(start, c.pos - start);
}

std::vector<std::string> split_dotted(const std::string& s, const std::string& origin,
                                      int lineno) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == '.') {
      if (cur.empty()) fail(origin, lineno, "empty table name component");
      parts.push_back(cur);
      cur.clear();
    } else if (ch != ' ' && ch != '\t') {
      cur += ch;
    }
  }
  if (cur.empty()) fail(origin, lineno, "empty table name component");
  parts.push_back(cur);
  return parts;
}

}  // namespace

nlohmann::json parse_toml(std::istream& in, const std::string& origin) {
  nlohmann::json root = nlohmann::json::object();
  nlohmann::json* table = &root;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    Cursor c{line};
    c.skip_ws();
    if (c.done() || c.peek() == '#') continue;

    if (c.peek() == '[') {
      const auto close = line.find(']', c.pos);
      if (close == std::string::npos) fail(origin, lineno, "unterminated table header");
      const auto name = line.substr(c.pos + 1, close - c.pos - 1);
      table = &root;
      for (const std::string& part : split_dotted(name, origin, lineno)) {
        table = &(*table)[part];
        if (!table->is_object() && !table->is_null()) {
          fail(origin, lineno, "table '" + name + "' conflicts with an existing value");
        }
        if (table->is_null()) *table = nlohmann::json::object();
      }
      continue;
    }

    const std::string key = parse_key(c, origin, lineno);
    c.skip_ws();
    if (c.done() || c.peek() != '=') fail(origin, lineno, "expected '=' after key");
    ++c.pos;
    nlohmann::json value = parse_scalar(c, origin, lineno);
    c.skip_ws();
    if (!c.done() && c.peek() != '#') fail(origin, lineno, "trailing characters after value");
    if (table->contains(key)) fail(origin, lineno, "duplicate key '" + key + "'");
    (*table)[key] = std::move(value);
  }
  return root;
}

}  // namespace vfc
