#include "idla/config.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <openssl/sha.h>

#include "idla/error.hpp"

namespace idla {

namespace {

using nlohmann::json;

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  json parse() {
    json root = json::object();
    json* table = &root;
    while (skip_blank_lines(), pos_ < text_.size()) {
      if (peek() == '[') {
        table = header(root);
      } else {
        const std::string key = bare_key();
        skip_ws();
        expect('=');
        skip_ws();
        json v = value();
        if (table->contains(key)) error("duplicate key '" + key + "'");
        (*table)[key] = std::move(v);
      }
      end_of_line();
    }
    return root;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::parse_error, "config line " + std::to_string(line_) + ": " + msg);
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() {
    const char c = peek();
    if (c == '\n') ++line_;
    ++pos_;
    return c;
  }
  void expect(char c) {
    if (peek() != c) error(std::string("expected '") + c + "'");
    get();
  }
  void skip_ws() {
    while (peek() == ' ' || peek() == '\t') get();
  }
  void skip_comment() {
    if (peek() == '#')
      while (pos_ < text_.size() && peek() != '\n') get();
  }
  void skip_blank_lines() {
    for (;;) {
      skip_ws();
      skip_comment();
      if (peek() == '\n' || peek() == '\r')
        get();
      else
        return;
    }
  }
  // Whitespace, comments and newlines inside arrays.
  void skip_array_space() {
    for (;;) {
      skip_ws();
      skip_comment();
      if (peek() == '\n' || peek() == '\r')
        get();
      else
        return;
    }
  }
  void end_of_line() {
    skip_ws();
    skip_comment();
    if (pos_ >= text_.size()) return;
    if (peek() == '\r') get();
    if (peek() != '\n') error("unexpected trailing characters");
    get();
  }

  std::string bare_key() {
    std::string k;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-') k += get();
    if (k.empty()) error("expected a key");
    return k;
  }

  json* header(json& root) {
    get();
    const bool array = peek() == '[';
    if (array) get();
    skip_ws();
    std::vector<std::string> path{bare_key()};
    while (peek() == '.') {
      get();
      path.push_back(bare_key());
    }
    skip_ws();
    expect(']');
    if (array) expect(']');
    json* node = &root;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      json& next = (*node)[path[i]];
      if (next.is_null()) next = json::object();
      if (!next.is_object()) error("'" + path[i] + "' is not a table");
      node = &next;
    }
    json& leaf = (*node)[path.back()];
    if (array) {
      if (leaf.is_null()) leaf = json::array();
      if (!leaf.is_array()) error("'" + path.back() + "' redefined as an array of tables");
      leaf.push_back(json::object());
      return &leaf.back();
    }
    if (!leaf.is_null()) error("table '" + path.back() + "' defined twice");
    leaf = json::object();
    return &leaf;
  }

  json value() {
    const char c = peek();
    if (c == '"') return string_value();
    if (c == '[') return array_value();
    if (text_.compare(pos_, 4, "true") == 0) {
      pos_ += 4;
      return true;
    }
    if (text_.compare(pos_, 5, "false") == 0) {
      pos_ += 5;
      return false;
    }
    return number_value();
  }

  json string_value() {
    get();
    std::string s;
    for (;;) {
      if (pos_ >= text_.size() || peek() == '\n') error("unterminated string");
      char c = get();
      if (c == '"') break;
      if (c == '\\') {
        const char e = get();
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: error("unsupported escape");
        }
      }
      s += c;
    }
    return s;
  }

  json array_value() {
    get();
    json arr = json::array();
    skip_array_space();
    while (peek() != ']') {
      arr.push_back(value());
      skip_array_space();
      if (peek() == ',') {
        get();
        skip_array_space();
      } else if (peek() != ']') {
        error("expected ',' or ']' in array");
      }
    }
    get();
    return arr;
  }

  json number_value() {
    std::string tok;
    while (pos_ < text_.size()) {
      const char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.' || c == '_')
        tok += get();
      else
        break;
    }
    if (tok.empty()) error("expected a value");
    std::string clean;
    for (char c : tok)
      if (c != '_') clean += c;
    const bool is_float = clean.find_first_of(".eE") != std::string::npos || clean == "inf" ||
                          clean == "+inf" || clean == "-inf" || clean == "nan";
    try {
      std::size_t used = 0;
      if (is_float) {
        const double d = std::stod(clean, &used);
        if (used != clean.size()) error("malformed float '" + tok + "'");
        return d;
      }
      if (clean.size() > 2 && clean[0] == '0' && clean[1] == 'x') {
        const unsigned long long u = std::stoull(clean.substr(2), &used, 16);
        if (used != clean.size() - 2) error("malformed hex integer '" + tok + "'");
        return u;
      }
      if (clean[0] != '-') {
        const unsigned long long u = std::stoull(clean, &used, 10);
        if (used != clean.size()) error("malformed integer '" + tok + "'");
        if (u <= static_cast<unsigned long long>(std::numeric_limits<long long>::max()))
          return static_cast<long long>(u);
        return u;
      }
      const long long i = std::stoll(clean, &used, 10);
      if (used != clean.size()) error("malformed integer '" + tok + "'");
      return i;
    } catch (const std::invalid_argument&) {
      error("malformed value '" + tok + "'");
    } catch (const std::out_of_range&) {
      error("value out of range '" + tok + "'");
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

nlohmann::json parse_toml(const std::string& text) { return Parser(text).parse(); }

nlohmann::json load_toml_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::missing_file, "cannot open config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_toml(ss.str());
}

std::string git_blob_hash(const std::string& bytes) {
  const std::string data = "blob " + std::to_string(bytes.size()) + '\0' + bytes;
  unsigned char digest[SHA_DIGEST_LENGTH];
  SHA1(reinterpret_cast<const unsigned char*>(data.data()), data.size(), digest);
  std::ostringstream out;
  for (unsigned char b : digest) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(b);
  return out.str();
}

}  // namespace idla
