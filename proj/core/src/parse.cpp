#include "repgames/parse.hpp"

#include <cctype>
#include <cstdlib>

#include "repgames/error.hpp"

namespace repgames {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

CallSpec parse_call(const std::string& text) {
  const std::string s = trim(text);
  CallSpec out;
  const auto open = s.find('(');
  if (open == std::string::npos) {
    out.name = s;
    if (out.name.empty()) throw ConfigError("empty name");
    return out;
  }
  if (s.back() != ')') throw ConfigError("malformed call '" + s + "': missing ')'");
  out.name = trim(s.substr(0, open));
  std::string inner = s.substr(open + 1, s.size() - open - 2);
  std::size_t pos = 0;
  while (pos <= inner.size()) {
    auto comma = inner.find(',', pos);
    std::string tok = trim(inner.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (tok.empty()) {
      if (comma == std::string::npos && out.args.empty()) break;
      throw ConfigError("malformed call '" + s + "': empty argument");
    }
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') throw ConfigError("malformed call '" + s + "': bad number '" + tok + "'");
    out.args.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace repgames
