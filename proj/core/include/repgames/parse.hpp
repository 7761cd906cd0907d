#pragma once

#include <string>
#include <vector>

namespace repgames {

// "name(a, b)" -> {"name", {a, b}}; a bare "name" has no arguments.
struct CallSpec {
  std::string name;
  std::vector<double> args;
};

CallSpec parse_call(const std::string& text);

}  // namespace repgames
