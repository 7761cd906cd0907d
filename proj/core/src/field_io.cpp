#include "repgames/field_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "repgames/error.hpp"

namespace repgames {

using nlohmann::json;

std::string grid_header_json(const Grid& g) {
  json j;
  j["schema"] = "repgames.field/1";
  j["dim"] = g.dim();
  json lo = json::array(), hi = json::array(), n = json::array();
  for (int a = 0; a < g.dim(); ++a) {
    lo.push_back(g.lo(a));
    hi.push_back(g.hi(a));
    n.push_back(g.n(a));
  }
  j["lo"] = lo;
  j["hi"] = hi;
  j["n"] = n;
  j["extension"] = "constant";
  return j.dump(2);
}

Grid grid_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("field header: ") + e.what());
  }
  if (j.value("schema", "") != "repgames.field/1") throw InputError("field header: unknown schema");
  const int dim = j.at("dim").get<int>();
  std::array<double, 2> lo{0, 0}, hi{0, 0};
  std::array<int, 2> n{1, 1};
  for (int a = 0; a < dim; ++a) {
    lo[a] = j.at("lo").at(a).get<double>();
    hi[a] = j.at("hi").at(a).get<double>();
    n[a] = j.at("n").at(a).get<int>();
  }
  return Grid(dim, lo, hi, n);
}

void write_field_csv(const ScalarField& f, std::ostream& out) {
  const Grid& g = f.grid();
  out << std::setprecision(17);
  out << (g.dim() == 1 ? "i,x,value\n" : "i,j,x,y,value\n");
  for (std::size_t k = 0; k < f.size(); ++k) {
    auto [ix, iy] = g.multi_index(k);
    Vec x = g.node(k);
    if (g.dim() == 1)
      out << ix << ',' << x[0] << ',' << f[k] << '\n';
    else
      out << ix << ',' << iy << ',' << x[0] << ',' << x[1] << ',' << f[k] << '\n';
  }
}

void write_field(const ScalarField& f, const std::string& stem) {
  std::ofstream csv(stem + ".csv");
  std::ofstream hdr(stem + ".json");
  if (!csv || !hdr) throw InputError("cannot write field files at " + stem);
  write_field_csv(f, csv);
  hdr << grid_header_json(f.grid()) << '\n';
}

ScalarField read_field(const std::string& stem) {
  std::ifstream hdr(stem + ".json");
  std::ifstream csv(stem + ".csv");
  if (!hdr || !csv) throw InputError("cannot read field files at " + stem);
  std::stringstream ss;
  ss << hdr.rdbuf();
  Grid g = grid_from_json(ss.str());
  std::vector<double> values(g.size(), 0.0);
  std::vector<bool> seen(g.size(), false);
  std::string line;
  std::getline(csv, line);
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    const std::size_t want = g.dim() == 1 ? 3 : 5;
    if (cells.size() != want) throw InputError("field csv: bad row '" + line + "'");
    int ix = std::stoi(cells[0]);
    int iy = g.dim() == 1 ? 0 : std::stoi(cells[1]);
    if (ix < 0 || ix >= g.n(0) || iy < 0 || iy >= g.n(1)) throw InputError("field csv: index out of range");
    std::size_t k = g.index(ix, iy);
    values[k] = std::stod(cells.back());
    seen[k] = true;
  }
  for (bool s : seen)
    if (!s) throw InputError("field csv: missing nodes");
  return ScalarField(g, std::move(values));
}

}  // namespace repgames
