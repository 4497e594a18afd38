#include "scmt/transfer/pairs_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "scmt/error.hpp"

namespace scmt::transfer {

void write_pairs_csv(const std::string& path, const std::vector<CommandPair>& pairs) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::ConfigInvalid, "cannot write " + path);
  out << "vT,gammaT,vL,gammaL\n";
  char buf[128];
  for (const CommandPair& p : pairs) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", p.teacher.v, p.teacher.gamma, p.learner.v, p.learner.gamma);
    out << buf;
  }
}

std::vector<CommandPair> read_pairs_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::vector<CommandPair> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.rfind("vT", 0) == 0) continue;
    std::stringstream ss(line);
    double vals[4];
    for (double& v : vals) {
      std::string cell;
      if (!std::getline(ss, cell, ',')) throw Error(Errc::ParseError, path + ":" + std::to_string(lineno) + ": expected 4 columns");
      try {
        v = std::stod(cell);
      } catch (const std::exception&) {
        throw Error(Errc::ParseError, path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    pairs.push_back({{vals[0], vals[1]}, {vals[2], vals[3]}});
  }
  return pairs;
}

}  // namespace scmt::transfer
