#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixtures {

struct Record {
  std::vector<double> in;
  std::vector<double> out;
  double tol = 0.0;
};

inline std::vector<double> numbers(const std::string& field) {
  std::vector<double> v;
  std::istringstream ss(field);
  double x;
  while (ss >> x) v.push_back(x);
  return v;
}

inline const std::map<std::string, Record>& all() {
  static const std::map<std::string, Record> records = [] {
    std::map<std::string, Record> m;
    std::ifstream in(SADDLE_FIXTURES_PATH);
    if (!in) throw std::runtime_error("missing fixtures file " SADDLE_FIXTURES_PATH);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> f;
      std::stringstream ss(line);
      std::string part;
      while (std::getline(ss, part, ',')) f.push_back(part);
      if (f.size() != 4) throw std::runtime_error("bad fixture line: " + line);
      m[f[0]] = Record{numbers(f[1]), numbers(f[2]), std::stod(f[3])};
    }
    return m;
  }();
  return records;
}

inline const Record& get(const std::string& name) {
  auto it = all().find(name);
  if (it == all().end()) throw std::runtime_error("no fixture " + name);
  return it->second;
}

}  // namespace fixtures
