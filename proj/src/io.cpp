#include "annulus/io.hpp"

#include <fstream>

#include "json.hpp"

namespace annulus {

void save_field(const Field& f, const std::string& path) {
  nlohmann::ordered_json header;
  header["d"] = f.grid.d;
  header["n"] = f.grid.n;
  header["L"] = f.grid.L;
  header["layout"] = "row-major";
  std::ofstream hs(path + ".json");
  if (!hs) throw config_error("save_field: cannot open " + path + ".json");
  hs << header.dump(2) << "\n";

  std::ofstream bs(path, std::ios::binary);
  if (!bs) throw config_error("save_field: cannot open " + path);
  for (const cd& v : f.values) {
    double re = v.real(), im = v.imag();
    bs.write(reinterpret_cast<const char*>(&re), sizeof(double));
    bs.write(reinterpret_cast<const char*>(&im), sizeof(double));
  }
}

Field load_field(const std::string& path) {
  std::ifstream hs(path + ".json");
  if (!hs) throw config_error("load_field: missing header " + path + ".json");
  nlohmann::json header = nlohmann::json::parse(hs);
  GridSpec g = make_grid(header.at("d").get<int>(), header.at("n").get<int>(),
                         header.at("L").get<double>());
  Field f(g);
  std::ifstream bs(path, std::ios::binary);
  if (!bs) throw config_error("load_field: missing data file " + path);
  for (cd& v : f.values) {
    double re = 0.0, im = 0.0;
    bs.read(reinterpret_cast<char*>(&re), sizeof(double));
    bs.read(reinterpret_cast<char*>(&im), sizeof(double));
    if (!bs) throw config_error("load_field: truncated data in " + path);
    v = cd(re, im);
  }
  return f;
}

void field_to_csv(const Field& f, const std::string& path) {
  if (f.grid.d > 2)
    throw config_error("field_to_csv: CSV export supports d <= 2");
  std::ofstream os(path);
  if (!os) throw config_error("field_to_csv: cannot open " + path);
  os.precision(17);
  if (f.grid.d == 1) {
    os << "x,re,im\n";
    for (std::size_t i = 0; i < f.values.size(); ++i)
      os << f.grid.x(static_cast<int>(i)) << "," << f.values[i].real() << ","
         << f.values[i].imag() << "\n";
  } else {
    os << "x,y,re,im\n";
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      auto idx = f.grid.unravel(i);
      os << f.grid.x(idx[0]) << "," << f.grid.x(idx[1]) << ","
         << f.values[i].real() << "," << f.values[i].imag() << "\n";
    }
  }
}

}  // namespace annulus
