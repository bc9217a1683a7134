#include "groupdesign/design_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "groupdesign/errors.hpp"

namespace groupdesign {

namespace {

std::string format_coord(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

bool parse_row(const std::string& line, std::vector<double>& row) {
  row.clear();
  std::istringstream iss(line);
  double x;
  while (iss >> x) row.push_back(x);
  return !iss.fail() || iss.eof();
}

}  // namespace

Design load_point_file(const std::string& path, int dim) {
  if (dim != 3 && dim != 4) throw DomainError("load_point_file: dim must be 3 or 4");
  const auto lines = read_lines(path);
  std::vector<Coord> pts;
  std::vector<double> row;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (lines[ln].find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!parse_row(lines[ln], row))
      throw ParseError(path + ":" + std::to_string(ln + 1) + ": malformed number");
    if (static_cast<int>(row.size()) != dim)
      throw ParseError(path + ":" + std::to_string(ln + 1) + ": expected " + std::to_string(dim) +
                       " coordinates, found " + std::to_string(row.size()));
    double norm = 0.0;
    for (double x : row) norm += x * x;
    norm = std::sqrt(norm);
    if (std::abs(norm - 1.0) > 1e-6)
      throw DataError(path + ":" + std::to_string(ln + 1) + ": row is not a unit vector (norm " +
                      std::to_string(norm) + ")");
    pts.push_back(row);
  }
  if (pts.empty()) throw DataError(path + ": no points");
  const ManifoldId m{dim == 3 ? Manifold::Sphere2 : Manifold::Sphere3, 1};
  return Design::equal_weight(m, std::move(pts));
}

void save_text(const Design& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // LF endings everywhere
  if (!out) throw IoError("cannot write file: " + path);
  for (const auto& p : d.points()) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) out << ' ';
      out << format_coord(p[i]);
    }
    out << '\n';
  }
}

Design load_text(const std::string& path, const ManifoldId& manifold) {
  const auto lines = read_lines(path);
  const std::size_t want = coord_size(manifold);
  std::vector<Coord> pts;
  std::vector<double> row;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (lines[ln].find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!parse_row(lines[ln], row))
      throw ParseError(path + ":" + std::to_string(ln + 1) + ": malformed number");
    if (row.size() != want)
      throw ParseError(path + ":" + std::to_string(ln + 1) + ": expected " + std::to_string(want) +
                       " coordinates on " + to_string(manifold));
    pts.push_back(row);
  }
  if (pts.empty()) throw DataError(path + ": no points");
  return Design::equal_weight(manifold, std::move(pts));
}

std::string to_json_string(const Design& d) {
  nlohmann::json j;
  j["manifold"] = to_string(d.manifold());
  j["points"] = d.points();
  j["weights"] = d.weights();
  return j.dump(2) + "\n";
}

Design design_from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("design JSON: ") + e.what());
  }
  try {
    const ManifoldId m = manifold_from_string(j.at("manifold").get<std::string>());
    auto pts = j.at("points").get<std::vector<Coord>>();
    std::vector<double> w;
    if (j.contains("weights"))
      w = j.at("weights").get<std::vector<double>>();
    else
      w.assign(pts.size(), 1.0 / static_cast<double>(pts.size()));
    return Design(m, std::move(pts), std::move(w));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("design JSON: ") + e.what());
  }
}

void save_json(const Design& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << to_json_string(d);
}

Design load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return design_from_json_string(ss.str());
}

Design load_design(const std::string& path, const ManifoldId& manifold) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return load_json(path);
  return load_text(path, manifold);
}

}  // namespace groupdesign
