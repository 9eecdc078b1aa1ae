#include <fmt/format.h>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "htee/network.hpp"

namespace htee {

namespace {

void write_row(std::ostream& os, std::span<const double> row) {
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (j) os << ' ';
    os << fmt::format("{:.16e}", row[j]);
  }
  os << '\n';
}

std::vector<double> read_row(std::istream& is, std::size_t n, const char* what) {
  std::string line;
  bool found = false;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      found = true;
      break;
    }
  }
  if (!found) throw std::runtime_error(std::string("read_network: missing ") + what + " row");
  std::istringstream ls(line);
  std::vector<double> row;
  double v;
  while (ls >> v) row.push_back(v);
  if (!ls.eof()) throw std::runtime_error(std::string("read_network: malformed ") + what + " row");
  if (row.size() != n) throw std::runtime_error(std::string("read_network: wrong length of ") + what + " row");
  return row;
}

}  // namespace

void write_network(std::ostream& os, const InterferenceNetwork& net) {
  const std::size_t n = net.size();
  os << n << ' ' << fmt::format("{:.16e}", net.bandwidth()) << '\n';
  write_row(os, net.alpha());
  write_row(os, net.sigma2());
  for (std::size_t i = 0; i < n; ++i) write_row(os, net.beta_row_major().subspan(i * n, n));
}

InterferenceNetwork read_network(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("read_network: empty input");
  std::istringstream hs(line);
  long long n = 0;
  double bandwidth = 0.0;
  if (!(hs >> n >> bandwidth) || n <= 0) throw std::runtime_error("read_network: malformed header");

  const auto dim = static_cast<std::size_t>(n);
  auto alpha = read_row(is, dim, "alpha");
  auto sigma2 = read_row(is, dim, "sigma2");
  std::vector<double> beta;
  beta.reserve(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    auto row = read_row(is, dim, "beta");
    beta.insert(beta.end(), row.begin(), row.end());
  }
  return InterferenceNetwork(std::move(alpha), std::move(beta), std::move(sigma2), bandwidth);
}

void save_network(const std::string& path, const InterferenceNetwork& net) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_network: cannot open " + path);
  write_network(os, net);
  if (!os) throw std::runtime_error("save_network: write failed for " + path);
}

InterferenceNetwork load_network(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_network: cannot open " + path);
  return read_network(is);
}

}  // namespace htee
