#include "holsh/cocycle/cocycle_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "holsh/common/error.hpp"

namespace holsh::cocycle {

namespace {

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

Cocycle read_cocycle(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw PreconditionError("cocycle file is empty");
  std::istringstream header(line);
  long m = 0;
  long k0 = 0;
  long k1 = 0;
  double R = 0.0;
  if (!(header >> m >> k0 >> k1 >> R) || m < 1 || k1 < k0) {
    throw PreconditionError("bad cocycle header, expected \"m k0 k1 R\"");
  }
  std::vector<MatrixXd> mats;
  for (long k = k0; k <= k1; ++k) {
    if (!next_content_line(in, line)) {
      throw PreconditionError("cocycle file ends before index " + std::to_string(k));
    }
    std::istringstream row(line);
    MatrixXd a(m, m);
    for (long i = 0; i < m; ++i) {
      for (long j = 0; j < m; ++j) {
        if (!(row >> a(i, j))) {
          throw PreconditionError("cocycle matrix at index " + std::to_string(k) + " is incomplete");
        }
      }
    }
    mats.push_back(std::move(a));
  }
  return Cocycle(k0, std::move(mats), R);
}

void write_cocycle(std::ostream& out, const Cocycle& c) {
  out << std::setprecision(17);
  out << c.dim() << ' ' << c.k0() << ' ' << c.k1() << ' ' << c.R() << '\n';
  for (const MatrixXd& a : c.matrices()) {
    for (long i = 0; i < a.rows(); ++i) {
      for (long j = 0; j < a.cols(); ++j) {
        if (i != 0 || j != 0) out << ' ';
        out << a(i, j);
      }
    }
    out << '\n';
  }
}

Cocycle load_cocycle(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open cocycle file " + path.string());
  return read_cocycle(in);
}

void save_cocycle(const std::filesystem::path& path, const Cocycle& c) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_cocycle(out, c);
  if (!out) throw Error("cannot write " + path.string());
}

}  // namespace holsh::cocycle
