#include "convpow/catalog.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "convpow/error.hpp"
#include "convpow/io.hpp"

namespace convpow::catalog {

namespace {

void require_open_unit(const char* what, double v) {
  if (!(v > 0.0 && v < 1.0)) {
    std::ostringstream msg;
    msg << what << " must lie in (0, 1), got " << v;
    throw ParamOutOfRange(msg.str());
  }
}

double param(const SchemeSpec& spec, const std::string& key) {
  auto it = spec.params.find(key);
  return it == spec.params.end() ? 0.5 : it->second;
}

}  // namespace

Sequence o3(double lambda) {
  require_open_unit("o3: lambda", lambda);
  const double l = lambda;
  return Sequence(-1, std::vector<double>{
                          l * (2.0 - l) * (l - 1.0) / 6.0,
                          (2.0 - l) * (1.0 - l * l) / 2.0,
                          l * (2.0 - l) * (1.0 + l) / 2.0,
                          -l * (1.0 - l * l) / 6.0,
                      });
}

Sequence bernoulli(double p) {
  require_open_unit("bernoulli: p", p);
  return Sequence(0, std::vector<double>{1.0 - p, p});
}

Sequence symmetric_walk() { return Sequence(-1, std::vector<double>{0.5, 0.0, 0.5}); }

Sequence lax_friedrichs(double lambda) {
  require_open_unit("lax_friedrichs: lambda", lambda);
  return Sequence(-1, std::vector<double>{(1.0 - lambda) / 2.0, 0.0, (1.0 + lambda) / 2.0});
}

Sequence from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open sequence file '" + path + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return io::parse_sequence(buf.str());
}

Sequence resolve(const SchemeSpec& spec) {
  if (spec.name == "o3") {
    return o3(param(spec, "lambda"));
  }
  if (spec.name == "bernoulli") {
    return bernoulli(param(spec, "p"));
  }
  if (spec.name == "symmetric-walk") {
    return symmetric_walk();
  }
  if (spec.name == "lax-friedrichs") {
    return lax_friedrichs(param(spec, "lambda"));
  }
  if (spec.name == "file") {
    if (spec.file.empty()) {
      throw InvalidArgument("scheme 'file' needs a file path");
    }
    return from_file(spec.file);
  }
  throw InvalidArgument("unknown scheme '" + spec.name + "'");
}

}  // namespace convpow::catalog
