#include "certopt/benchmarks.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace certopt {
namespace {

Box uniform_domain(int n, double lo, double hi) {
  Box b(n);
  for (int i = 0; i < n; ++i) b[i] = Interval(lo, hi);
  return b;
}

Expr michalewicz_objective(int n) {
  std::vector<Expr> terms;
  terms.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Expr x = Expr::variable(i);
    Expr angle = (static_cast<double>(i + 1) * pow(x, 2)) / Expr::pi();
    terms.push_back(sin(x) * pow(sin(angle), 20));
  }
  return -sum(terms);
}

Expr sine_envelope_objective(int n) {
  std::vector<Expr> terms;
  for (int i = 0; i + 1 < n; ++i) {
    Expr xi = Expr::variable(i);
    Expr xn = Expr::variable(i + 1);
    Expr radius2 = pow(xn, 2) + pow(xi, 2);
    Expr num = pow(sin(sqrt(radius2) - 0.5), 2);
    Expr den = pow(0.001 * radius2 + 1.0, 2);
    terms.push_back(0.5 + num / den);
  }
  return -sum(terms);
}

Expr shekel_objective(int n, const ShekelData& data) {
  std::vector<Expr> terms;
  for (int i = 0; i < 30; ++i) {
    std::vector<Expr> dist;
    for (int j = 0; j < n; ++j) {
      dist.push_back(pow(Expr::variable(j) - data.centers(i, j), 2));
    }
    terms.push_back(1.0 / (data.offsets(i) + sum(dist)));
  }
  return -sum(terms);
}

Expr egg_holder_objective(int n) {
  std::vector<Expr> terms;
  for (int i = 0; i + 1 < n; ++i) {
    Expr xi = Expr::variable(i);
    Expr xn = Expr::variable(i + 1);
    Expr t1 = (xn + 47.0) * sin(sqrt(abs(xn + 47.0 + xi / 2.0)));
    Expr t2 = xi * sin(sqrt(abs(xi - (xn + 47.0))));
    terms.push_back(t1 + t2);
  }
  return -sum(terms);
}

Expr rana_alpha(int i) {  // sqrt(|x_{i+1} + x_i + 1|)
  return sqrt(abs(Expr::variable(i + 1) + Expr::variable(i) + 1.0));
}

Expr rana_beta(int i) {  // sqrt(|x_{i+1} - x_i + 1|)
  return sqrt(abs(Expr::variable(i + 1) - Expr::variable(i) + 1.0));
}

Expr rana_objective(int n, RanaSyntax syntax) {
  std::vector<Expr> terms;
  for (int i = 0; i + 1 < n; ++i) {
    Expr xi = Expr::variable(i);
    Expr xn1 = 1.0 + Expr::variable(i + 1);
    if (syntax == RanaSyntax::Original) {
      Expr t1 = xi * cos(rana_alpha(i)) * sin(rana_beta(i));
      Expr t2 = xn1 * sin(rana_alpha(i)) * cos(rana_beta(i));
      terms.push_back(t1 + t2);
    } else {
      // cos p sin q = (sin(p+q) - sin(p-q)) / 2 on both products, then the
      // sin(alpha+beta) and sin(alpha-beta) coefficients collected. Near the
      // diagonal valley x_i ~ x_{i+1} the second coefficient is ~1/2 instead
      // of ~|x_i|, which is what sharpens the enclosure.
      Expr t1 = 0.5 * (Expr::variable(i + 1) + Expr::variable(i) + 1.0) *
                sin(rana_alpha(i) + rana_beta(i));
      Expr t2 = 0.5 * (Expr::variable(i + 1) - Expr::variable(i) + 1.0) *
                sin(rana_alpha(i) - rana_beta(i));
      terms.push_back(t1 + t2);
    }
  }
  return sum(terms);
}

Expr keane_objective(int n) {
  std::vector<Expr> quads, squares, weighted;
  for (int i = 0; i < n; ++i) {
    quads.push_back(pow(cos(Expr::variable(i)), 4));
    squares.push_back(pow(cos(Expr::variable(i)), 2));
    weighted.push_back(static_cast<double>(i + 1) * pow(Expr::variable(i), 2));
  }
  Expr num = abs(sum(quads) - 2.0 * product(squares));
  Expr den = sqrt(sum(weighted));
  return -(num / den);
}

std::vector<Constraint> keane_constraints(int n) {
  std::vector<Expr> xs;
  for (int i = 0; i < n; ++i) xs.push_back(Expr::variable(i));
  Constraint g1{0.75 - product(xs)};
  Constraint g2{sum(xs) - 7.5 * static_cast<double>(n)};
  return {g1, g2};
}

std::string data_path(const MakeOptions& options, const char* file) {
  std::string dir = options.data_dir.empty() ? default_data_dir()
                                             : options.data_dir;
  return dir + "/" + file;
}

void attach_reference(BenchmarkProblem& problem, const MakeOptions& options) {
  if (!options.attach_reference) return;
  std::string path = data_path(options, "reference_minima.csv");
  std::ifstream probe(path);
  if (!probe.good()) return;
  auto records = load_reference_minima(path);
  if (auto rec = find_reference(records, problem.name, problem.dimension)) {
    problem.known_minimum = ReferenceMinimum{rec->value, rec->solution};
  }
}

}  // namespace

BenchmarkProblem make_problem(Benchmark which, int n,
                              const MakeOptions& options) {
  if (n < 2) {
    throw std::invalid_argument(
        "make_problem: all test functions require n >= 2");
  }
  BenchmarkProblem p;
  p.dimension = n;
  p.name = benchmark_name(which);
  switch (which) {
    case Benchmark::Michalewicz:
      p.objective = michalewicz_objective(n);
      p.domain = uniform_domain(n, 0.0, pi_interval().hi);
      break;
    case Benchmark::SineEnvelope:
      p.objective = sine_envelope_objective(n);
      p.domain = uniform_domain(n, -100.0, 100.0);
      break;
    case Benchmark::Shekel: {
      if (n > 10) {
        throw std::invalid_argument("make_problem: Shekel data has 10 columns");
      }
      ShekelData data = load_shekel_data(data_path(options, "shekel_foxholes.txt"));
      p.objective = shekel_objective(n, data);
      p.domain = uniform_domain(n, 0.0, 10.0);
      break;
    }
    case Benchmark::EggHolder:
      p.objective = egg_holder_objective(n);
      p.domain = uniform_domain(n, -512.0, 512.0);
      break;
    case Benchmark::Rana:
      p.objective = rana_objective(n, options.rana_syntax);
      p.domain = uniform_domain(n, -512.0, 512.0);
      break;
    case Benchmark::Keane:
      p.objective = keane_objective(n);
      p.constraints = keane_constraints(n);
      p.domain = uniform_domain(n, 0.0, 10.0);
      break;
  }
  attach_reference(p, options);
  return p;
}

BenchmarkProblem make_problem(std::string_view name, int n,
                              const MakeOptions& options) {
  auto which = parse_benchmark(name);
  if (!which) {
    throw std::invalid_argument("make_problem: unknown function '" +
                                std::string(name) + "'");
  }
  return make_problem(*which, n, options);
}

std::optional<Benchmark> parse_benchmark(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (c == '_' || c == '-' || c == ' ') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (key == "michalewicz") return Benchmark::Michalewicz;
  if (key == "sineenvelope" || key == "sine") return Benchmark::SineEnvelope;
  if (key == "shekel") return Benchmark::Shekel;
  if (key == "eggholder") return Benchmark::EggHolder;
  if (key == "rana") return Benchmark::Rana;
  if (key == "keane") return Benchmark::Keane;
  return std::nullopt;
}

std::string_view benchmark_name(Benchmark which) {
  switch (which) {
    case Benchmark::Michalewicz:
      return "michalewicz";
    case Benchmark::SineEnvelope:
      return "sine_envelope";
    case Benchmark::Shekel:
      return "shekel";
    case Benchmark::EggHolder:
      return "egg_holder";
    case Benchmark::Rana:
      return "rana";
    case Benchmark::Keane:
      return "keane";
  }
  return "?";
}

std::optional<double> putative_minimum(Benchmark which, int n) {
  double dn = static_cast<double>(n);
  switch (which) {
    case Benchmark::Michalewicz:
      return -0.99864 * dn + 0.30271;
    case Benchmark::SineEnvelope:
      return -1.49150 * dn + 1.49150;
    case Benchmark::EggHolder:
      return -915.61991 * dn + 862.10466;
    case Benchmark::Rana:
      return -511.70430 * dn + 511.68714;
    default:
      return std::nullopt;
  }
}

ShekelData load_shekel_data(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) {
    throw std::runtime_error("Shekel data file not found: " + path);
  }
  ShekelData data;
  int row = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (row >= 30) {
      throw std::runtime_error("Shekel data: more than 30 rows in " + path);
    }
    std::istringstream fields(line);
    for (int j = 0; j < 10; ++j) {
      if (!(fields >> data.centers(row, j))) {
        throw std::runtime_error("Shekel data: short row " +
                                 std::to_string(row + 1) + " in " + path);
      }
    }
    if (!(fields >> data.offsets(row))) {
      throw std::runtime_error("Shekel data: missing offset in row " +
                               std::to_string(row + 1) + " of " + path);
    }
    if (!(data.offsets(row) > 0)) {
      throw std::runtime_error("Shekel data: offsets must be positive");
    }
    ++row;
  }
  if (row != 30) {
    throw std::runtime_error("Shekel data: expected 30 rows, got " +
                             std::to_string(row));
  }
  return data;
}

std::vector<ReferenceRecord> load_reference_minima(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) {
    throw std::runtime_error("reference minima file not found: " + path);
  }
  std::vector<ReferenceRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("function,", 0) == 0) {
      continue;
    }
    std::istringstream fields(line);
    ReferenceRecord rec;
    std::string n_str, value_str, solution_str;
    if (!std::getline(fields, rec.function, ',') ||
        !std::getline(fields, n_str, ',') ||
        !std::getline(fields, value_str, ',')) {
      throw std::runtime_error("reference minima: malformed line: " + line);
    }
    std::getline(fields, solution_str);  // optional field
    rec.n = std::stoi(n_str);
    rec.value = std::stod(value_str);
    std::istringstream coords(solution_str);
    std::vector<double> xs;
    double x;
    while (coords >> x) xs.push_back(x);
    if (!xs.empty()) {
      rec.solution = Eigen::Map<const Vector>(
          xs.data(), static_cast<Eigen::Index>(xs.size()));
    }
    // The solution may be absent when only the value is on record.
    if (rec.n < 1 || (rec.solution.size() != 0 && rec.solution.size() != rec.n)) {
      throw std::runtime_error("reference minima: bad solution arity: " + line);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::optional<ReferenceRecord> find_reference(
    const std::vector<ReferenceRecord>& records, std::string_view function,
    int n) {
  for (const ReferenceRecord& r : records) {
    if (r.n == n && r.function == function) return r;
  }
  return std::nullopt;
}

std::string default_data_dir() {
  if (const char* env = std::getenv("CERTOPT_DATA_DIR"); env && *env) {
    return env;
  }
#ifdef CERTOPT_DEFAULT_DATA_DIR
  return CERTOPT_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

}  // namespace certopt
