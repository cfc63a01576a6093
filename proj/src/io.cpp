#include "sketchls/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sketchls/errors.hpp"

namespace sketchls::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorKind::MissingField, std::string("missing field ") + key);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("bad field ") + key + ": " + e.what());
  }
}

}  // namespace

void write_matrix_market(const fs::path& path, const Matrix& a) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << "%%MatrixMarket matrix array real general\n";
  out << a.rows() << ' ' << a.cols() << '\n';
  for (double v : a.values()) out << format_double(v) << '\n';
  if (!out) fail(ErrorKind::InvalidArgument, "write failed: " + path.string());
}

Matrix read_matrix_market(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::ParseError, "empty file " + path.string());
  std::istringstream banner(lower(line));
  std::string tag, object, format, field_kind, symmetry;
  banner >> tag >> object >> format >> field_kind >> symmetry;
  if (tag != "%%matrixmarket" || object != "matrix" || format != "array" ||
      (field_kind != "real" && field_kind != "integer" && field_kind != "double") ||
      symmetry != "general") {
    fail(ErrorKind::ParseError, "unsupported Matrix Market header in " + path.string());
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream dims(line);
  long long rows = -1;
  long long cols = -1;
  if (!(dims >> rows >> cols) || rows < 0 || cols < 0) {
    fail(ErrorKind::ParseError, "bad size line in " + path.string());
  }
  const auto m = static_cast<std::size_t>(rows);
  const auto n = static_cast<std::size_t>(cols);
  std::vector<double> data;
  data.reserve(m * n);
  std::string token;
  while (in >> token) {
    if (token[0] == '%') {
      std::getline(in, line);
      continue;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) fail(ErrorKind::ParseError, "bad entry '" + token + "'");
    data.push_back(v);
  }
  if (data.size() != m * n) {
    fail(ErrorKind::ParseError, path.string() + ": expected " + std::to_string(m * n) +
                                    " entries, found " + std::to_string(data.size()));
  }
  return Matrix(m, n, std::move(data));
}

void save_problem(const fs::path& dir, const LeastSquaresProblem& p) {
  fs::create_directories(dir);
  write_matrix_market(dir / "A.mtx", p.a);
  write_matrix_market(dir / "b.mtx", Matrix::column_vector(p.b));
  write_matrix_market(dir / "xstar.mtx", Matrix::column_vector(p.x_star));
  const json meta = {{"m", p.a.rows()},   {"n", p.a.cols()}, {"kappa", p.kappa},
                     {"rho", p.rho},      {"seed", p.seed},  {"format_version", kFormatVersion}};
  std::ofstream out(dir / "meta.json");
  out << meta.dump(2) << '\n';
}

LeastSquaresProblem load_problem(const fs::path& dir) {
  const json meta = read_json(dir / "meta.json");
  if (field<int>(meta, "format_version") != kFormatVersion) {
    fail(ErrorKind::ParseError, "unsupported format_version");
  }
  LeastSquaresProblem p;
  p.a = read_matrix_market(dir / "A.mtx");
  const Matrix b = read_matrix_market(dir / "b.mtx");
  const Matrix x = read_matrix_market(dir / "xstar.mtx");
  p.kappa = field<double>(meta, "kappa");
  p.rho = field<double>(meta, "rho");
  p.seed = field<std::uint64_t>(meta, "seed");
  if (field<std::size_t>(meta, "m") != p.a.rows() || field<std::size_t>(meta, "n") != p.a.cols()) {
    fail(ErrorKind::DimensionMismatch, "meta.json size disagrees with A.mtx");
  }
  if (b.cols() != 1 || b.rows() != p.a.rows() || x.cols() != 1 || x.rows() != p.a.cols()) {
    fail(ErrorKind::DimensionMismatch, "b.mtx or xstar.mtx has the wrong shape");
  }
  p.b = b.values();
  p.x_star = x.values();
  return p;
}

std::string sketch_to_json(const SketchOperator& op) {
  const json j = {{"m", op.m},
                  {"d", op.d},
                  {"transform", std::string(to_string(op.transform))},
                  {"seed", op.seed}};
  return j.dump();
}

SketchOperator sketch_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, e.what());
  }
  const auto name = field<std::string>(j, "transform");
  const auto t = parse_transform(name);
  if (!t) fail(ErrorKind::ParseError, "unknown transform " + name);
  return make_sketch(field<std::size_t>(j, "m"), field<std::size_t>(j, "d"), *t,
                     field<std::uint64_t>(j, "seed"));
}

}  // namespace sketchls::io
