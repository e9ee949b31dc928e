#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "callias/matrixfn.hpp"
#include "callias/potential.hpp"

namespace callias {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_real(const std::string& s) {
  std::size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw DomainError("bad number: " + s);
  return v;
}

cplx parse_entry(std::string t) {
  t = trim(t);
  if (t.empty()) throw DomainError("empty matrix entry");
  if (t.front() == '(') {
    std::istringstream is(t);
    cplx z;
    is >> z;
    if (is.fail()) throw DomainError("bad complex entry: " + t);
    return z;
  }
  if (t.back() != 'i') return parse_real(t);
  const std::string body = t.substr(0, t.size() - 1);
  // split at the last sign that is not an exponent sign and not leading
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  auto imag = [](const std::string& s) -> double {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (cut == std::string::npos) return {0.0, imag(body)};
  return {parse_real(body.substr(0, cut)), imag(body.substr(cut))};
}

}  // namespace

CMat parse_matrix(const std::string& s) {
  std::vector<std::vector<cplx>> rows;
  std::stringstream ss(s);
  std::string row;
  while (std::getline(ss, row, ';')) {
    row = trim(row);
    if (row.empty()) continue;
    std::vector<cplx> r;
    std::string tok;
    int depth = 0;
    auto flush = [&] {
      if (!trim(tok).empty()) r.push_back(parse_entry(tok));
      tok.clear();
    };
    for (char ch : row) {
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (depth == 0 && (ch == ' ' || ch == '\t' || ch == ',')) {
        flush();
        continue;
      }
      tok += ch;
    }
    flush();
    rows.push_back(r);
  }
  if (rows.empty()) throw DomainError("empty matrix literal");
  const std::size_t m = rows.size();
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) throw DomainError("ragged matrix literal");
  CMat out(m, rows[0].size());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < rows[0].size(); ++j) out(i, j) = rows[i][j];
  return out;
}

namespace {

bool looks_binary(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  char buf[64];
  f.read(buf, sizeof buf);
  const auto got = f.gcount();
  for (std::streamsize i = 0; i < got; ++i)
    if (buf[i] == 0) return true;
  return false;
}

Potential load_text(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open potential file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(f, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError("potential file: expected key = value: " + line);
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  if (!kv.count("name")) throw DomainError("potential file: missing name");
  const std::string name = kv["name"];
  int n = kv.count("n") ? static_cast<int>(parse_real(kv["n"])) : 3;
  Potential p;
  if (name == "matrix") {
    if (!kv.count("const") && !kv.count("coef1")) throw DomainError("potential file: matrix needs const or coef1");
    CMat a0 = kv.count("const") ? parse_matrix(kv["const"]) : CMat();
    std::vector<CMat> coef;
    for (int j = 1; j <= n; ++j) {
      const std::string key = "coef" + std::to_string(j);
      coef.push_back(kv.count(key) ? parse_matrix(kv[key]) : CMat());
    }
    Eigen::Index d = a0.size() ? a0.rows() : 0;
    for (const auto& c : coef)
      if (c.size()) d = c.rows();
    if (d == 0) throw DomainError("potential file: cannot infer matrix size");
    if (!a0.size()) a0 = CMat::Zero(d, d);
    for (auto& c : coef)
      if (!c.size()) c = CMat::Zero(d, d);
    p = affine(n, a0, coef, "file:" + path);
  } else {
    Params params;
    if (kv.count("params")) {
      std::stringstream ss(kv["params"]);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw DomainError("potential file: bad param " + tok);
        params[trim(tok.substr(0, eq))] = trim(tok.substr(eq + 1));
      }
    }
    if (kv.count("n")) params["n"] = kv["n"];
    p = builtin(name, params);
  }
  if (kv.count("d") && static_cast<int>(parse_real(kv["d"])) != p.d)
    throw DomainError("potential file: d does not match the potential");
  if (kv.count("gap_c")) p.gap_c = parse_real(kv["gap_c"]);
  if (kv.count("gap_R")) p.gap_R = parse_real(kv["gap_R"]);
  return p;
}

template <class T>
void put(std::ostream& o, T v) {
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  o.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& i) {
  T v;
  i.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!i) throw DomainError("grid file truncated");
  return v;
}

}  // namespace

void write_grid_file(const std::string& path, const GridSamples& g) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write grid file: " + path);
  put<std::uint64_t>(f, g.n);
  put<std::uint64_t>(f, g.d);
  put<std::uint64_t>(f, g.points.size());
  for (std::size_t s = 0; s < g.points.size(); ++s) {
    for (int i = 0; i < g.n; ++i) put<double>(f, g.points[s](i));
    for (int a = 0; a < g.d; ++a)
      for (int b = 0; b < g.d; ++b) {
        put<double>(f, g.values[s](a, b).real());
        put<double>(f, g.values[s](a, b).imag());
      }
  }
}

GridSamples read_grid_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot open grid file: " + path);
  GridSamples g;
  g.n = static_cast<int>(get<std::uint64_t>(f));
  g.d = static_cast<int>(get<std::uint64_t>(f));
  const auto count = get<std::uint64_t>(f);
  if (g.n < 1 || g.n > 16 || g.d < 1 || g.d > 4096) throw DomainError("grid file: implausible header");
  for (std::uint64_t s = 0; s < count; ++s) {
    Vec x(g.n);
    for (int i = 0; i < g.n; ++i) x(i) = get<double>(f);
    CMat m(g.d, g.d);
    for (int a = 0; a < g.d; ++a)
      for (int b = 0; b < g.d; ++b) {
        const double re = get<double>(f);
        const double im = get<double>(f);
        m(a, b) = cplx(re, im);
      }
    g.points.push_back(x);
    g.values.push_back(m);
  }
  return g;
}

Potential grid_potential(const GridSamples& g, const std::string& label) {
  const int n = g.n;
  std::vector<std::vector<double>> axes(n);
  for (const auto& x : g.points)
    for (int i = 0; i < n; ++i) axes[i].push_back(x(i));
  std::size_t total = 1;
  for (auto& a : axes) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end(), [](double u, double v) { return std::abs(u - v) <= 1e-12 * (1 + std::abs(u)); }),
            a.end());
    if (a.size() < 2) throw DomainError("grid potential: each axis needs >= 2 distinct coordinates");
    total *= a.size();
  }
  if (total != g.points.size()) throw DomainError("grid potential: samples do not form a tensor grid");
  auto table = std::make_shared<std::vector<CMat>>(total);
  auto locate = [axes](int i, double v) {
    auto it = std::lower_bound(axes[i].begin(), axes[i].end(), v - 1e-12 * (1 + std::abs(v)));
    return static_cast<std::size_t>(it - axes[i].begin());
  };
  for (std::size_t s = 0; s < g.points.size(); ++s) {
    std::size_t flat = 0;
    for (int i = 0; i < n; ++i) flat = flat * axes[i].size() + locate(i, g.points[s](i));
    (*table)[flat] = g.values[s];
  }
  Potential p;
  p.n = n;
  p.d = g.d;
  p.eval = [axes, table, n](const Vec& x) {
    std::vector<std::size_t> lo(n);
    std::vector<double> frac(n);
    for (int i = 0; i < n; ++i) {
      const auto& a = axes[i];
      const double v = std::clamp(x(i), a.front(), a.back());
      std::size_t k = std::upper_bound(a.begin(), a.end(), v) - a.begin();
      k = std::clamp<std::size_t>(k, 1, a.size() - 1) - 1;
      lo[i] = k;
      frac[i] = (v - a[k]) / (a[k + 1] - a[k]);
    }
    CMat out = CMat::Zero((*table)[0].rows(), (*table)[0].cols());
    for (int corner = 0; corner < (1 << n); ++corner) {
      double w = 1.0;
      std::size_t flat = 0;
      for (int i = 0; i < n; ++i) {
        const int bit = (corner >> i) & 1;
        w *= bit ? frac[i] : 1 - frac[i];
        flat = flat * axes[i].size() + lo[i] + bit;
      }
      if (w != 0.0) out += w * (*table)[flat];
    }
    return out;
  };
  double c = 1e300;
  for (const auto& m : g.values) {
    require_hermitian(m, "grid potential");
    c = std::min(c, spectral(m).eigenvalues.cwiseAbs().minCoeff());
  }
  p.gap_R = 0.0;
  p.gap_c = c;
  p.label = label;
  return p;
}

Potential load_potential_file(const std::string& path) {
  if (looks_binary(path)) return grid_potential(read_grid_file(path), "grid:" + path);
  return load_text(path);
}

}  // namespace callias
