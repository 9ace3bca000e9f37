#include "curvsym/metric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "curvsym/util.hpp"

namespace curvsym {

MetricField::MetricField(std::string name, int dim, DomainBox box,
                         std::vector<std::string> coord_names,
                         std::vector<std::string> param_names,
                         std::vector<double> param_values, std::vector<ExprPtr> entries)
    : name_(std::move(name)),
      n_(dim),
      box_(std::move(box)),
      coords_(std::move(coord_names)),
      params_(std::move(param_names)),
      param_values_(std::move(param_values)),
      entries_(std::move(entries)) {
  if (n_ < 1) throw std::invalid_argument("metric dimension must be >= 1");
  if (int(coords_.size()) != n_) throw std::invalid_argument("coordinate count != dim");
  if (params_.size() != param_values_.size())
    throw std::invalid_argument("parameter name/value count mismatch");
  if (entries_.size() != size_t(n_) * (n_ + 1) / 2)
    throw std::invalid_argument("entry count != n(n+1)/2");
  for (int i = 0; i < n_; ++i)
    if (!entry(i, i)) throw std::invalid_argument("missing diagonal entry g " +
                                                  std::to_string(i) + " " + std::to_string(i));
  if (box_.lo.size() != n_ || box_.hi.size() != n_)
    throw std::invalid_argument("domain box dimension mismatch");
  for (int i = 0; i < n_; ++i)
    if (!(box_.lo[i] < box_.hi[i])) throw std::invalid_argument("empty domain box");
}

size_t MetricField::tri_index(int i, int j) const {
  if (i > j) std::swap(i, j);
  // row-major packed upper triangle
  return size_t(i) * n_ - size_t(i) * (i - 1) / 2 + (j - i);
}

const ExprPtr& MetricField::entry(int i, int j) const { return entries_[tri_index(i, j)]; }

Eigen::MatrixXd MetricField::value(const ChartPoint& p) const {
  std::vector<double> coords(p.data(), p.data() + p.size());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      const ExprPtr& e = entry(i, j);
      if (!e) continue;
      double v = eval_expr<double>(*e, coords, param_values_);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

void MetricField::value_and_grad(const ChartPoint& p, Eigen::MatrixXd& g,
                                 std::vector<Eigen::MatrixXd>& dg) const {
  std::vector<Jet1> coords;
  coords.reserve(n_);
  for (int i = 0; i < n_; ++i) coords.push_back(Jet1::variable(p[i], n_, i));
  g = Eigen::MatrixXd::Zero(n_, n_);
  dg.assign(n_, Eigen::MatrixXd::Zero(n_, n_));
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      const ExprPtr& e = entry(i, j);
      if (!e) continue;
      Jet1 v = eval_expr<Jet1>(*e, coords, param_values_);
      g(i, j) = g(j, i) = v.v;
      for (int a = 0; a < n_; ++a) {
        dg[a](i, j) = v.d[a];
        dg[a](j, i) = v.d[a];
      }
    }
  }
}

MetricJets MetricField::jets(const ChartPoint& p) const {
  std::vector<Jet2> coords;
  coords.reserve(n_);
  for (int i = 0; i < n_; ++i) coords.push_back(Jet2::variable(p[i], n_, i));
  MetricJets out;
  out.g = Eigen::MatrixXd::Zero(n_, n_);
  out.dg.assign(n_, Eigen::MatrixXd::Zero(n_, n_));
  out.d2g.assign(n_, std::vector<Eigen::MatrixXd>(n_, Eigen::MatrixXd::Zero(n_, n_)));
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      const ExprPtr& e = entry(i, j);
      if (!e) continue;
      Jet2 v = eval_expr<Jet2>(*e, coords, param_values_);
      if (!std::isfinite(v.v)) throw EvalError("non-finite metric entry");
      out.g(i, j) = out.g(j, i) = v.v;
      for (int a = 0; a < n_; ++a) {
        if (!std::isfinite(v.d[a])) throw EvalError("non-finite metric derivative");
        out.dg[a](i, j) = out.dg[a](j, i) = v.d[a];
        for (int b = 0; b < n_; ++b) {
          if (!std::isfinite(v.h(a, b))) throw EvalError("non-finite metric second derivative");
          out.d2g[a][b](i, j) = out.d2g[a][b](j, i) = v.h(a, b);
        }
      }
    }
  }
  return out;
}

MetricField MetricField::scaled(double k, const std::string& new_name) const {
  if (!(k > 0.0)) throw std::invalid_argument("metric scale factor must be positive");
  std::vector<ExprPtr> scaled_entries;
  scaled_entries.reserve(entries_.size());
  for (const ExprPtr& e : entries_)
    scaled_entries.push_back(e ? e_mul(e_num(k), e) : nullptr);
  return MetricField(new_name, n_, box_, coords_, params_, param_values_,
                     std::move(scaled_entries));
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> default_coords(int n) {
  static const char* names3[] = {"x", "y", "z"};
  std::vector<std::string> out;
  if (n <= 3) {
    for (int i = 0; i < n; ++i) out.push_back(names3[i]);
  } else {
    for (int i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
  }
  return out;
}

DomainBox cube_box(int n, double half) {
  DomainBox b;
  b.lo = Eigen::VectorXd::Constant(n, -half);
  b.hi = Eigen::VectorXd::Constant(n, half);
  return b;
}

size_t tri_count(int n) { return size_t(n) * (n + 1) / 2; }

size_t tri_at(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return size_t(i) * n - size_t(i) * (i - 1) / 2 + (j - i);
}

double need_param(const std::map<std::string, double>& params, const std::string& key,
                  const std::string& metric) {
  auto it = params.find(key);
  if (it == params.end())
    throw std::invalid_argument("catalog metric '" + metric + "' needs parameter '" + key + "'");
  if (!std::isfinite(it->second))
    throw std::invalid_argument("parameter '" + key + "' must be finite");
  return it->second;
}

MetricField make_euclidean(int n) {
  std::vector<ExprPtr> entries(tri_count(n));
  for (int i = 0; i < n; ++i) entries[tri_at(n, i, i)] = e_num(1.0);
  return MetricField("euclidean", n, cube_box(n, 1.0), default_coords(n), {}, {},
                     std::move(entries));
}

MetricField make_space_form(int n, double c) {
  // ds^2 = {1 + (c/4) sum_j (x^j)^2}^-2 sum_i (dx^i)^2
  // Box keeps the conformal factor base >= 1/2 away from the singular locus.
  double half;
  if (c < 0.0)
    half = std::sqrt(2.0 / (n * -c));
  else if (c == 0.0)
    half = 1.0;
  else
    half = 2.5;  // contains the closed r=2 equator geodesic of the c=1 model
  auto coords = default_coords(n);
  ExprPtr sumsq = e_pow(e_coord(0), 2);
  for (int i = 1; i < n; ++i) sumsq = e_add(sumsq, e_pow(e_coord(i), 2));
  ExprPtr base = e_add(e_num(1.0), e_mul(e_div(e_param(0), e_num(4.0)), sumsq));
  ExprPtr factor = e_pow(base, -2);
  std::vector<ExprPtr> entries(tri_count(n));
  for (int i = 0; i < n; ++i) entries[tri_at(n, i, i)] = factor;
  return MetricField("space_form", n, cube_box(n, half), coords, {"c"}, {c},
                     std::move(entries));
}

MetricField make_thurston(double m, double l) {
  // ds^2 = (dx^2 + dy^2)/F^2 + [dz + (l/2)(y dx - x dy)/F]^2,  F = 1 + m(x^2+y^2)
  double half_xy = (m < 0.0) ? std::min(1.0, 0.5 / std::sqrt(-m)) : 1.0;
  DomainBox box;
  box.lo = Eigen::Vector3d(-half_xy, -half_xy, -1.0);
  box.hi = Eigen::Vector3d(half_xy, half_xy, 1.0);

  ExprPtr x = e_coord(0), y = e_coord(1);
  ExprPtr F = e_add(e_num(1.0), e_mul(e_param(0), e_add(e_pow(x, 2), e_pow(y, 2))));
  ExprPtr A = e_div(e_mul(e_mul(e_param(1), e_num(0.5)), y), F);         // dx coefficient
  ExprPtr B = e_neg(e_div(e_mul(e_mul(e_param(1), e_num(0.5)), x), F));  // dy coefficient
  ExprPtr conf = e_pow(F, -2);

  std::vector<ExprPtr> entries(tri_count(3));
  entries[tri_at(3, 0, 0)] = e_add(conf, e_pow(A, 2));
  entries[tri_at(3, 1, 1)] = e_add(conf, e_pow(B, 2));
  entries[tri_at(3, 2, 2)] = e_num(1.0);
  entries[tri_at(3, 0, 1)] = e_mul(A, B);
  entries[tri_at(3, 0, 2)] = A;
  entries[tri_at(3, 1, 2)] = B;
  return MetricField("thurston", 3, box, default_coords(3), {"m", "l"}, {m, l},
                     std::move(entries));
}

MetricField make_sol() {
  // ds^2 = e^{2z} dx^2 + e^{-2z} dy^2 + dz^2 on |z| <= 2 (wider x,y range:
  // the components do not depend on x, y).
  DomainBox box;
  box.lo = Eigen::Vector3d(-3.0, -3.0, -2.0);
  box.hi = Eigen::Vector3d(3.0, 3.0, 2.0);
  ExprPtr z = e_coord(2);
  std::vector<ExprPtr> entries(tri_count(3));
  entries[tri_at(3, 0, 0)] = e_call(Func1::Exp, e_mul(e_num(2.0), z));
  entries[tri_at(3, 1, 1)] = e_call(Func1::Exp, e_mul(e_num(-2.0), z));
  entries[tri_at(3, 2, 2)] = e_num(1.0);
  return MetricField("sol", 3, box, default_coords(3), {}, {}, std::move(entries));
}

}  // namespace

MetricField catalog_metric(const std::string& name,
                           const std::map<std::string, double>& params) {
  if (name == "euclidean") {
    double nd = params.count("n") ? params.at("n") : 3.0;
    int n = int(nd);
    if (n < 2 || double(n) != nd) throw std::invalid_argument("euclidean needs integer n >= 2");
    return make_euclidean(n);
  }
  if (name == "space_form") {
    double nd = params.count("n") ? params.at("n") : 3.0;
    int n = int(nd);
    if (n < 2 || double(n) != nd) throw std::invalid_argument("space_form needs integer n >= 2");
    return make_space_form(n, need_param(params, "c", name));
  }
  if (name == "thurston")
    return make_thurston(need_param(params, "m", name), need_param(params, "l", name));
  if (name == "sol") return make_sol();
  if (name == "product_s2xe1") {
    MetricField f = make_thurston(0.25, 0.0);
    return MetricField("product_s2xe1", 3, f.domain(), f.coord_names(), f.param_names(),
                       f.param_values(),
                       {f.entry(0, 0), f.entry(0, 1), f.entry(0, 2), f.entry(1, 1),
                        f.entry(1, 2), f.entry(2, 2)});
  }
  if (name == "product_h2xe1") {
    MetricField f = make_thurston(-0.25, 0.0);
    return MetricField("product_h2xe1", 3, f.domain(), f.coord_names(), f.param_names(),
                       f.param_values(),
                       {f.entry(0, 0), f.entry(0, 1), f.entry(0, 2), f.entry(1, 1),
                        f.entry(1, 2), f.entry(2, 2)});
  }
  throw std::invalid_argument("unknown catalog metric '" + name + "'");
}

MetricField catalog_metric_from_string(const std::string& text, std::optional<int> dim_override) {
  std::string name = text;
  std::map<std::string, double> params;
  auto lp = text.find('(');
  if (lp != std::string::npos) {
    if (text.back() != ')') throw std::invalid_argument("malformed catalog name '" + text + "'");
    name = text.substr(0, lp);
    std::string args = text.substr(lp + 1, text.size() - lp - 2);
    // positional order per catalog documentation
    std::vector<std::string> order;
    if (name == "euclidean") order = {"n"};
    else if (name == "space_form") order = {"n", "c"};
    else if (name == "thurston") order = {"m", "l"};
    std::stringstream ss(args);
    std::string item;
    size_t pos = 0;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      std::string key;
      std::string val = item;
      if (eq != std::string::npos) {
        key = item.substr(0, eq);
        val = item.substr(eq + 1);
        key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
      } else {
        if (pos >= order.size())
          throw std::invalid_argument("too many positional parameters in '" + text + "'");
        key = order[pos];
      }
      ++pos;
      try {
        params[key] = std::stod(val);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad parameter value '" + val + "' in '" + text + "'");
      }
    }
  }
  if (dim_override) params["n"] = double(*dim_override);
  return catalog_metric(name, params);
}

// ---------------------------------------------------------------------------
// metric-spec parser
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace

MetricField parse_metric_spec(const std::string& text, const std::string& name) {
  if (text.empty()) throw ParseError(1, 1, "empty metric spec");

  int n = -1;
  std::vector<std::string> coords;
  std::vector<std::string> params;
  std::vector<double> param_values;
  std::vector<ExprPtr> entries;
  std::vector<bool> given;
  DomainBox box;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (split_ws(line).empty()) continue;
    auto toks = split_ws(line);
    const std::string& kw = toks[0];

    if (kw == "dim") {
      if (n != -1) throw ParseError(line_no, 1, "duplicate 'dim' line");
      if (toks.size() != 2) throw ParseError(line_no, 1, "expected: dim <n>");
      try {
        n = std::stoi(toks[1]);
      } catch (const std::exception&) {
        throw ParseError(line_no, 1, "bad dimension '" + toks[1] + "'");
      }
      if (n < 1) throw ParseError(line_no, 1, "dimension must be >= 1");
      entries.assign(size_t(n) * (n + 1) / 2, nullptr);
      given.assign(entries.size(), false);
    } else if (kw == "coords") {
      if (n == -1) throw ParseError(line_no, 1, "'coords' before 'dim'");
      if (!coords.empty()) throw ParseError(line_no, 1, "duplicate 'coords' line");
      if (int(toks.size()) - 1 != n)
        throw ParseError(line_no, 1, "dim mismatch: expected " + std::to_string(n) +
                                         " coordinate names, got " +
                                         std::to_string(toks.size() - 1));
      for (size_t i = 1; i < toks.size(); ++i) {
        if (!valid_identifier(toks[i]))
          throw ParseError(line_no, 1, "bad coordinate name '" + toks[i] + "'");
        if (is_function_name(toks[i]))
          throw ParseError(line_no, 1,
                           "coordinate name '" + toks[i] + "' collides with a function");
        if (std::find(coords.begin(), coords.end(), toks[i]) != coords.end())
          throw ParseError(line_no, 1, "duplicate coordinate name '" + toks[i] + "'");
        coords.push_back(toks[i]);
      }
    } else if (kw == "param") {
      if (coords.empty()) throw ParseError(line_no, 1, "'param' before 'coords'");
      if (toks.size() != 4 || toks[2] != "=")
        throw ParseError(line_no, 1, "expected: param <id> = <literal>");
      const std::string& id = toks[1];
      if (!valid_identifier(id) || is_function_name(id))
        throw ParseError(line_no, 1, "bad parameter name '" + id + "'");
      if (std::find(coords.begin(), coords.end(), id) != coords.end() ||
          std::find(params.begin(), params.end(), id) != params.end())
        throw ParseError(line_no, 1, "identifier '" + id + "' already declared");
      try {
        param_values.push_back(std::stod(toks[3]));
      } catch (const std::exception&) {
        throw ParseError(line_no, 1, "bad parameter literal '" + toks[3] + "'");
      }
      params.push_back(id);
    } else if (kw == "g") {
      if (coords.empty()) throw ParseError(line_no, 1, "'g' line before 'coords'");
      // g <i> <j> = <expression>
      auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError(line_no, 1, "expected '=' in 'g' line");
      auto head = split_ws(line.substr(0, eq));
      if (head.size() != 3) throw ParseError(line_no, 1, "expected: g <i> <j> = <expression>");
      int i, j;
      try {
        i = std::stoi(head[1]);
        j = std::stoi(head[2]);
      } catch (const std::exception&) {
        throw ParseError(line_no, 1, "bad index in 'g' line");
      }
      if (i < 0 || j < 0 || i >= n || j >= n)
        throw ParseError(line_no, 1, "dim mismatch: index out of range in 'g " +
                                         std::to_string(i) + " " + std::to_string(j) + "'");
      size_t idx = tri_at(n, i, j);
      if (given[idx])
        throw ParseError(line_no, 1, "conflicting entry: g " + std::to_string(i) + " " +
                                         std::to_string(j) + " already specified");
      ExprPtr e = parse_expression(line.substr(eq + 1), coords, params, line_no, int(eq) + 1);
      entries[idx] = std::move(e);
      given[idx] = true;
    } else {
      throw ParseError(line_no, 1, "unknown directive '" + kw + "'");
    }
  }

  if (n == -1) throw ParseError(line_no, 1, "missing 'dim' line");
  if (coords.empty()) throw ParseError(line_no, 1, "missing 'coords' line");
  for (int i = 0; i < n; ++i)
    if (!entries[tri_at(n, i, i)])
      throw ParseError(line_no, 1, "missing diagonal entry g " + std::to_string(i) + " " +
                                       std::to_string(i));

  return MetricField(name, n, cube_box(n, 1.0), coords, params, param_values,
                     std::move(entries));
}

std::string print_metric_spec(const MetricField& field) {
  std::ostringstream out;
  out << "# " << field.name() << "\n";
  out << "dim " << field.dim() << "\n";
  out << "coords";
  for (const auto& c : field.coord_names()) out << " " << c;
  out << "\n";
  for (size_t i = 0; i < field.param_names().size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", field.param_values()[i]);
    out << "param " << field.param_names()[i] << " = " << buf << "\n";
  }
  for (int i = 0; i < field.dim(); ++i) {
    for (int j = i; j < field.dim(); ++j) {
      const ExprPtr& e = field.entry(i, j);
      if (!e) continue;
      out << "g " << i << " " << j << " = "
          << expr_to_text(*e, field.coord_names(), field.param_names()) << "\n";
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// sampling
// ---------------------------------------------------------------------------

std::vector<ChartPoint> sample_points(const MetricField& field, int count, uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
  const int n = field.dim();
  static const unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  if (n > int(sizeof(primes) / sizeof(primes[0])))
    throw std::invalid_argument("sampling supports dim <= 8");

  // Halton sequence with a seeded Cranley-Patterson shift per axis.
  uint64_t state = seed * 0x9e3779b97f4a7c15ull + 0x853c49e6748fea9bull;
  std::vector<double> shift(n);
  for (int a = 0; a < n; ++a) shift[a] = unit_double(splitmix64(state));

  const double margin = 0.05;
  const DomainBox& box = field.domain();
  std::vector<ChartPoint> out;
  out.reserve(count);
  const uint64_t cap = 100ull * uint64_t(count) + 1000;
  uint64_t index = 1;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  while (int(out.size()) < count) {
    if (index > cap)
      throw std::runtime_error("positive-definiteness rejection cap exceeded for metric '" +
                               field.name() + "'");
    ChartPoint p(n);
    for (int a = 0; a < n; ++a) {
      double u = radical_inverse(index, primes[a]) + shift[a];
      u -= std::floor(u);
      double lo = box.lo[a], hi = box.hi[a];
      double w = hi - lo;
      p[a] = lo + w * (margin + (1.0 - 2.0 * margin) * u);
    }
    ++index;
    Eigen::MatrixXd g = field.value(p);
    eig.compute(g, Eigen::EigenvaluesOnly);
    if (eig.info() == Eigen::Success && eig.eigenvalues().minCoeff() > 0.0)
      out.push_back(std::move(p));
  }
  return out;
}

}  // namespace curvsym
