#include "curvsym/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace curvsym {

namespace {

std::string fmt17(double v) {
  if (std::isnan(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Minimal insertion-ordered JSON writer; enough control to pin the byte
// format (17 significant digits, fixed key order, 2-space indent).
class Json {
public:
  explicit Json(std::ostringstream& os) : os_(os) {}

  void begin_object() { open('{'); }
  void end_object() { close('}'); }
  void begin_array() { open('['); }
  void end_array() { close(']'); }

  void key(const std::string& k) {
    comma();
    indent();
    os_ << '"' << escape(k) << "\": ";
    pending_value_ = true;
  }

  void value(double v) { scalar(fmt17(v)); }
  void value(int v) { scalar(std::to_string(v)); }
  void value(uint64_t v) { scalar(std::to_string(v)); }
  void value(bool v) { scalar(v ? "true" : "false"); }
  void value(const std::string& v) { scalar("\"" + escape(v) + "\""); }
  void value(const char* v) { value(std::string(v)); }

private:
  std::ostringstream& os_;
  std::vector<bool> first_;
  bool pending_value_ = false;

  static std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '\n') {
        out += "\\n";
        continue;
      }
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out;
  }

  void comma() {
    if (first_.empty()) return;
    if (pending_value_) return;
    if (!first_.back())
      os_ << ",\n";
    else {
      os_ << "\n";
      first_.back() = false;
    }
  }

  void indent() {
    for (size_t i = 0; i < first_.size(); ++i) os_ << "  ";
  }

  void open(char c) {
    if (!pending_value_) comma(), indent();
    if (pending_value_ && !first_.empty() && first_.back()) first_.back() = false;
    pending_value_ = false;
    os_ << c;
    first_.push_back(true);
  }

  void close(char c) {
    bool empty = first_.back();
    first_.pop_back();
    if (!empty) {
      os_ << "\n";
      indent();
    }
    os_ << c;
  }

  void scalar(const std::string& text) {
    if (!pending_value_) {
      comma();
      indent();
    } else if (!first_.empty() && first_.back()) {
      first_.back() = false;
    }
    pending_value_ = false;
    os_ << text;
  }
};

void write_point(Json& j, const ChartPoint& p) {
  j.begin_array();
  for (int i = 0; i < p.size(); ++i) j.value(p[i]);
  j.end_array();
}

void write_flags(Json& j, const char* key_name, bool flat, bool cc, bool ein, bool qe,
                 bool semi, bool ps, bool psw) {
  j.key(key_name);
  j.begin_object();
  j.key("flat");
  j.value(flat);
  j.key("constant_curvature");
  j.value(cc);
  j.key("einstein");
  j.value(ein);
  j.key("quasi_einstein");
  j.value(qe);
  j.key("semi_symmetric");
  j.value(semi);
  j.key("pseudo_symmetric");
  j.value(ps);
  j.key("pseudo_symmetric_weyl");
  j.value(psw);
  j.end_object();
}

void write_fit(Json& j, const char* key_name, const PseudoFit& f) {
  j.key(key_name);
  j.begin_object();
  j.key("coefficient");
  j.value(f.coefficient);
  j.key("residual");
  j.value(f.residual);
  j.key("denominator_norm");
  j.value(f.denominator_norm);
  j.key("verdict");
  j.value(to_string(f.verdict));
  j.end_object();
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::string report_json(const ReportMeta& meta, const std::vector<ChartPoint>& points,
                        const ClassificationReport* classification,
                        const std::vector<SuiteRow>& suite) {
  std::ostringstream os;
  Json j(os);
  j.begin_object();
  j.key("metric");
  j.value(meta.metric);
  j.key("params");
  j.begin_object();
  for (const auto& [k, v] : meta.params) {
    j.key(k);
    j.value(v);
  }
  j.end_object();
  j.key("mode");
  j.value(meta.mode);
  j.key("seed");
  j.value(meta.seed);

  j.key("points");
  j.begin_array();
  for (const auto& p : points) write_point(j, p);
  j.end_array();

  j.key("per_point");
  j.begin_array();
  if (classification) {
    for (const auto& pc : classification->per_point) {
      j.begin_object();
      j.key("point");
      write_point(j, pc.point);
      write_flags(j, "flags", pc.flat, pc.constant_curvature, pc.einstein, pc.quasi_einstein,
                  pc.semi_symmetric, pc.pseudo_symmetric, pc.pseudo_symmetric_weyl);
      j.key("curvature_constant");
      j.value(pc.constant_curvature ? pc.curvature_constant : kNaN);
      j.key("L_R");
      j.value(pc.L_R ? *pc.L_R : kNaN);
      j.key("L_C");
      j.value(pc.L_C ? *pc.L_C : kNaN);
      write_fit(j, "fit_r", pc.fit_r);
      write_fit(j, "fit_c", pc.fit_c);
      j.key("ricci_spectrum");
      j.begin_array();
      for (size_t i = 0; i < pc.spectrum.cluster_values.size(); ++i) {
        j.begin_object();
        j.key("value");
        j.value(pc.spectrum.cluster_values[i]);
        j.key("multiplicity");
        j.value(pc.spectrum.multiplicities[i]);
        j.end_object();
      }
      j.end_array();
      j.key("nullity_index");
      j.value(pc.nullity);
      j.key("rr_relative_norm");
      j.value(pc.rr_relative_norm);
      j.key("plane_samples");
      j.begin_object();
      j.key("count");
      j.value(pc.plane_samples);
      j.key("dependent");
      j.value(pc.plane_dependent);
      j.key("mean");
      j.value(pc.plane_dependent ? pc.L_sample_mean : kNaN);
      j.key("stddev");
      j.value(pc.plane_dependent ? pc.L_sample_stddev : kNaN);
      j.end_object();
      j.end_object();
    }
  }
  j.end_array();

  j.key("aggregate");
  j.begin_object();
  if (classification) {
    const auto& a = classification->aggregate;
    write_flags(j, "flags", a.flat, a.constant_curvature, a.einstein, a.quasi_einstein,
                a.semi_symmetric, a.pseudo_symmetric, a.pseudo_symmetric_weyl);
    j.key("constant_type");
    j.value(a.constant_type);
    j.key("L_R");
    j.begin_object();
    j.key("defined_count");
    j.value(a.L_R_defined_count);
    j.key("mean");
    j.value(a.L_R_defined_count ? a.L_R_mean : kNaN);
    j.key("max_dev");
    j.value(a.L_R_defined_count ? a.L_R_max_dev : kNaN);
    j.end_object();
    j.key("schur");
    j.begin_object();
    j.key("applicable");
    j.value(a.schur_applicable);
    j.key("constant");
    j.value(a.schur_constant);
    j.key("c_mean");
    j.value(a.schur_c_mean);
    j.key("c_max_dev");
    j.value(a.schur_c_max_dev);
    j.end_object();
    j.key("degenerate_fit");
    j.value(a.degenerate_fit);
  }
  j.end_object();

  j.key("suite");
  j.begin_array();
  for (const auto& row : suite) {
    j.begin_object();
    j.key("name");
    j.value(row.name);
    j.key("value");
    j.value(row.value);
    j.key("expected");
    j.value(row.expected);
    j.key("tolerance");
    j.value(row.tolerance);
    j.key("pass");
    j.value(row.pass);
    j.key("note");
    j.value(row.note);
    j.end_object();
  }
  j.end_array();

  j.end_object();
  os << "\n";
  return os.str();
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string classification_csv(const std::vector<ChartPoint>& points,
                               const ClassificationReport& report) {
  std::ostringstream os;
  const int n = points.empty() ? 0 : int(points[0].size());
  for (int i = 0; i < n; ++i) os << "p" << i << ",";
  os << "flat,constant_curvature,einstein,quasi_einstein,semi_symmetric,pseudo_symmetric,"
        "pseudo_symmetric_weyl,curvature_constant,L_R,L_C,fit_r_residual,nullity_index,"
        "planes_dependent,L_sample_mean,L_sample_stddev\n";
  for (const auto& pc : report.per_point) {
    for (int i = 0; i < n; ++i) os << fmt17(pc.point[i]) << ",";
    os << pc.flat << "," << pc.constant_curvature << "," << pc.einstein << ","
       << pc.quasi_einstein << "," << pc.semi_symmetric << "," << pc.pseudo_symmetric << ","
       << pc.pseudo_symmetric_weyl << ","
       << fmt17(pc.constant_curvature ? pc.curvature_constant : kNaN) << ","
       << fmt17(pc.L_R ? *pc.L_R : kNaN) << "," << fmt17(pc.L_C ? *pc.L_C : kNaN) << ","
       << fmt17(pc.fit_r.residual) << "," << pc.nullity << "," << pc.plane_dependent << ","
       << fmt17(pc.L_sample_mean) << "," << fmt17(pc.L_sample_stddev) << "\n";
  }
  return os.str();
}

std::string suite_csv(const std::vector<SuiteRow>& suite) {
  std::ostringstream os;
  os << "name,value,expected,tolerance,pass,note\n";
  for (const auto& r : suite) {
    os << csv_escape(r.name) << "," << fmt17(r.value) << "," << fmt17(r.expected) << ","
       << fmt17(r.tolerance) << "," << r.pass << "," << csv_escape(r.note) << "\n";
  }
  return os.str();
}

std::string suite_table(const std::vector<SuiteRow>& suite) {
  std::ostringstream os;
  size_t w = 4;
  for (const auto& r : suite) w = std::max(w, r.name.size());
  for (const auto& r : suite) {
    os << (r.pass ? "PASS  " : "FAIL  ") << r.name;
    for (size_t i = r.name.size(); i < w + 2; ++i) os << ' ';
    char buf[160];
    if (std::isnan(r.expected))
      std::snprintf(buf, sizeof(buf), "value=%-13.6g tol=%-10.3g", r.value, r.tolerance);
    else
      std::snprintf(buf, sizeof(buf), "value=%-13.6g expected=%-10.6g tol=%-10.3g", r.value,
                    r.expected, r.tolerance);
    os << buf;
    if (!r.note.empty()) os << "  " << r.note;
    os << "\n";
  }
  return os.str();
}

ShapeOperatorSet shape_set_from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  int n = doc.at("n").get<int>();
  int m = doc.at("m").get<int>();
  double c = doc.value("ambient_c", 0.0);
  std::vector<Eigen::MatrixXd> ops;
  for (const auto& op : doc.at("ops")) {
    Eigen::MatrixXd A(n, n);
    if (int(op.size()) != n) throw std::invalid_argument("shape operator row count != n");
    for (int i = 0; i < n; ++i) {
      if (int(op[i].size()) != n) throw std::invalid_argument("shape operator column count != n");
      for (int j = 0; j < n; ++j) A(i, j) = op[i][j].get<double>();
    }
    ops.push_back(std::move(A));
  }
  return ShapeOperatorSet::make(n, m, c, std::move(ops));
}

std::string wintgen_json(const ShapeOperatorSet& s, const WintgenQuantities& q) {
  std::ostringstream os;
  Json j(os);
  j.begin_object();
  j.key("n");
  j.value(s.n);
  j.key("m");
  j.value(s.m);
  j.key("ambient_c");
  j.value(s.ambient_c);
  j.key("rho");
  j.value(q.rho);
  j.key("rho_perp");
  j.value(q.rho_perp);
  j.key("h2");
  j.value(q.h2);
  j.key("slack");
  j.value(q.slack);
  j.key("pass");
  j.value(q.slack >= -1e-10);
  j.end_object();
  os << "\n";
  return os.str();
}

}  // namespace curvsym
