#include "vstate/io.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "vstate/error.hpp"

namespace vstate::io {

using nlohmann::json;

namespace {

template <class S>
json series_json(const S& s, const char* type) {
  return json{{"type", type}, {"coeffs", std::vector<double>(s.coeffs().begin(), s.coeffs().end())}};
}

template <class S>
std::string series_csv(const S& s) {
  std::string out = "index,amplitude\n";
  for (std::size_t j = 1; j <= s.size(); ++j) {
    out += std::to_string(j) + "," + format_double(s.coeffs()[j - 1]) + "\n";
  }
  return out;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw PreconditionError("malformed number: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw PreconditionError("malformed number: " + s);
  }
}

std::vector<double> csv_amplitudes(const std::string& text) {
  const auto lines = split_lines(text);
  require(!lines.empty() && lines[0] == "index,amplitude", "series CSV must start with index,amplitude");
  std::vector<double> a;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    require(f.size() == 2, "series CSV rows need two fields");
    require(parse_double(f[0]) == static_cast<double>(i), "series CSV indices must run 1..N");
    a.push_back(parse_double(f[1]));
  }
  return a;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

const char* family_name(Family f) { return f == Family::Ellipse ? "ellipse" : "disk"; }

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string to_json(const CosineSeries& s) { return series_json(s, "cos").dump(); }
std::string to_json(const SineSeries& s) { return series_json(s, "sin").dump(); }
std::string to_csv(const CosineSeries& s) { return series_csv(s); }
std::string to_csv(const SineSeries& s) { return series_csv(s); }

std::variant<CosineSeries, SineSeries> series_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("series JSON does not parse: ") + e.what());
  }
  require(j.is_object() && j.contains("type") && j.contains("coeffs"), "series JSON needs type and coeffs");
  require(j["coeffs"].is_array(), "coeffs must be an array");
  std::vector<double> c;
  for (const auto& v : j["coeffs"]) {
    require(v.is_number(), "coeffs must be numbers");
    c.push_back(v.get<double>());
  }
  const auto type = j["type"].get<std::string>();
  if (type == "cos") return CosineSeries(std::move(c));
  if (type == "sin") return SineSeries(std::move(c));
  throw PreconditionError("series type must be cos or sin");
}

CosineSeries cosine_from_csv(const std::string& text) { return CosineSeries(csv_amplitudes(text)); }
SineSeries sine_from_csv(const std::string& text) { return SineSeries(csv_amplitudes(text)); }

std::string to_json(const BranchPoint& p) {
  json j;
  j["family"] = family_name(p.family);
  j["m"] = p.m;
  if (p.family == Family::Disk) j["alpha"] = p.alpha;
  j["param"] = p.param;
  j["epsilon"] = p.epsilon;
  j["coeffs"] = std::vector<double>(p.shape.coeffs().begin(), p.shape.coeffs().end());
  j["residual"] = p.residual_norm;
  j["decay_rate"] = number_or_null(p.decay_rate);
  j["min_curvature"] = p.min_curvature;
  return j.dump();
}

BranchPoint branch_point_from_json(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("branch JSON does not parse: ") + e.what());
  }
  BranchPoint p;
  try {
    const auto fam = j.at("family").get<std::string>();
    require(fam == "ellipse" || fam == "disk", "family must be ellipse or disk");
    p.family = fam == "ellipse" ? Family::Ellipse : Family::Disk;
    p.m = j.at("m").get<int>();
    p.alpha = j.value("alpha", 0.0);
    p.param = j.at("param").get<double>();
    p.epsilon = j.at("epsilon").get<double>();
    p.shape = CosineSeries(j.at("coeffs").get<std::vector<double>>());
    p.residual_norm = j.at("residual").get<double>();
    p.decay_rate = j.at("decay_rate").is_null() ? std::numeric_limits<double>::infinity()
                                                : j.at("decay_rate").get<double>();
    p.min_curvature = j.at("min_curvature").get<double>();
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("branch JSON is missing a field: ") + e.what());
  }
  return p;
}

std::string to_json(const KernelGenerator& g, std::size_t n_modes) {
  json j;
  j["m"] = g.m;
  j["r"] = g.r;
  j["z"] = g.z;
  j["lambda_plus"] = g.lambda_plus;
  j["lambda_minus"] = g.lambda_minus;
  j["k"] = g.k;
  j["mode_class"] = g.mode_class == FrequencyClass::EvenFrequencies ? "even" : "odd";
  j["cp"] = g.cp;
  j["w"] = g.w;
  j["row_defect"] = g.row_defect();
  const auto s = g.as_series(n_modes);
  j["series"] = series_json(s, "cos");
  return j.dump();
}

std::string tri_coeffs_csv(const TriDiagonalDF& df) {
  std::string out = "k,K,x,y,z\n";
  for (std::size_t k = 1; k <= df.size(); ++k) {
    out += std::to_string(k) + "," + format_double(df.K[k - 1]) + "," + format_double(df.x[k - 1]) + "," +
           format_double(df.y[k - 1]) + "," + format_double(df.zc[k - 1]) + "\n";
  }
  return out;
}

std::string oracle_table_csv(const std::vector<OracleRow>& rows) {
  std::string out = "integral,k,r,closed_form,quadrature,delta\n";
  for (const auto& r : rows) {
    out += r.integral + "," + std::to_string(r.k) + "," + format_double(r.r) + "," + format_double(r.closed) + "," +
           format_double(r.quadrature) + "," + format_double(r.delta()) + "\n";
  }
  return out;
}

std::string to_csv(const Contour& c) {
  std::string out = "x,z1,z2\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double x = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(c.size());
    out += format_double(x) + "," + format_double(c.nodes[i][0]) + "," + format_double(c.nodes[i][1]) + "\n";
  }
  return out;
}

std::string to_json(const Contour& c) {
  std::vector<double> z1, z2;
  for (const auto& p : c.nodes) {
    z1.push_back(p[0]);
    z2.push_back(p[1]);
  }
  return json{{"n", c.size()}, {"z1", z1}, {"z2", z2}}.dump();
}

Contour contour_from_csv(const std::string& text) {
  const auto lines = split_lines(text);
  require(!lines.empty() && lines[0] == "x,z1,z2", "contour CSV must start with x,z1,z2");
  Contour c;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    require(f.size() == 3, "contour CSV rows need three fields");
    c.nodes.push_back({parse_double(f[1]), parse_double(f[2])});
  }
  return c;
}

std::string to_json(const StepDiagnostics& d) {
  return json{{"step", d.step}, {"time", d.time}, {"area", d.area}, {"arc_chord", d.arc_chord}, {"omega_fit", d.omega_fit}}
      .dump();
}

}  // namespace vstate::io
