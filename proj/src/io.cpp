#include "equipart/io.hpp"

#include <Eigen/Cholesky>

#include <fstream>
#include <sstream>

namespace equipart {
namespace {

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + ": expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string(what) + ": missing field \"" + key + "\"");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + ": expected a number");
  return j.get<double>();
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + ": expected an integer");
  return j.get<int>();
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(number(x, what));
  return out;
}

Mat matrix(const Json& j, int rows, int cols, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) throw InputError(std::string(what) + ": wrong row count");
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const auto row = numbers(j[static_cast<std::size_t>(r)], what);
    if (static_cast<int>(row.size()) != cols) throw InputError(std::string(what) + ": wrong column count");
    for (int c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

Json matrix_to_json(const Mat& m) {
  Json out = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    const auto pos = msg.find("syntax error");
    if (pos != std::string::npos) msg = msg.substr(pos);
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

Json json_argument(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return parse_json(arg, "<argument>");
  return read_json_file(arg);
}

Vec vec_from_json(const Json& j, const char* what) {
  const auto xs = numbers(j, what);
  if (xs.empty() || xs.size() > static_cast<std::size_t>(kMaxDim + 1)) throw InputError(std::string(what) + ": bad length");
  return to_vec(xs);
}

Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Measure measure_from_json(const Json& j) {
  const std::string type = field(j, "type", "measure").is_string() ? j["type"].get<std::string>() : "";
  const int dim = integer(field(j, "dim", "measure"), "measure dim");
  if (type == "points") {
    PointCloud pc;
    pc.dim = dim;
    for (const auto& p : field(j, "points", "points")) pc.points.push_back(to_vec(numbers(p, "points")));
    if (j.contains("weights")) {
      pc.weights = numbers(j["weights"], "weights");
    } else {
      pc.weights.assign(pc.points.size(), 1.0);
    }
    return Measure(std::move(pc));
  }
  if (type == "grid") {
    GridDensity g;
    g.dim = dim;
    g.lower = to_vec(numbers(field(j, "lower", "grid"), "grid lower"));
    g.upper = to_vec(numbers(field(j, "upper", "grid"), "grid upper"));
    for (const auto& r : field(j, "resolution", "grid")) g.resolution.push_back(integer(r, "grid resolution"));
    g.density = numbers(field(j, "density", "grid"), "grid density");
    return Measure(std::move(g));
  }
  if (type == "curve") {
    CurveMeasure c;
    c.dim = dim;
    const std::string name = field(j, "curve", "curve").is_string() ? j["curve"].get<std::string>() : "";
    if (name == "gamma4") {
      c.kind = CurveMeasure::Kind::gamma4;
    } else if (name == "moment") {
      c.kind = CurveMeasure::Kind::moment;
      c.lo = 0.0;
      c.hi = 1.0;
    } else {
      throw InputError("curve: unknown curve \"" + name + "\" (expected gamma4 or moment)");
    }
    if (j.contains("interval")) {
      const auto iv = numbers(j["interval"], "curve interval");
      if (iv.size() != 2) throw InputError("curve interval: expected [lo, hi]");
      c.lo = iv[0];
      c.hi = iv[1];
    }
    if (j.contains("density")) c.density = numbers(j["density"], "curve density");
    if (j.contains("samples")) c.samples = integer(j["samples"], "curve samples");
    if (j.contains("linear")) {
      const int cols = c.kind == CurveMeasure::Kind::gamma4 ? 4 : static_cast<int>(j["linear"].at(0).size());
      c.linear = matrix(j["linear"], dim, cols, "curve linear");
      c.offset = j.contains("offset") ? vec_from_json(j["offset"], "curve offset") : Vec(Vec::Zero(dim));
    }
    return Measure(std::move(c));
  }
  if (type == "gaussian_mixture") {
    GaussianMixture g;
    g.dim = dim;
    for (const auto& comp : field(j, "components", "gaussian_mixture")) {
      g.weights.push_back(comp.contains("weight") ? number(comp["weight"], "component weight") : 1.0);
      g.means.push_back(vec_from_json(field(comp, "mean", "component"), "component mean"));
      if (comp.contains("cov")) {
        const Mat cov = matrix(comp["cov"], dim, dim, "component cov");
        if (!cov.isApprox(cov.transpose(), 1e-12)) throw InputError("component cov: must be symmetric");
        const Eigen::LLT<Mat> llt(cov);
        if (llt.info() != Eigen::Success) throw InputError("component cov: must be positive definite");
        g.factors.push_back(llt.matrixL());
      } else {
        const double s = number(field(comp, "sigma", "component"), "component sigma");
        if (!(s > 0.0)) throw InputError("component sigma: must be positive");
        g.factors.push_back(s * Mat::Identity(dim, dim));
      }
    }
    return Measure(std::move(g));
  }
  throw InputError("measure: unknown type \"" + type + "\" (expected points, grid, curve or gaussian_mixture)");
}

Json measure_to_json(const Measure& m) {
  Json j;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        j["dim"] = v.dim;
        if constexpr (std::is_same_v<T, PointCloud>) {
          j["type"] = "points";
          j["points"] = Json::array();
          for (const Vec& p : v.points) j["points"].push_back(vec_to_json(p));
          j["weights"] = v.weights;
        } else if constexpr (std::is_same_v<T, GridDensity>) {
          j["type"] = "grid";
          j["lower"] = vec_to_json(v.lower);
          j["upper"] = vec_to_json(v.upper);
          j["resolution"] = v.resolution;
          j["density"] = v.density;
        } else if constexpr (std::is_same_v<T, CurveMeasure>) {
          if (v.kind == CurveMeasure::Kind::custom) throw InputError("cannot serialise a custom curve");
          j["type"] = "curve";
          j["curve"] = v.kind == CurveMeasure::Kind::gamma4 ? "gamma4" : "moment";
          j["interval"] = {v.lo, v.hi};
          if (!v.density.empty()) j["density"] = v.density;
          j["samples"] = v.samples;
          if (v.placed()) {
            j["linear"] = matrix_to_json(v.linear);
            j["offset"] = vec_to_json(v.offset);
          }
        } else {
          j["type"] = "gaussian_mixture";
          j["components"] = Json::array();
          for (std::size_t k = 0; k < v.weights.size(); ++k) {
            const Mat cov = v.factors[k] * v.factors[k].transpose();
            j["components"].push_back({{"weight", v.weights[k]}, {"mean", vec_to_json(v.means[k])}, {"cov", matrix_to_json(cov)}});
          }
        }
      },
      m.variant());
  return j;
}

Configuration config_from_json(const Json& j) {
  const int dim = integer(field(j, "dim", "configuration"), "configuration dim");
  if (j.contains("u")) {
    std::vector<Vec> us;
    for (const auto& u : j["u"]) us.push_back(vec_from_json(u, "configuration u"));
    for (const Vec& u : us)
      if (u.size() != dim + 1) throw InputError("configuration u: vectors need dim + 1 coordinates");
    return Configuration::normalized(dim, std::move(us));
  }
  std::vector<Hyperplane> hs;
  for (const auto& h : field(j, "hyperplanes", "configuration")) {
    hs.push_back(Hyperplane::make(vec_from_json(field(h, "a", "hyperplane"), "hyperplane a"), number(field(h, "c", "hyperplane"), "hyperplane c")));
    if (hs.back().dim() != dim) throw InputError("hyperplane: normal length differs from dim");
  }
  if (hs.empty()) throw InputError("configuration: no hyperplanes");
  return Configuration::from_hyperplanes(hs);
}

Json config_to_json(const Configuration& c) {
  Json j;
  j["dim"] = c.dim;
  j["u"] = Json::array();
  for (const Vec& u : c.u) j["u"].push_back(vec_to_json(u));
  j["hyperplanes"] = Json::array();
  for (const Vec& u : c.u) {
    try {
      const Hyperplane h = unlift(u);
      j["hyperplanes"].push_back({{"a", vec_to_json(h.a)}, {"c", h.c}});
    } catch (const InputError&) {
      j["hyperplanes"].push_back(nullptr);
    }
  }
  return j;
}

Subspace subspace_from_json(const Json& j) {
  Subspace s;
  s.point = vec_from_json(field(j, "point", "subspace"), "subspace point");
  for (const auto& d : field(j, "directions", "subspace")) s.directions.push_back(vec_from_json(d, "subspace direction"));
  return s;
}

Json subspace_to_json(const Subspace& s) {
  Json j;
  j["point"] = vec_to_json(s.point);
  j["directions"] = Json::array();
  for (const Vec& d : s.directions) j["directions"].push_back(vec_to_json(d));
  return j;
}

Json report_to_json(const SolveReport& r) {
  Json j;
  j["status"] = to_string(r.status);
  j["method"] = r.method;
  if (!r.message.empty()) j["message"] = r.message;
  j["residual"] = r.residual;
  j["iterations"] = r.iterations;
  if (r.config.count() > 0) {
    const Json c = config_to_json(r.config);
    j["dim"] = r.config.dim;
    j["hyperplanes"] = c["hyperplanes"];
    j["u"] = c["u"];
    j["delta_condition"] = delta_condition(r.config);
  }
  j["masses"] = r.masses;
  if (!r.path.empty()) j["path"] = r.path;
  return j;
}

Json cloud_report_to_json(const CloudReport& r) {
  Json j = report_to_json(r.solve);
  j["counts"] = r.counts;
  j["bound"] = r.bound;
  j["max_count"] = r.max_count;
  j["sigma"] = r.sigma;
  j["rounds"] = r.rounds;
  j["certified"] = r.certified;
  return j;
}

std::string dump(const Json& j) { return j.dump(2); }

}  // namespace equipart
