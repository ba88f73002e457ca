#include "levycum/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace levycum {

namespace {

using nlohmann::json;

std::vector<double> as_double_vector(const json& j, const char* field) {
  if (!j.is_array()) throw std::invalid_argument(std::string("config: ") + field + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(v.get<double>());
  return out;
}

Eigen::MatrixXd as_matrix(const json& j, const char* field) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument(std::string("config: ") + field + " must be a matrix");
  const auto rows = j.size();
  const auto cols = j.front().size();
  Eigen::MatrixXd m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    if (j[r].size() != cols)
      throw std::invalid_argument(std::string("config: ") + field + " rows have unequal length");
    for (size_t c = 0; c < cols; ++c) m(static_cast<int>(r), static_cast<int>(c)) = j[r][c].get<double>();
  }
  return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<double> ScanBlock::grid() const {
  if (steps < 1) throw std::invalid_argument("config: scan.steps must be >= 1");
  std::vector<double> g;
  g.reserve(static_cast<size_t>(steps));
  if (steps == 1) {
    g.push_back(from);
    return g;
  }
  for (int k = 0; k < steps; ++k)
    g.push_back(from + (to - from) * static_cast<double>(k) / static_cast<double>(steps - 1));
  return g;
}

RunConfig RunConfig::defaults() {
  RunConfig c;
  c.gamma = {85.4175, 64.2544};
  c.delta = {0.0248, 0.0335};
  c.beta = {-8.8886, -13.5988};
  c.drift = {0.0027, 0.0074};
  c.rho = Eigen::MatrixXd(2, 2);
  c.rho << 1.0, 0.5, 0.5, 1.0;
  c.a = 1.05;
  c.orders = 4;
  c.times = {1.0 / 252.0, 21.0 / 252.0, 1.0};
  c.seed = 42;
  c.num_paths = 1'000'000;
  c.num_workers = 1;
  return c;
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: parse error: ") + e.what());
  }

  RunConfig c = defaults();
  if (!j.contains("model")) throw std::invalid_argument("config: missing model block");
  const json& m = j.at("model");
  c.gamma = as_double_vector(m.at("gamma"), "model.gamma");
  c.delta = as_double_vector(m.at("delta"), "model.delta");
  c.beta = as_double_vector(m.at("beta"), "model.beta");
  c.rho = as_matrix(m.at("rho"), "model.rho");
  c.a = m.at("a").get<double>();
  if (m.contains("drift"))
    c.drift = as_double_vector(m.at("drift"), "model.drift");
  else
    c.drift.assign(c.gamma.size(), 0.0);

  if (j.contains("orders")) c.orders = j.at("orders").get<int>();
  if (j.contains("times")) c.times = as_double_vector(j.at("times"), "times");
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("num_paths")) c.num_paths = j.at("num_paths").get<std::int64_t>();
  if (j.contains("num_workers")) c.num_workers = j.at("num_workers").get<int>();

  if (j.contains("scan")) {
    const json& s = j.at("scan");
    ScanBlock b;
    b.parameter = s.at("param").get<std::string>();
    b.from = s.at("from").get<double>();
    b.to = s.at("to").get<double>();
    b.steps = s.at("steps").get<int>();
    scan_parameter_from_string(b.parameter);  // validate early
    c.scan = b;
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    OutputBlock b;
    b.path = o.at("path").get<std::string>();
    b.format = o.at("format").get<std::string>();
    if (b.format != "csv" && b.format != "json")
      throw std::invalid_argument("config: output.format must be csv or json");
    c.output = b;
  }

  if (c.orders < 2 || c.orders > kDefaultOrderCap)
    throw std::invalid_argument("config: orders must lie in [2, " +
                                std::to_string(kDefaultOrderCap) + "]");
  for (double t : c.times)
    if (!(t > 0.0)) throw std::invalid_argument("config: times must be positive");
  if (c.num_workers < 1) throw std::invalid_argument("config: num_workers must be >= 1");
  if (c.drift.size() != c.gamma.size())
    throw std::invalid_argument("config: drift length mismatch");
  return c;
}

RunConfig RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

std::string RunConfig::to_json_text() const {
  json j;
  j["model"]["gamma"] = gamma;
  j["model"]["delta"] = delta;
  j["model"]["beta"] = beta;
  j["model"]["rho"] = matrix_to_json(rho);
  j["model"]["a"] = a;
  j["model"]["drift"] = drift;
  j["orders"] = orders;
  j["times"] = times;
  j["seed"] = seed;
  j["num_paths"] = num_paths;
  j["num_workers"] = num_workers;
  if (scan) {
    j["scan"]["param"] = scan->parameter;
    j["scan"]["from"] = scan->from;
    j["scan"]["to"] = scan->to;
    j["scan"]["steps"] = scan->steps;
  }
  if (output) {
    j["output"]["path"] = output->path;
    j["output"]["format"] = output->format;
  }
  return j.dump(2) + "\n";
}

RhoAlphaNigModel RunConfig::make_model() const {
  return RhoAlphaNigModel(gamma, delta, beta, rho, a);
}

bool RunConfig::operator==(const RunConfig& other) const {
  if (rho.rows() != other.rho.rows() || rho.cols() != other.rho.cols()) return false;
  for (int r = 0; r < rho.rows(); ++r)
    for (int c = 0; c < rho.cols(); ++c)
      if (rho(r, c) != other.rho(r, c)) return false;
  return gamma == other.gamma && delta == other.delta && beta == other.beta && a == other.a &&
         drift == other.drift && orders == other.orders && times == other.times &&
         seed == other.seed && num_paths == other.num_paths &&
         num_workers == other.num_workers && scan == other.scan && output == other.output;
}

}  // namespace levycum
