#include "hk/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hk {

using json = nlohmann::ordered_json;

namespace {

json rat_matrix_json(const QMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

QMat rat_matrix_from(const json& rows, const char* what) {
  if (!rows.is_array() || rows.empty() || !rows[0].is_array())
    throw Error("SchemaError", std::string(what) + " must be an array of arrays");
  QMat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != m.cols())
      throw Error("SchemaError", std::string(what) + " has ragged rows");
    for (int j = 0; j < m.cols(); ++j)
      m(i, j) = parse_rat(rows[i][j].get<std::string>());
  }
  return m;
}

}  // namespace

std::string save_model(const GradedAlgebra& a) {
  json out;
  out["top_degree"] = a.top_degree;
  out["dims"] = a.dims;
  json mult = json::array();
  for (const auto& [key, t] : a.mult) {
    auto [i, j] = key;
    for (int alpha = 0; alpha < a.dim(i); ++alpha)
      for (int beta = 0; beta < a.dim(j); ++beta) {
        if (i == j && beta < alpha) continue;
        for (int g = 0; g < a.dim(i + j); ++g) {
          const Rat& c = t(alpha * a.dim(j) + beta, g);
          if (is_zero(c)) continue;
          mult.push_back(json::array({i, alpha, j, beta, g, to_string(c)}));
        }
      }
  }
  out["mult"] = std::move(mult);
  json tr = json::array();
  for (const Rat& c : a.trace) tr.push_back(to_string(c));
  out["trace"] = std::move(tr);
  if (a.reference_form) out["reference_form"] = rat_matrix_json(*a.reference_form);
  json meta = json::object();
  for (const auto& [k, v] : a.meta) meta[k] = v;
  out["meta"] = std::move(meta);
  return out.dump(2) + "\n";
}

GradedAlgebra load_model(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error("SchemaError", std::string("bad JSON: ") + e.what());
  }
  GradedAlgebra a;
  if (!in.contains("top_degree") || !in.contains("dims") || !in.contains("mult") ||
      !in.contains("trace"))
    throw Error("SchemaError", "model file needs top_degree, dims, mult, trace");
  a.top_degree = in["top_degree"].get<int>();
  a.dims = in["dims"].get<std::vector<int>>();
  if (static_cast<int>(a.dims.size()) != a.top_degree + 1)
    throw Error("SchemaError", "dims must have top_degree + 1 entries");
  for (int d : a.dims)
    if (d < 0) throw Error("SchemaError", "negative component dimension");

  // allocate tables for i <= j
  for (int i = 0; i <= a.top_degree; ++i)
    for (int j = i; i + j <= a.top_degree; ++j)
      if (a.dim(i) && a.dim(j) && a.dim(i + j))
        a.mult[{i, j}] = QMat(a.dim(i) * a.dim(j), a.dim(i + j));

  std::set<std::tuple<int, int, int, int, int>> seen;
  for (const auto& entry : in["mult"]) {
    if (!entry.is_array() || entry.size() != 6)
      throw Error("SchemaError", "mult entries are [i,alpha,j,beta,gamma,c]");
    int i = entry[0].get<int>(), alpha = entry[1].get<int>();
    int j = entry[2].get<int>(), beta = entry[3].get<int>();
    int g = entry[4].get<int>();
    Rat c = parse_rat(entry[5].get<std::string>());
    std::string where = entry.dump();
    if (i < 0 || j < 0 || i + j > a.top_degree || alpha < 0 || alpha >= a.dim(i) ||
        beta < 0 || beta >= a.dim(j) || g < 0 || g >= a.dim(i + j))
      throw Error("SchemaError", "mult entry out of range: " + where);
    if (!seen.insert({i, alpha, j, beta, g}).second)
      throw Error("SchemaError", "duplicate mult entry: " + where);
    Rat sign((i % 2) && (j % 2) ? -1 : 1);
    int si = i, sj = j, sa = alpha, sb = beta;
    Rat sc = c;
    if (si > sj) {
      std::swap(si, sj);
      std::swap(sa, sb);
      sc = sign * c;
    }
    QMat& t = a.mult[{si, sj}];
    Rat& slot = t(sa * a.dim(sj) + sb, g);
    if (!is_zero(slot) && slot != sc)
      throw Error("SchemaError", "entry violates graded commutativity: " + where);
    slot = sc;
    // mirrored entry within the same degree must agree with the sign rule
    if (si == sj) {
      Rat& mirror = t(sb * a.dim(sj) + sa, g);
      if (!is_zero(mirror) && mirror != sign * sc)
        throw Error("SchemaError", "entry violates graded commutativity: " + where);
      mirror = sign * sc;
    }
  }
  if (!in["trace"].is_array() ||
      static_cast<int>(in["trace"].size()) != a.dim(a.top_degree))
    throw Error("SchemaError", "trace vector has the wrong length");
  for (const auto& c : in["trace"]) a.trace.push_back(parse_rat(c.get<std::string>()));
  if (in.contains("reference_form")) {
    QMat q = rat_matrix_from(in["reference_form"], "reference_form");
    if (q.rows() != a.dim(2) || !q.is_symmetric())
      throw Error("SchemaError", "reference_form must be symmetric on A_2");
    a.reference_form = std::move(q);
  }
  if (in.contains("meta"))
    for (auto it = in["meta"].begin(); it != in["meta"].end(); ++it)
      a.meta[it.key()] = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
  return a;
}

std::string save_lattice(const IntegralLattice& l) {
  json out;
  json rows = json::array();
  for (int i = 0; i < l.gram.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < l.gram.cols(); ++j)
      row.push_back(static_cast<long>(l.gram(i, j).get_num().get_si()));
    rows.push_back(std::move(row));
  }
  out["gram"] = std::move(rows);
  return out.dump(2) + "\n";
}

IntegralLattice load_lattice(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error("SchemaError", std::string("bad JSON: ") + e.what());
  }
  if (!in.contains("gram")) throw Error("SchemaError", "lattice file needs gram");
  const auto& rows = in["gram"];
  QMat g(static_cast<int>(rows.size()), static_cast<int>(rows.size()));
  for (int i = 0; i < g.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != g.cols())
      throw Error("SchemaError", "gram must be square");
    for (int j = 0; j < g.cols(); ++j) g(i, j) = rows[i][j].get<long>();
  }
  return make_lattice(g);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("SchemaError", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("SchemaError", "cannot write " + path);
  out << text;
}

}  // namespace hk
