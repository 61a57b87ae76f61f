#include "locc/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace locc {

namespace {

double number_at(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string("expected number for ") + what);
  return j.get<double>();
}

Cplx entry_from_json(const Json& j) {
  if (j.is_number()) return Cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Cplx(j[0].get<double>(), j[1].get<double>());
  throw ParseError("matrix entry must be [re, im] or a number");
}

// A d x 1 ket column becomes the normalized projector |v><v|.
Mat expand_ket(const Mat& m) {
  if (m.cols() != 1) return m;
  const double n = m.norm();
  if (n < 1e-12) throw ValidationError("state ket has zero norm");
  const Mat v = m / n;
  return v * v.adjoint();
}

Json node_to_json(const ProtocolNode& node) {
  Json j;
  if (node.is_leaf()) {
    const LeafNode& leaf = node.leaf();
    if (leaf.verdict) {
      j["verdict"] = *leaf.verdict;
    } else {
      j["fail"] = Json{{"labels", leaf.fail->labels},
                       {"space_dims", Json::array({leaf.fail->space_dim_a, leaf.fail->space_dim_b})}};
    }
    return j;
  }
  const MeasureNode& m = node.measure();
  j["party"] = side_name(m.party);
  j["projectors"] = Json::array();
  for (const auto& p : m.projectors) j["projectors"].push_back(matrix_to_json(p.matrix()));
  j["children"] = Json::array();
  for (const auto& c : m.children) j["children"].push_back(node_to_json(*c));
  return j;
}

std::unique_ptr<ProtocolNode> node_from_json(const Json& j, int d_a, int d_b, int& depth) {
  depth = 0;
  auto node = std::make_unique<ProtocolNode>();
  if (j.contains("verdict")) {
    if (!j["verdict"].is_string()) throw ParseError("leaf verdict must be a string");
    node->node = LeafNode{j["verdict"].get<std::string>(), std::nullopt};
    return node;
  }
  if (j.contains("fail")) {
    const Json& f = j["fail"];
    FailCertificate cert;
    if (f.contains("labels"))
      for (const auto& l : f["labels"]) cert.labels.push_back(l.get<std::string>());
    if (f.contains("space_dims") && f["space_dims"].is_array() && f["space_dims"].size() == 2) {
      cert.space_dim_a = f["space_dims"][0].get<int>();
      cert.space_dim_b = f["space_dims"][1].get<int>();
    }
    node->node = LeafNode{std::nullopt, std::move(cert)};
    return node;
  }
  if (!j.contains("party") || !j.contains("projectors") || !j.contains("children"))
    throw ParseError("protocol node needs verdict, fail, or party/projectors/children");

  const std::string party = j["party"].get<std::string>();
  if (party != "A" && party != "B") throw ParseError("party must be A or B");
  MeasureNode m;
  m.party = party == "A" ? Side::A : Side::B;
  const int local_dim = m.party == Side::A ? d_a : d_b;

  if (!j["projectors"].is_array() || j["projectors"].size() < 2)
    throw ValidationError("measurement needs at least 2 projectors");
  if (!j["children"].is_array() || j["children"].size() != j["projectors"].size())
    throw ParseError("children count must match projector count");

  Mat sum = Mat::Zero(local_dim, local_dim);
  for (const auto& pj : j["projectors"]) {
    const Mat p = matrix_from_json(pj);
    if (p.rows() != local_dim || p.cols() != local_dim)
      throw DimensionError("projector dim does not match local dim");
    const HermitianOperator h(p, 1e-8);
    if (max_abs(h.matrix() * h.matrix() - h.matrix()) > 1e-8)
      throw ValidationError("projector is not idempotent");
    sum += h.matrix();
    m.projectors.push_back(h);
    m.restrictions.push_back(column_space(h.matrix()));
  }
  if (max_abs(sum - Mat::Identity(local_dim, local_dim)) > 1e-8)
    throw ValidationError("projectors do not sum to the identity");
  for (std::size_t i = 0; i < m.projectors.size(); ++i)
    for (std::size_t k = i + 1; k < m.projectors.size(); ++k)
      if (max_abs(m.projectors[i].matrix() * m.projectors[k].matrix()) > 1e-8)
        throw ValidationError("projectors are not mutually orthogonal");

  int max_child = 0;
  for (std::size_t k = 0; k < m.children.size() || k < j["children"].size(); ++k) {
    const int rank = m.restrictions[k].sub_dim();
    const int child_da = m.party == Side::A ? rank : d_a;
    const int child_db = m.party == Side::B ? rank : d_b;
    int child_depth = 0;
    m.children.push_back(node_from_json(j["children"][k], child_da, child_db, child_depth));
    max_child = std::max(max_child, child_depth);
    if (m.children.size() == j["children"].size()) break;
  }
  depth = 1 + max_child;
  node->node = std::move(m);
  return node;
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("JSON parse failure in '" + path + "': " + e.what());
  }
}

Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError("JSON parse failure in " + what + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << content;
}

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(row);
  }
  return rows;
}

Mat matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw ParseError("matrix row must be a non-empty array");
  const std::size_t cols = j[0].size();
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ParseError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = entry_from_json(j[i][c]);
  }
  if (!all_finite(m)) throw ValidationError("matrix has non-finite entries");
  return m;
}

Json state_set_to_json(const StateSet& s) {
  Json j;
  j["dA"] = s.d_a();
  j["dB"] = s.d_b();
  j["states"] = Json::array();
  for (const auto& st : s.states()) {
    Json e;
    e["label"] = st.label();
    e["rho"] = matrix_to_json(st.rho().matrix());
    if (st.is_product()) {
      e["tau"] = matrix_to_json(st.product_parts()->tau.matrix());
      e["sigma"] = matrix_to_json(st.product_parts()->sigma.matrix());
    }
    j["states"].push_back(e);
  }
  return j;
}

StateSet state_set_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dA") || !j.contains("dB") || !j.contains("states"))
    throw ParseError("state set needs dA, dB, states");
  const int d_a = static_cast<int>(number_at(j["dA"], "dA"));
  const int d_b = static_cast<int>(number_at(j["dB"], "dB"));
  if (!j["states"].is_array()) throw ParseError("states must be an array");

  std::vector<BipartiteState> states;
  for (const auto& e : j["states"]) {
    if (!e.contains("label") || !e["label"].is_string()) throw ParseError("state needs a label");
    if (!e.contains("rho")) throw ParseError("state needs rho");
    const std::string label = e["label"].get<std::string>();
    Mat rho = expand_ket(matrix_from_json(e["rho"]));
    if (rho.rows() != d_a * d_b)
      throw DimensionError("state '" + label + "': rho dim != dA*dB");

    std::optional<ProductParts> product;
    if (e.contains("tau") != e.contains("sigma"))
      throw ParseError("state '" + label + "': tau and sigma must come together");
    if (e.contains("tau")) {
      Mat tau = expand_ket(matrix_from_json(e["tau"]));
      Mat sigma = expand_ket(matrix_from_json(e["sigma"]));
      if (tau.rows() != d_a || sigma.rows() != d_b)
        throw DimensionError("state '" + label + "': factor dims");
      product = ProductParts{HermitianOperator(tau, 1e-8), HermitianOperator(sigma, 1e-8)};
    }
    states.emplace_back(label, d_a, d_b, HermitianOperator(rho, 1e-8), std::move(product));
  }
  return StateSet(d_a, d_b, std::move(states));
}

StateSet load_state_set(const std::string& path) {
  return state_set_from_json(load_json_file(path));
}

Json upb_params_to_json(const UpbParams& p) {
  return Json{{"thetaA", p.theta_a}, {"gammaA", p.gamma_a}, {"phiA", p.phi_a},
              {"thetaB", p.theta_b}, {"gammaB", p.gamma_b}, {"phiB", p.phi_b}};
}

UpbParams upb_params_from_json(const Json& j) {
  UpbParams p;
  if (!j.is_object()) throw ParseError("params must be an object");
  for (const char* key : {"thetaA", "gammaA", "phiA", "thetaB", "gammaB", "phiB"})
    if (!j.contains(key)) throw ParseError(std::string("params missing ") + key);
  p.theta_a = number_at(j["thetaA"], "thetaA");
  p.gamma_a = number_at(j["gammaA"], "gammaA");
  p.phi_a = number_at(j["phiA"], "phiA");
  p.theta_b = number_at(j["thetaB"], "thetaB");
  p.gamma_b = number_at(j["gammaB"], "gammaB");
  p.phi_b = number_at(j["phiB"], "phiB");
  return p;
}

UpbParams load_upb_params(const std::string& path) {
  return upb_params_from_json(load_json_file(path));
}

Json protocol_to_json(const Protocol& p) {
  Json j;
  j["dA"] = p.d_a;
  j["dB"] = p.d_b;
  j["depth"] = p.depth;
  j["root"] = node_to_json(*p.root);
  return j;
}

Protocol protocol_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dA") || !j.contains("dB") || !j.contains("root"))
    throw ParseError("protocol needs dA, dB, root");
  Protocol p;
  p.d_a = static_cast<int>(number_at(j["dA"], "dA"));
  p.d_b = static_cast<int>(number_at(j["dB"], "dB"));
  if (p.d_a < 1 || p.d_b < 1 || p.d_a * p.d_b > kMaxDim)
    throw DimensionError("protocol dims out of range");
  p.root = node_from_json(j["root"], p.d_a, p.d_b, p.depth);
  return p;
}

Protocol load_protocol(const std::string& path) {
  return protocol_from_json(load_json_file(path));
}

Json space_to_json(const NondisturbingSpace& space) {
  Json j;
  j["side"] = side_name(space.side);
  j["dim"] = space.dim;
  j["basis"] = Json::array();
  for (const auto& b : space.basis) j["basis"].push_back(matrix_to_json(b.matrix()));
  return j;
}

Json thm1_report_to_json(const Thm1Report& rep) {
  Json entries = Json::array();
  entries.push_back(Json{{"condition", "sum_tr_equals_1"},
                         {"residual", std::abs(rep.sum_tr - 1.0)},
                         {"pass", rep.cond_sum}});
  entries.push_back(Json{{"condition", "max_tr_equals_chi"},
                         {"residual", std::abs(rep.max_tr - rep.chi)},
                         {"pass", rep.cond_max}});
  entries.push_back(Json{{"condition", "nondisturbing"},
                         {"residual", rep.nondist_residual},
                         {"pass", rep.cond_nondisturbing}});
  Json j;
  j["conditions"] = entries;
  j["chi"] = rep.chi;
  j["min_tr"] = rep.min_tr;
  j["min_bound"] = rep.min_bound;
  j["chi_allows_identity"] = rep.chi_allows_identity;
  j["kernel_condition"] = rep.kernel_condition;
  return j;
}

Json case_result_to_json(const CaseResult& res) {
  Json j;
  j["cycle"] = res.cycle_id;
  j["verdict"] = verdict_name(res.verdict);
  j["margin"] = res.margin;
  j["linear_dim"] = res.linear_dim;
  if (res.free_params)
    j["free_params"] = Json::array({(*res.free_params)[0], (*res.free_params)[1], (*res.free_params)[2]});
  if (!res.reasoning.empty()) j["reasoning"] = res.reasoning;
  return j;
}

Json theorem4_report_to_json(const Theorem4Report& rep) {
  Json j;
  j["certified"] = rep.certified;
  j["principal_domain"] = rep.principal_domain;
  j["chi"] = rep.chi;
  j["min_overlap_bound"] = rep.min_overlap_bound;
  j["kernel_condition"] = rep.kernel_condition;
  j["side_a"] = Json::array();
  j["side_b"] = Json::array();
  for (const auto& r : rep.side_a) j["side_a"].push_back(case_result_to_json(r));
  for (const auto& r : rep.side_b) j["side_b"].push_back(case_result_to_json(r));
  return j;
}

}  // namespace locc
