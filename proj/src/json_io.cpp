#include "deqfi/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace deqfi::io {

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix JSON must be a non-empty array of rows");
  const std::size_t d = j.size();
  ComplexMatrix m(d);
  for (std::size_t i = 0; i < d; ++i) {
    const json& row = j.at(i);
    if (!row.is_array() || row.size() != d)
      throw std::invalid_argument("matrix JSON must be square");
    for (std::size_t k = 0; k < d; ++k) {
      const json& e = row.at(k);
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("matrix entries must be [re, im] pairs");
      m(i, k) = cd(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

json state_to_json(const DensityMatrix& rho) {
  return json{{"n", rho.n_qubits()}, {"rho", matrix_to_json(rho.mat())}};
}

DensityMatrix state_from_json(const json& j, double tol) {
  if (!j.contains("n") || !j.contains("rho"))
    throw std::invalid_argument("state JSON needs fields \"n\" and \"rho\"");
  return DensityMatrix(j.at("n").get<int>(), matrix_from_json(j.at("rho")), tol);
}

json channel_to_json(const KrausChannel& ch) {
  json ops = json::array();
  for (const auto& k : ch.kraus()) ops.push_back(matrix_to_json(k));
  return json{{"n", ch.n_qubits()}, {"kraus", std::move(ops)}};
}

KrausChannel channel_from_json(const json& j, double tol) {
  if (!j.contains("n") || !j.contains("kraus"))
    throw std::invalid_argument("channel JSON needs fields \"n\" and \"kraus\"");
  const json& ops = j.at("kraus");
  if (!ops.is_array() || ops.empty())
    throw std::invalid_argument("channel JSON needs a non-empty Kraus list");
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(ops.size());
  for (const json& k : ops) kraus.push_back(matrix_from_json(k));
  KrausChannel ch(j.at("n").get<int>(), std::move(kraus));
  if (!validate_cptp(ch, std::max(tol, 1e-9)))
    throw std::invalid_argument("deserialized channel is not CPTP");
  return ch;
}

json choi_to_json(const ChoiMatrix& choi) {
  return json{{"n", choi.n_qubits()}, {"choi", matrix_to_json(choi.mat())}};
}

json verdict_to_json(const ClassVerdict& v) {
  json out{{"verdict", verdict_name(v.verdict)}, {"detail", v.detail}};
  if (v.violation) {
    out["certificate"] = {
        {"type", "choi_entry"},
        {"i", v.violation->out_row},
        {"j", v.violation->out_col},
        {"x", v.violation->in_row},
        {"y", v.violation->in_col},
        {"value", {v.violation->value.real(), v.violation->value.imag()}},
    };
  } else if (v.verdict == Verdict::NonMember && !v.pattern_dims.empty()) {
    out["certificate"] = {
        {"type", "span_coverage"},
        {"kraus_space_dim", v.space_dim},
        {"covered_dim", v.covered_dim},
        {"per_pattern_dims", v.pattern_dims},
    };
  } else if (v.verdict == Verdict::NonMember && v.metric != 0.0) {
    out["certificate"] = {{"type", "metric"}, {"value", v.metric}};
  }
  return out;
}

json hierarchy_to_json(const HierarchyReport& rep) {
  return json{
      {"hdp", verdict_to_json(rep.hdp)},
      {"dio", verdict_to_json(rep.dio)},
      {"sio", verdict_to_json(rep.sio)},
      {"shp", verdict_to_json(rep.shp)},
      {"region", rep.region},
  };
}

json hdf_to_json(const HDFunction& f) {
  return json{{"table", f.table}, {"mask", f.mask}, {"reorder", f.reorder}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace deqfi::io
