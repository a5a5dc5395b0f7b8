// deqfi: dephasing-estimation resource toolkit.
//
// Subcommands: qfi, pe-qfi, classify, cone, enumerate-hdf, transform,
// reproduce. Exit codes: 0 all checks pass, 1 a check failed, 2 usage or
// I/O error. DEQFI_TOL overrides the default validation tolerance.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "deqfi/classify.hpp"
#include "deqfi/fisher.hpp"
#include "deqfi/json_io.hpp"
#include "deqfi/kernels.hpp"
#include "deqfi/scenarios.hpp"
#include "deqfi/transform.hpp"

namespace {

using namespace deqfi;
using deqfi::io::json;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
  }
}

BlochVector parse_bloch(const std::string& csv) {
  std::istringstream in(csv);
  BlochVector b;
  char c1 = 0, c2 = 0;
  if (!(in >> b.x >> c1 >> b.y >> c2 >> b.z) || c1 != ',' || c2 != ',')
    throw std::invalid_argument("expected a Bloch vector as x,y,z");
  return b;
}

KrausChannel load_channel(const std::string& path, const std::string& builtin,
                          int n_qubits, double phi, double tol) {
  if (!builtin.empty()) {
    NamedChannel which;
    if (builtin == "W") which = NamedChannel::W;
    else if (builtin == "R") which = NamedChannel::R;
    else if (builtin == "N") which = NamedChannel::N;
    else if (builtin == "Z") which = NamedChannel::Z;
    else if (builtin == "U_sio") which = NamedChannel::USio;
    else if (builtin == "V_swap") which = NamedChannel::VSwap;
    else if (builtin == "U_phase") which = NamedChannel::UPhase;
    else throw std::invalid_argument("unknown builtin channel: " + builtin);
    const int n = n_qubits > 0 ? n_qubits : minimal_qubits(which);
    return named_channel(which, n, phi);
  }
  if (path.empty())
    throw std::invalid_argument("need --channel <file> or --builtin <name>");
  return io::channel_from_json(io::load_json_file(path), tol);
}

int run_reproduce(const std::string& name, const scenarios::Params& params,
                  bool as_json, const std::string& out_path) {
  const scenarios::Report rep = scenarios::run(name, params);
  if (as_json) {
    json checks = json::array();
    for (const auto& c : rep.checks)
      checks.push_back({{"label", c.label}, {"pass", c.pass}, {"detail", c.detail}});
    const json j{{"scenario", rep.name},
                 {"theta", params.theta},
                 {"seed", params.seed},
                 {"pass", rep.all_pass()},
                 {"checks", checks}};
    emit(j.dump(2), out_path);
  } else {
    emit(scenarios::report_to_text(rep), out_path);
  }
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("DEQFI_TOL")) {
    try {
      set_default_tol(std::stod(env));
    } catch (...) {
      std::cerr << "invalid DEQFI_TOL value\n";
      return 2;
    }
  }

  CLI::App app{"dephasing-estimation resource toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  double theta = 0.5;
  double tol = default_tol();
  std::uint64_t seed = 1;
  bool as_json = false;
  bool as_csv = false;
  std::string out_path;
  app.add_option("--theta", theta, "phase damping strength (default 0.5)");
  app.add_option("--tol", tol, "validation tolerance");
  app.add_option("--seed", seed, "seed for randomized scenarios");
  app.add_flag("--json", as_json, "emit structured JSON");
  app.add_flag("--csv", as_csv, "emit CSV where applicable");
  app.add_option("--out", out_path, "write output to a file instead of stdout");

  // qfi
  auto* cmd_qfi = app.add_subcommand("qfi", "dephasing-estimation QFI of a state");
  std::string state_path;
  cmd_qfi->add_option("--state", state_path, "state JSON file")->required();

  // pe-qfi
  auto* cmd_pe = app.add_subcommand("pe-qfi", "phase-estimation QFI of a state");
  std::string pe_state_path;
  double epsilon = 1.0;
  cmd_pe->add_option("--state", pe_state_path, "state JSON file")->required();
  cmd_pe->add_option("--epsilon", epsilon, "single-qubit energy gap");

  // classify
  auto* cmd_cls = app.add_subcommand("classify", "operation-class report for a channel");
  std::string channel_path, builtin;
  int cls_n = 0;
  double phi = 0.0;
  std::string choi_out;
  cmd_cls->add_option("--channel", channel_path, "channel JSON file");
  cmd_cls->add_option("--builtin", builtin,
                      "one of W, R, N, Z, U_sio, V_swap, U_phase");
  cmd_cls->add_option("--n", cls_n, "qubit count for builtin channels");
  cmd_cls->add_option("--phi", phi, "phase for U_phase");
  cmd_cls->add_option("--choi", choi_out, "also write the Choi matrix JSON here");

  // cone
  auto* cmd_cone = app.add_subcommand("cone", "single-qubit reachability");
  std::string source_csv, target_csv;
  int grid_points = 0;
  cmd_cone->add_option("--source", source_csv, "source Bloch vector x,y,z")->required();
  cmd_cone->add_option("--target", target_csv, "target Bloch vector x,y,z");
  cmd_cone->add_option("--grid", grid_points, "emit boundary on a z grid of this size");

  // enumerate-hdf
  auto* cmd_hdf = app.add_subcommand("enumerate-hdf",
                                     "Hamming-distance-preserving bijections");
  int hdf_n = 2;
  cmd_hdf->add_option("--n", hdf_n, "bit count (1..4)")->required();

  // transform
  auto* cmd_tr = app.add_subcommand("transform", "constructive channels");
  auto* tr_golden = cmd_tr->add_subcommand("golden",
                                           "channel mapping the uniform state to a pure target");
  std::string golden_target;
  tr_golden->add_option("--target", golden_target, "pure state JSON file")->required();
  auto* tr_merge = cmd_tr->add_subcommand("merge", "coherence-merging channel");
  std::string merge_state;
  std::size_t merge_i = 0, merge_j = 0;
  tr_merge->add_option("--state", merge_state, "state JSON file")->required();
  tr_merge->add_option("--i", merge_i, "first target basis index")->required();
  tr_merge->add_option("--j", merge_j, "second target basis index")->required();
  auto* tr_extreme = cmd_tr->add_subcommand("extreme", "boundary channel of the cone");
  std::string ex_source, ex_target;
  tr_extreme->add_option("--source", ex_source, "source Bloch vector x,y,z")->required();
  tr_extreme->add_option("--target", ex_target, "target Bloch vector x,y,z")->required();
  cmd_tr->require_subcommand(1);

  // reproduce
  auto* cmd_rep = app.add_subcommand("reproduce", "run a named scenario");
  std::string scenario;
  cmd_rep->add_option("scenario", scenario, "scenario name")
      ->required()
      ->check(CLI::IsMember(scenarios::scenario_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints message or help text
    return code == 0 ? 0 : 2;
  }
  set_default_tol(tol);

  try {
    if (*cmd_qfi) {
      const DensityMatrix rho = io::state_from_json(io::load_json_file(state_path), tol);
      const double f = dephasing_qfi(rho, theta);
      if (as_json)
        emit(json{{"theta", theta}, {"qfi", f}}.dump(2), out_path);
      else {
        std::ostringstream os;
        os.precision(12);
        os << f << "\n";
        emit(os.str(), out_path);
      }
      return 0;
    }

    if (*cmd_pe) {
      const DensityMatrix rho = io::state_from_json(io::load_json_file(pe_state_path), tol);
      const double f = pe_qfi(rho, Hamiltonian(rho.n_qubits(), epsilon));
      if (as_json)
        emit(json{{"epsilon", epsilon}, {"qfi", f}}.dump(2), out_path);
      else {
        std::ostringstream os;
        os.precision(12);
        os << f << "\n";
        emit(os.str(), out_path);
      }
      return 0;
    }

    if (*cmd_cls) {
      const KrausChannel ch = load_channel(channel_path, builtin, cls_n, phi, tol);
      const HierarchyReport rep = hierarchy_report(ch, tol);
      if (!choi_out.empty())
        io::save_json_file(choi_out, io::choi_to_json(choi_of(ch)));
      if (as_json) {
        emit(io::hierarchy_to_json(rep).dump(2), out_path);
      } else {
        std::ostringstream os;
        os << "region: " << rep.region << "\n"
           << "  HDP: " << verdict_name(rep.hdp.verdict) << " -- " << rep.hdp.detail << "\n"
           << "  DIO: " << verdict_name(rep.dio.verdict) << " -- " << rep.dio.detail << "\n"
           << "  SIO: " << verdict_name(rep.sio.verdict) << " -- " << rep.sio.detail << "\n"
           << "  SHP: " << verdict_name(rep.shp.verdict) << " -- " << rep.shp.detail << "\n";
        emit(os.str(), out_path);
      }
      return 0;
    }

    if (*cmd_cone) {
      const BlochVector src = parse_bloch(source_csv);
      if (grid_points > 0) {
        std::vector<double> grid(grid_points);
        for (int i = 0; i < grid_points; ++i)
          grid[i] = -0.99 + 1.98 * double(i) / double(std::max(1, grid_points - 1));
        const auto boundary = cone_boundary(src, grid);
        std::ostringstream os;
        os.precision(12);
        if (as_csv || !as_json) {
          os << "z,r_max\n";
          for (const auto& [z, r] : boundary) os << z << "," << r << "\n";
        } else {
          json rows = json::array();
          for (const auto& [z, r] : boundary) rows.push_back({{"z", z}, {"r_max", r}});
          os << rows.dump(2);
        }
        emit(os.str(), out_path);
        return 0;
      }
      if (target_csv.empty())
        throw std::invalid_argument("need --target or --grid");
      const ConeQuery q{src, parse_bloch(target_csv)};
      const bool inside = hdp_cone_contains(q, tol);
      if (as_json)
        emit(json{{"reachable", inside}}.dump(2), out_path);
      else
        emit(inside ? "reachable\n" : "not reachable\n", out_path);
      return 0;
    }

    if (*cmd_hdf) {
      const auto fs = enumerate_hdf(hdf_n);
      if (as_json) {
        json arr = json::array();
        for (const auto& f : fs) arr.push_back(io::hdf_to_json(f));
        emit(arr.dump(2), out_path);
      } else {
        std::ostringstream os;
        os << fs.size() << " Hamming-distance-preserving bijections on " << hdf_n
           << "-bit strings\n";
        for (const auto& f : fs) {
          os << "  table (";
          for (std::size_t i = 0; i < f.table.size(); ++i)
            os << f.table[i] << (i + 1 < f.table.size() ? "," : "");
          os << ")  mask " << f.mask << "  reorder (";
          for (std::size_t i = 0; i < f.reorder.size(); ++i)
            os << f.reorder[i] << (i + 1 < f.reorder.size() ? "," : "");
          os << ")\n";
        }
        emit(os.str(), out_path);
      }
      return 0;
    }

    if (*cmd_tr) {
      if (*tr_golden) {
        const DensityMatrix target =
            io::state_from_json(io::load_json_file(golden_target), tol);
        const std::size_t d = target.dim();
        // Amplitudes from the dominant column of the projector.
        std::size_t anchor = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < d; ++i)
          if (target.entry(i, i).real() > best) {
            best = target.entry(i, i).real();
            anchor = i;
          }
        std::vector<cd> amp(d);
        const double root = std::sqrt(best);
        for (std::size_t i = 0; i < d; ++i) amp[i] = target.entry(i, anchor) / root;
        double norm = 0.0;
        for (const cd& a : amp) norm += std::norm(a);
        if (std::abs(norm - 1.0) > 1e-6)
          throw std::invalid_argument("golden targets must be pure states");
        norm = std::sqrt(norm);
        for (cd& a : amp) a /= norm;
        const std::vector<double> eta(d, 0.0);
        emit(io::channel_to_json(golden_transform(amp, eta)).dump(2), out_path);
        return 0;
      }
      if (*tr_merge) {
        const DensityMatrix rho =
            io::state_from_json(io::load_json_file(merge_state), tol);
        const MergeSpec spec = make_full_merge_spec(rho, merge_i, merge_j, tol);
        emit(io::channel_to_json(merge_channel(spec)).dump(2), out_path);
        return 0;
      }
      const ConeQuery q{parse_bloch(ex_source), parse_bloch(ex_target)};
      emit(io::channel_to_json(extreme_cone_channel(q, tol)).dump(2), out_path);
      return 0;
    }

    if (*cmd_rep) {
      scenarios::Params params;
      params.theta = theta;
      params.seed = seed;
      params.tol = tol;
      return run_reproduce(scenario, params, as_json, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
