// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vibsim/boson.hpp"
#include "vibsim/dynamics.hpp"
#include "vibsim/doktorov.hpp"
#include "vibsim/hamiltonian.hpp"
#include "vibsim/io.hpp"
#include "vibsim/statevector.hpp"
#include "vibsim/util.hpp"
#include "vibsim/uvcc.hpp"
#include "vibsim/vscf.hpp"

namespace {

using nlohmann::json;
using namespace vibsim;

Scheme scheme_from_string(const std::string& s) {
  if (s == "direct") return Scheme::Direct;
  if (s == "compact") return Scheme::Compact;
  throw ConfigError("scheme must be \"direct\" or \"compact\"");
}

json meta_for(const json& cfg) {
  return json{{"tool", "vibsim"},
              {"version", kToolVersion},
              {"units", "atomic"},
              {"config", cfg},
              {"config_hash", config_hash_hex(cfg.dump())}};
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::fputs(content.c_str(), stdout);
  else
    write_text_file(out_path, content);
}

json complex_vector_json(const Eigen::VectorXcd& v) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k)
    arr.push_back(json::array({v(k).real(), v(k).imag()}));
  return arr;
}

struct SpectrumArgs {
  std::string ff_path;
  std::string out_path;
  int levels = 4;
  std::string scheme = "compact";
  int order = 4;
  int n_lowest = 8;
  bool cm1 = false;
};

void run_spectrum(const SpectrumArgs& a) {
  const ForceField ff = load_force_field(a.ff_path);
  const EncodingSpec enc{scheme_from_string(a.scheme), ff.modes, a.levels};
  HamiltonianOptions opts;
  opts.order = a.order;
  const VibHamiltonian h = build_qubit_hamiltonian(ff, enc, opts);
  const auto levels = encoded_subspace_spectrum(h, a.n_lowest);

  const json cfg{{"subcommand", "spectrum"}, {"ff", a.ff_path},
                 {"d", a.levels},            {"scheme", a.scheme},
                 {"order", a.order},         {"n_lowest", a.n_lowest},
                 {"cm1", a.cm1}};
  const double unit = a.cm1 ? kHartreeToCm1 : 1.0;
  const std::string energy_col = a.cm1 ? "energy_cm1" : "energy_hartree";
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < levels.size(); ++k)
    rows.push_back({std::to_string(k), fmt_g17(levels[k] * unit),
                    fmt_g17((levels[k] - levels[0]) * unit)});
  emit(a.out_path,
       csv_document(cfg.dump(), {"index", energy_col, "energy_relative_to_ground"},
                    rows));
}

struct VscfArgs {
  std::string ff_path;
  std::string out_path;
  int levels = 4;
  int order = 4;
  double tol = 1e-10;
  int max_sweeps = 200;
  double damping = 0.0;
};

void run_vscf(const VscfArgs& a) {
  const ForceField ff = load_force_field(a.ff_path);
  HamiltonianOptions hopts;
  hopts.order = a.order;
  const BosonPolynomial h = build_second_quantized(ff, hopts);
  VscfOptions opts;
  opts.tol = a.tol;
  opts.max_sweeps = a.max_sweeps;
  opts.damping = a.damping;
  const VscfResult res = vscf(h, ff.modes, a.levels, opts);

  const json cfg{{"subcommand", "vscf"},   {"ff", a.ff_path},
                 {"d", a.levels},          {"order", a.order},
                 {"tol", a.tol},           {"max_sweeps", a.max_sweeps},
                 {"damping", a.damping}};
  json orbitals = json::array();
  for (const auto& phi : res.orbitals) orbitals.push_back(complex_vector_json(phi));
  const json out{{"meta", meta_for(cfg)},
                 {"energy", res.energy},
                 {"iterations", res.iterations},
                 {"converged", res.converged},
                 {"orbitals", orbitals}};
  emit(a.out_path, out.dump(2) + "\n");
}

struct VqeArgs {
  std::string ff_path;
  std::string out_path;
  int levels = 2;
  std::string scheme = "compact";
  int order = 4;
  int rank = 2;
  std::string reference = "harmonic";
  double step = 0.1;
  double grad_eps = 1e-4;
  double grad_tol = 1e-9;
  int max_iter = 20000;
  double init_perturbation = 0.01;
  std::uint64_t seed = 0;
  bool pure_gd = false;
};

void run_vqe(const VqeArgs& a) {
  const ForceField ff = load_force_field(a.ff_path);
  const EncodingSpec enc{scheme_from_string(a.scheme), ff.modes, a.levels};
  HamiltonianOptions hopts;
  hopts.order = a.order;
  const VibHamiltonian h = build_qubit_hamiltonian(ff, enc, hopts);

  StateVector reference;
  if (a.reference == "harmonic") {
    reference = prepare_basis(
        encode_basis_state(std::vector<int>(ff.modes, 0), enc));
  } else if (a.reference == "vscf") {
    const VscfResult scf = vscf(h.second_quantized, ff.modes, a.levels);
    reference = product_state(scf.orbitals, enc);
  } else {
    throw ConfigError("reference must be \"harmonic\" or \"vscf\"");
  }

  const AnsatzCircuit circuit = build_circuit(ff.modes, a.levels, enc.scheme, a.rank);
  VqeOptions opts;
  opts.step = a.step;
  opts.grad_eps = a.grad_eps;
  opts.grad_tol = a.grad_tol;
  opts.max_iter = a.max_iter;
  opts.init_perturbation = a.init_perturbation;
  opts.seed = a.seed;
  opts.pure_gd = a.pure_gd;
  const VqeResult res = vqe_minimize(h.qubit_form, circuit, reference, opts);

  const json cfg{{"subcommand", "vqe"},
                 {"ff", a.ff_path},
                 {"d", a.levels},
                 {"scheme", a.scheme},
                 {"order", a.order},
                 {"rank", a.rank},
                 {"reference", a.reference},
                 {"step", a.step},
                 {"grad_eps", a.grad_eps},
                 {"grad_tol", a.grad_tol},
                 {"max_iter", a.max_iter},
                 {"init_perturbation", a.init_perturbation},
                 {"seed", a.seed},
                 {"pure_gd", a.pure_gd}};
  json trace = json::array();
  trace.push_back(json{{"iter", 0}, {"energy", res.energy_trace[0]}});
  for (std::size_t k = 1; k < res.energy_trace.size(); ++k)
    trace.push_back(json{{"iter", k},
                         {"energy", res.energy_trace[k]},
                         {"grad_norm", res.grad_norm_trace[k - 1]}});
  const json out{{"meta", meta_for(cfg)},
                 {"energy", res.energy},
                 {"theta", res.theta},
                 {"iterations", res.iterations},
                 {"converged", res.converged},
                 {"diverged", res.diverged},
                 {"n_gates", circuit.gates.size()},
                 {"n_params", circuit.n_params},
                 {"trace", trace}};
  emit(a.out_path, out.dump(2) + "\n");
}

struct DynamicsArgs {
  std::string ff_path;
  std::string out_path;
  std::string localize_path;
  std::string initial;
  int levels = 2;
  std::string scheme = "compact";
  int order = 4;
  double t_max = 10.0;
  int samples = 50;
  double steps_per_unit = 100.0;
};

Eigen::MatrixXd load_rotation(const std::string& path, int modes) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("rotation: malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("U"))
    throw ConfigError("rotation: need field \"U\"");
  const json& ju = j.at("U");
  if (!ju.is_array() || static_cast<int>(ju.size()) != modes)
    throw ConfigError("rotation: \"U\" must be a " + std::to_string(modes) +
                      "-row matrix");
  Eigen::MatrixXd u(modes, modes);
  for (int r = 0; r < modes; ++r) {
    if (!ju[r].is_array() || static_cast<int>(ju[r].size()) != modes)
      throw ConfigError("rotation: \"U\" rows must have " +
                        std::to_string(modes) + " entries");
    for (int c = 0; c < modes; ++c) {
      if (!ju[r][c].is_number())
        throw ConfigError("rotation: \"U\" entries must be numbers");
      u(r, c) = ju[r][c].get<double>();
    }
  }
  return u;
}

std::vector<int> parse_occupations(const std::string& text, int modes, int levels) {
  std::vector<int> occ(modes, 0);
  if (text.empty()) return occ;
  std::size_t pos = 0;
  for (int m = 0; m < modes; ++m) {
    std::size_t next = text.find(',', pos);
    const std::string tok = text.substr(pos, next == std::string::npos
                                                 ? std::string::npos
                                                 : next - pos);
    try {
      occ[m] = std::stoi(tok);
    } catch (const std::exception&) {
      throw ConfigError("initial state: occupation \"" + tok + "\" is not a number");
    }
    if (occ[m] < 0 || occ[m] >= levels)
      throw ConfigError("initial state: occupation out of range [0, d)");
    if (next == std::string::npos) {
      if (m != modes - 1)
        throw ConfigError("initial state: need one occupation per mode");
      return occ;
    }
    pos = next + 1;
  }
  throw ConfigError("initial state: too many occupations");
}

void run_dynamics(const DynamicsArgs& a) {
  const ForceField ff = load_force_field(a.ff_path);
  const EncodingSpec enc{scheme_from_string(a.scheme), ff.modes, a.levels};
  HamiltonianOptions hopts;
  hopts.order = a.order;

  Eigen::MatrixXd u;
  const Eigen::MatrixXd* localize = nullptr;
  if (!a.localize_path.empty()) {
    u = load_rotation(a.localize_path, ff.modes);
    localize = &u;
  }
  const VibHamiltonian h = build_qubit_hamiltonian(ff, enc, hopts, localize);

  if (a.t_max < 0.0) throw ConfigError("t-max must be non-negative");
  if (a.samples < 1) throw ConfigError("samples must be >= 1");
  std::vector<double> times;
  for (int k = 0; k <= a.samples; ++k)
    times.push_back(a.t_max * static_cast<double>(k) / a.samples);

  const std::vector<int> occ = parse_occupations(a.initial, ff.modes, a.levels);
  const StateVector psi0 = prepare_basis(encode_basis_state(occ, enc));

  std::vector<PauliSum> observables;
  std::vector<std::string> columns{"time"};
  for (int m = 0; m < ff.modes; ++m) {
    BosonPolynomial number(ff.modes);
    number.add(1.0, {{LadderKind::Number, m}});
    observables.push_back(encode_operator(number, enc));
    columns.push_back("n_" + std::to_string(m));
  }

  const Trajectory traj =
      observable_trajectory(psi0, h.qubit_form, observables, times, a.steps_per_unit);

  const json cfg{{"subcommand", "dynamics"},
                 {"ff", a.ff_path},
                 {"d", a.levels},
                 {"scheme", a.scheme},
                 {"order", a.order},
                 {"localize", a.localize_path},
                 {"initial", a.initial},
                 {"t_max", a.t_max},
                 {"samples", a.samples},
                 {"steps_per_unit", a.steps_per_unit}};
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::vector<std::string> row{fmt_g17(traj.times[k])};
    for (double v : traj.values[k]) row.push_back(fmt_g17(v));
    rows.push_back(std::move(row));
  }
  emit(a.out_path, csv_document(cfg.dump(), columns, rows));
}

struct FcArgs {
  std::string ff_i_path;
  std::string ff_f_path;
  std::string dusch_path;
  std::string out_path;
  int levels = 8;
  int n_initial = 1;
  int n_final = 6;
  std::string method = "dense";
  int trotter_steps = 16;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

void run_franck_condon(const FcArgs& a) {
  const ForceField ff_i = load_force_field(a.ff_i_path);
  const ForceField ff_f = load_force_field(a.ff_f_path);
  const DuschinskyData dusch =
      load_duschinsky(a.dusch_path, frequencies(ff_i), frequencies(ff_f));

  DoktorovOptions opts;
  if (a.method == "dense") {
    opts.method = DoktorovMethod::DenseExp;
  } else if (a.method == "trotter") {
    opts.method = DoktorovMethod::Trotter;
    opts.trotter_steps = a.trotter_steps;
  } else {
    throw ConfigError("method must be \"dense\" or \"trotter\"");
  }

  const FranckCondonTable table = franck_condon_table(
      ff_i, ff_f, dusch, a.levels, a.n_initial, a.n_final, opts);

  Eigen::MatrixXd factors = table.factors;
  if (a.shots > 0) {
    // Sampled estimates re-run each overlap through the swap test; states
    // live on the compact register, so d must be a power of two.
    const EncodingSpec spec{Scheme::Compact, dusch.modes(), a.levels};
    if ((a.levels & (a.levels - 1)) != 0)
      throw ConfigError("sampled franck-condon needs power-of-two levels");
    const DoktorovOperator dok = build_doktorov(dusch, a.levels, opts);
    const int nq = total_qubits(spec);

    const auto eigvecs = [&](const ForceField& ff) {
      const Eigen::MatrixXcd mat =
          fock_matrix(build_second_quantized(ff), dusch.modes(), a.levels);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
          Eigen::MatrixXcd((mat + mat.adjoint()) / 2.0));
      return Eigen::MatrixXcd(solver.eigenvectors());
    };
    const Eigen::MatrixXcd vi = eigvecs(ff_i);
    const Eigen::MatrixXcd vf = eigvecs(ff_f);
    for (int k = 0; k < a.n_initial; ++k)
      for (int l = 0; l < a.n_final; ++l) {
        const Eigen::VectorXcd moved = dok.matrix * vi.col(k);
        const double norm2 = moved.squaredNorm();
        if (norm2 <= 0.0) {
          factors(k, l) = 0.0;
          continue;
        }
        StateVector sa(nq);
        StateVector sb(nq);
        for (Eigen::Index r = 0; r < moved.size(); ++r) {
          sa[static_cast<std::size_t>(r)] = moved(r) / std::sqrt(norm2);
          sb[static_cast<std::size_t>(r)] = vf(r, l);
        }
        const std::uint64_t pair_seed =
            a.seed + static_cast<std::uint64_t>(k) * a.n_final + l;
        factors(k, l) = norm2 * swap_test_estimate(sb, sa, a.shots, pair_seed);
      }
  }

  const json cfg{{"subcommand", "franck-condon"},
                 {"ff_i", a.ff_i_path},
                 {"ff_f", a.ff_f_path},
                 {"dusch", a.dusch_path},
                 {"d", a.levels},
                 {"n_initial", a.n_initial},
                 {"n_final", a.n_final},
                 {"method", a.method},
                 {"trotter_steps", a.trotter_steps},
                 {"shots", a.shots},
                 {"seed", a.seed}};
  std::vector<std::vector<std::string>> rows;
  for (int k = 0; k < a.n_initial; ++k)
    for (int l = 0; l < a.n_final; ++l)
      rows.push_back(
          {std::to_string(k), std::to_string(l), fmt_g17(factors(k, l))});
  emit(a.out_path, csv_document(cfg.dump(), {"i_index", "f_index", "fc_factor"}, rows));
}

struct EncodeInfoArgs {
  std::string out_path;
  int atoms = 3;
  bool linear = false;
  int levels = 4;
};

void run_encode_info(const EncodeInfoArgs& a) {
  const int modes = mode_count(a.atoms, a.linear);
  const json cfg{{"subcommand", "encode-info"},
                 {"atoms", a.atoms},
                 {"linear", a.linear},
                 {"d", a.levels}};
  const json out{{"meta", meta_for(cfg)},
                 {"modes", modes},
                 {"levels", a.levels},
                 {"direct_qubits", qubit_count(a.atoms, a.linear, a.levels, Scheme::Direct)},
                 {"compact_qubits", qubit_count(a.atoms, a.linear, a.levels, Scheme::Compact)}};
  emit(a.out_path, out.dump(2) + "\n");
}

void print_error(const char* kind, const std::string& message) {
  const json err{{"error", {{"type", kind}, {"message", message}}}};
  std::fprintf(stderr, "%s\n", err.dump().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical simulator for qubit-encoded molecular vibrations"};
  app.require_subcommand(1);

  SpectrumArgs spectrum;
  auto* sp = app.add_subcommand("spectrum", "Eigenvalues of an encoded Hamiltonian");
  sp->add_option("--ff", spectrum.ff_path, "Force-field JSON file")->required();
  sp->add_option("-d,--d", spectrum.levels, "Levels per mode");
  sp->add_option("--scheme", spectrum.scheme, "direct|compact");
  sp->add_option("--order", spectrum.order, "Highest potential degree (2-4)");
  sp->add_option("--n-lowest", spectrum.n_lowest, "Number of levels to print");
  sp->add_flag("--cm1", spectrum.cm1, "Display energies in cm^-1");
  sp->add_option("-o,--output", spectrum.out_path, "Output CSV path");

  VscfArgs vscf_args;
  auto* vs = app.add_subcommand("vscf", "Mean-field ground state");
  vs->add_option("--ff", vscf_args.ff_path, "Force-field JSON file")->required();
  vs->add_option("-d,--d", vscf_args.levels, "Levels per mode");
  vs->add_option("--order", vscf_args.order, "Highest potential degree (2-4)");
  vs->add_option("--tol", vscf_args.tol, "Energy convergence tolerance");
  vs->add_option("--max-sweeps", vscf_args.max_sweeps, "Sweep limit");
  vs->add_option("--damping", vscf_args.damping, "Orbital mixing in [0,1)");
  vs->add_option("-o,--output", vscf_args.out_path, "Output JSON path");

  VqeArgs vqe_args;
  auto* vq = app.add_subcommand("vqe", "Variational ground-state search");
  vq->add_option("--ff", vqe_args.ff_path, "Force-field JSON file")->required();
  vq->add_option("-d,--d", vqe_args.levels, "Levels per mode");
  vq->add_option("--scheme", vqe_args.scheme, "direct|compact");
  vq->add_option("--order", vqe_args.order, "Highest potential degree (2-4)");
  vq->add_option("--rank", vqe_args.rank, "1 singles, 2 singles+doubles");
  vq->add_option("--reference", vqe_args.reference, "harmonic|vscf");
  vq->add_option("--step", vqe_args.step, "Gradient-descent step");
  vq->add_option("--grad-eps", vqe_args.grad_eps, "Finite-difference spacing");
  vq->add_option("--grad-tol", vqe_args.grad_tol, "Gradient stopping norm");
  vq->add_option("--max-iter", vqe_args.max_iter, "Iteration limit");
  vq->add_option("--init-perturbation", vqe_args.init_perturbation,
                 "Initial parameter spread");
  vq->add_option("--seed", vqe_args.seed, "Initialization seed");
  vq->add_flag("--pure-gd", vqe_args.pure_gd, "Disable step adaptation");
  vq->add_option("-o,--output", vqe_args.out_path, "Output JSON path");

  DynamicsArgs dyn_args;
  auto* dy = app.add_subcommand("dynamics", "Trotterized time evolution");
  dy->add_option("--ff", dyn_args.ff_path, "Force-field JSON file")->required();
  dy->add_option("-d,--d", dyn_args.levels, "Levels per mode");
  dy->add_option("--scheme", dyn_args.scheme, "direct|compact");
  dy->add_option("--order", dyn_args.order, "Highest potential degree (2-4)");
  dy->add_option("--localize", dyn_args.localize_path,
                 "JSON {\"U\": [[..]]} rotation into localized modes");
  dy->add_option("--initial", dyn_args.initial,
                 "Comma-separated initial occupations (default ground)");
  dy->add_option("--t-max", dyn_args.t_max, "Final time (atomic units)");
  dy->add_option("--samples", dyn_args.samples, "Number of output intervals");
  dy->add_option("--steps-per-unit", dyn_args.steps_per_unit,
                 "Trotter steps per unit time");
  dy->add_option("-o,--output", dyn_args.out_path, "Output CSV path");

  FcArgs fc_args;
  auto* fc = app.add_subcommand("franck-condon", "Vibronic overlap factors");
  fc->add_option("--ff-i", fc_args.ff_i_path, "Initial-surface force field")->required();
  fc->add_option("--ff-f", fc_args.ff_f_path, "Final-surface force field")->required();
  fc->add_option("--dusch", fc_args.dusch_path, "Duschinsky JSON {U, d}")->required();
  fc->add_option("-d,--d", fc_args.levels, "Levels per mode");
  fc->add_option("--n-initial", fc_args.n_initial, "Initial states in the table");
  fc->add_option("--n-final", fc_args.n_final, "Final states in the table");
  fc->add_option("--method", fc_args.method, "dense|trotter");
  fc->add_option("--trotter-steps", fc_args.trotter_steps, "Steps for trotter method");
  fc->add_option("--shots", fc_args.shots, "Swap-test shots (0 = exact)");
  fc->add_option("--seed", fc_args.seed, "Swap-test seed");
  fc->add_option("-o,--output", fc_args.out_path, "Output CSV path");

  EncodeInfoArgs ei_args;
  auto* ei = app.add_subcommand("encode-info", "Mode and qubit counts");
  ei->add_option("--atoms", ei_args.atoms, "Number of atoms")->required();
  ei->add_flag("--linear", ei_args.linear, "Linear molecule");
  ei->add_option("-d,--d", ei_args.levels, "Levels per mode");
  ei->add_option("-o,--output", ei_args.out_path, "Output JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    print_error("config", e.what());
    return 2;
  }

  try {
    if (sp->parsed()) run_spectrum(spectrum);
    if (vs->parsed()) run_vscf(vscf_args);
    if (vq->parsed()) run_vqe(vqe_args);
    if (dy->parsed()) run_dynamics(dyn_args);
    if (fc->parsed()) run_franck_condon(fc_args);
    if (ei->parsed()) run_encode_info(ei_args);
  } catch (const ConfigError& e) {
    print_error("config", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    print_error("config", e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error("numerical", e.what());
    return 3;
  }
  return 0;
}
