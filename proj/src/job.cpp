#include "kaonet/job.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "kaonet/cp_test.hpp"
#include "kaonet/equivalence.hpp"
#include "kaonet/kaon.hpp"
#include "kaonet/network.hpp"
#include "kaonet/sim.hpp"

namespace kaonet {

namespace {

constexpr double cp_violation_threshold = 1e-8;

struct CommandOutcome {
  KeyValueDoc body;
  std::vector<std::pair<std::string, std::string>> metrics;  // sweep row cells
  std::string table;                                         // optional TSV
};

// Carries the completed rows of a sweep that failed partway through.
struct SweepPartial {
  CommandOutcome outcome;
  ErrorCode code;
};

KaonParameters kaon_from(const KeyValueDoc& doc) {
  if (!doc.has("kaon.mass_short")) throw ConfigError("missing [kaon] section");
  KaonParameters p = make_kaon(
      doc.number("kaon.mass_short"), doc.number("kaon.width_short"),
      doc.number("kaon.mass_long"), doc.number("kaon.width_long"),
      Complex(doc.number_or("kaon.epsilon_re", 0.0), doc.number_or("kaon.epsilon_im", 0.0)));
  return p;
}

CircuitParameters circuit_from(const KeyValueDoc& doc) {
  KeyValueDoc flat;
  if (auto path = doc.find("circuit.file")) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot open circuit file: " + *path);
    flat = parse_key_values(in);
  }
  // Inline keys override file fields so sweeps can perturb a loaded circuit.
  for (const char* key : {"c1", "c2", "l1", "l2", "ga", "gb", "gc", "la", "lb", "lc", "g"})
    if (auto v = doc.find(std::string("circuit.") + key)) flat.set(key, *v);
  if (flat.entries().empty()) throw ConfigError("missing [circuit] section");
  std::istringstream in(serialize_key_values(flat));
  return read_circuit(in);
}

void echo_gauge(KeyValueDoc& body, double omega_o, double capacitance) {
  body.set_number("gauge.omega_o", omega_o);
  body.set_number("gauge.capacitance", capacitance);
}

void put_circuit(KeyValueDoc& body, const CircuitParameters& c) {
  body.set_number("circuit.c1", c.c1);
  body.set_number("circuit.c2", c.c2);
  body.set_number("circuit.l1", c.l1);
  body.set_number("circuit.l2", c.l2);
  body.set_number("circuit.ga", c.ga);
  body.set_number("circuit.gb", c.gb);
  body.set_number("circuit.gc", c.gc);
  body.set_number("circuit.la", c.la());
  body.set_number("circuit.lb", c.lb());
  body.set_number("circuit.lc", c.lc());
  body.set_number("circuit.g", c.gyrator);
}

void put_kaon(KeyValueDoc& body, const KaonParameters& p) {
  body.set_number("kaon.mass_short", p.mass_short());
  body.set_number("kaon.width_short", p.width_short());
  body.set_number("kaon.mass_long", p.mass_long());
  body.set_number("kaon.width_long", p.width_long());
  body.set_number("kaon.epsilon_re", p.epsilon.real());
  body.set_number("kaon.epsilon_im", p.epsilon.imag());
}

CommandOutcome run_synth(const KeyValueDoc& config) {
  KaonParameters p = kaon_from(config);
  double omega_o = config.number_or("gauge.omega_o", 1.0);
  double cap = config.number_or("gauge.capacitance", 1.0);
  SynthesisResult synth = synthesize_from_kaon(p, omega_o, cap);

  EffectiveHamiltonian h = hamiltonian_from_params(p);
  AdmittanceModel model = admittance_model(synth.circuit);
  RealMatrix perturbed = add_gyrator(classical_system(model), model);
  EquivalenceMap map = build_similarity(h.generator, perturbed);

  CommandOutcome out;
  echo_gauge(out.body, omega_o, cap);
  put_circuit(out.body, synth.circuit);
  out.body.set_number("result.epsilon_attained_re", synth.epsilon_attained.real());
  out.body.set_number("result.epsilon_attained_im", synth.epsilon_attained.imag());
  out.body.set_number("result.epsilon_phase_residual", synth.epsilon_phase_residual);
  out.body.set_number("result.similarity_residual", map.residual);
  out.body.set_number("result.similarity_det", map.determinant);

  if (auto path = config.find("output.circuit")) {
    std::ofstream file(*path);
    if (!file) throw ConfigError("cannot write circuit file: " + *path);
    write_circuit(file, synth.circuit);
    out.body.set("output.circuit", *path);
  }
  out.metrics = {{"g", format_number(synth.circuit.gyrator)},
                 {"phase_residual", format_number(synth.epsilon_phase_residual)},
                 {"similarity_residual", format_number(map.residual)}};
  return out;
}

CommandOutcome run_analyze(const KeyValueDoc& config) {
  CircuitParameters c = circuit_from(config);
  NetworkAnalysis analysis = analyze_network(c);

  CommandOutcome out;
  put_kaon(out.body, analysis.kaon);
  out.body.set_number("epsilon.quotient_re", analysis.epsilon_quotient.real());
  out.body.set_number("epsilon.quotient_im", analysis.epsilon_quotient.imag());
  out.body.set_number("epsilon.calibration_factor", epsilon_approx_calibration);
  const char* names[2] = {"long", "short"};
  for (int k = 0; k < 2; ++k) {
    std::string base = std::string("eigenvalues.") + names[k];
    auto idx = static_cast<std::size_t>(k);
    out.body.set_number(base + "_first_order_re", analysis.first_order_eigenvalues[idx].real());
    out.body.set_number(base + "_first_order_im", analysis.first_order_eigenvalues[idx].imag());
    out.body.set_number(base + "_exact_re", analysis.exact_eigenvalues[idx].real());
    out.body.set_number(base + "_exact_im", analysis.exact_eigenvalues[idx].imag());
    out.body.set_number(base + "_residual", analysis.eigenvalue_residuals[idx]);
  }
  out.metrics = {{"mass_short", format_number(analysis.kaon.mass_short())},
                 {"width_short", format_number(analysis.kaon.width_short())},
                 {"mass_long", format_number(analysis.kaon.mass_long())},
                 {"width_long", format_number(analysis.kaon.width_long())},
                 {"epsilon_abs", format_number(std::abs(analysis.kaon.epsilon))}};
  return out;
}

CommandOutcome run_cptest(const KeyValueDoc& config) {
  CircuitParameters c = circuit_from(config);
  AdmittanceModel model = admittance_model(c);
  RealMatrix perturbed = add_gyrator(classical_system(model), model);
  double xi_classical = classical_eigenbasis(perturbed).xi;
  NetworkAnalysis analysis = analyze_network(c);
  double xi_quantum = cp_test_quantum(analysis.kaon.epsilon);
  const char* verdict = xi_classical > cp_violation_threshold ? "CP violated" : "CP conserved";

  CommandOutcome out;
  out.body.set_number("cp_test.xi_classical", xi_classical);
  out.body.set_number("cp_test.xi_quantum", xi_quantum);
  out.body.set_number("cp_test.epsilon_re", analysis.kaon.epsilon.real());
  out.body.set_number("cp_test.epsilon_im", analysis.kaon.epsilon.imag());
  out.body.set("cp_test.verdict", verdict);
  out.metrics = {{"xi_classical", format_number(xi_classical)},
                 {"xi_quantum", format_number(xi_quantum)},
                 {"verdict", verdict}};
  return out;
}

std::pair<double, std::size_t> sim_grid(const KeyValueDoc& config) {
  double dt = config.number("sim.dt");
  double steps_raw = config.number("sim.steps");
  if (!(dt > 0) || !(steps_raw > 0) || steps_raw != std::floor(steps_raw))
    throw ConfigError("sim.dt and sim.steps must be positive (steps integral)");
  return {dt, static_cast<std::size_t>(steps_raw)};
}

CVector psi0_from(const KeyValueDoc& config, std::size_t dim) {
  CVector psi(dim, 0.0);
  psi[0] = 1.0;  // pure first basis state by default
  if (config.has("sim.psi0_re")) {
    std::vector<double> re = config.number_list("sim.psi0_re");
    std::vector<double> im(re.size(), 0.0);
    if (config.has("sim.psi0_im")) im = config.number_list("sim.psi0_im");
    if (re.size() != dim || im.size() != dim)
      throw ConfigError("psi0 component count != system dimension");
    for (std::size_t i = 0; i < dim; ++i) psi[i] = Complex(re[i], im[i]);
  }
  return psi;
}

CommandOutcome run_simulate(const KeyValueDoc& config) {
  auto [dt, steps] = sim_grid(config);
  bool has_kaon = config.has("kaon.mass_short");
  bool has_circuit = config.has("circuit.c1") || config.has("circuit.file");
  if (has_kaon == has_circuit)
    throw ConfigError("simulate needs exactly one of [kaon] or [circuit]");

  CommandOutcome out;
  Trajectory trajectory;
  if (has_kaon) {
    KaonParameters p = kaon_from(config);
    EffectiveHamiltonian h = hamiltonian_from_params(p);
    trajectory = integrate_quantum(h.generator, psi0_from(config, 2), dt, steps);
  } else {
    CircuitParameters c = circuit_from(config);
    AdmittanceModel model = admittance_model(c);
    RealMatrix perturbed = add_gyrator(classical_system(model), model);
    // Port voltages are the free initial data; the matching inductor
    // currents make the initial port currents vanish, so velocities start
    // at zero.
    RVector x0(4, 0.0);
    x0[0] = 1.0;
    if (config.has("sim.v0")) {
      std::vector<double> v0 = config.number_list("sim.v0");
      if (v0.size() != 2) throw ConfigError("v0 must have two components");
      x0[0] = v0[0];
      x0[1] = v0[1];
    }
    trajectory = integrate_linear(perturbed, x0, dt, steps);
  }

  std::ostringstream table;
  write_trajectory(table, trajectory);
  out.table = table.str();
  out.body.set_number("sim.dt", dt);
  out.body.set_number("sim.steps", static_cast<double>(steps));
  out.body.set("sim.kind", has_kaon ? "quantum" : "classical");
  double final_norm = 0;
  for (double v : trajectory.states.back()) final_norm += v * v;
  final_norm = std::sqrt(final_norm);
  out.body.set_number("sim.final_norm", final_norm);
  out.metrics = {{"final_norm", format_number(final_norm)}};
  return out;
}

CommandOutcome run_verify(const KeyValueDoc& config) {
  KaonParameters p = kaon_from(config);
  double omega_o = config.number_or("gauge.omega_o", 1.0);
  double cap = config.number_or("gauge.capacitance", 1.0);
  auto [dt, steps] = sim_grid(config);

  SynthesisResult synth = synthesize_from_kaon(p, omega_o, cap);
  EffectiveHamiltonian h = hamiltonian_from_params(p);
  AdmittanceModel model = admittance_model(synth.circuit);
  RealMatrix perturbed = add_gyrator(classical_system(model), model);
  EquivalenceMap map = build_similarity(h.generator, perturbed);
  double deviation = verify_diagram(h.generator, perturbed, map, psi0_from(config, 2),
                                    dt, steps);

  CommandOutcome out;
  echo_gauge(out.body, omega_o, cap);
  out.body.set_number("verify.deviation", deviation);
  out.body.set_number("verify.similarity_residual", map.residual);
  out.body.set_number("verify.similarity_det", map.determinant);
  out.body.set_number("verify.dt", dt);
  out.body.set_number("verify.steps", static_cast<double>(steps));
  out.metrics = {{"deviation", format_number(deviation)}};
  return out;
}

CommandOutcome dispatch(const std::string& command, const KeyValueDoc& config);

CommandOutcome run_sweep(const KeyValueDoc& config) {
  std::string target = config.text("sweep.target");
  if (target == "sweep") throw ConfigError("sweep cannot target itself");
  std::string parameter = config.text("sweep.parameter");
  double from = config.number("sweep.from");
  double to = config.number("sweep.to");
  double count_raw = config.number("sweep.count");
  if (!(count_raw >= 1) || count_raw != std::floor(count_raw))
    throw ConfigError("sweep.count must be a positive integer");
  std::size_t count = static_cast<std::size_t>(count_raw);

  CommandOutcome out;
  out.body.set("sweep.target", target);
  out.body.set("sweep.parameter", parameter);
  out.body.set_number("sweep.from", from);
  out.body.set_number("sweep.to", to);
  out.body.set_number("sweep.count", static_cast<double>(count));

  std::ostringstream table;
  bool header_done = false;
  for (std::size_t k = 0; k < count; ++k) {
    double value = count == 1
                       ? from
                       : from + (to - from) * static_cast<double>(k) /
                                    static_cast<double>(count - 1);
    KeyValueDoc point = config;
    point.set("command", target);
    point.set(parameter, format_number(value));
    try {
      CommandOutcome step = dispatch(target, point);
      if (!header_done) {
        table << "index\tvalue";
        for (const auto& [name, cell] : step.metrics) table << "\t" << name;
        table << "\n";
        header_done = true;
      }
      table << k << "\t" << format_number(value);
      for (const auto& [name, cell] : step.metrics) table << "\t" << cell;
      table << "\n";
    } catch (const Error& e) {
      // Completed rows survive; the trailer names the failing point and the
      // caller maps the code to the exit status.
      out.body.set("error.index", std::to_string(k));
      out.body.set("error.code", error_code_name(e.code()));
      out.body.set("error.message", e.what());
      out.table = table.str();
      throw SweepPartial{out, e.code()};
    }
  }
  out.table = table.str();
  return out;
}

CommandOutcome dispatch(const std::string& command, const KeyValueDoc& config) {
  if (command == "synth") return run_synth(config);
  if (command == "analyze") return run_analyze(config);
  if (command == "cptest") return run_cptest(config);
  if (command == "simulate") return run_simulate(config);
  if (command == "verify") return run_verify(config);
  if (command == "sweep") return run_sweep(config);
  throw ConfigError("unknown command: " + command);
}

std::string hash_hex(const KeyValueDoc& config) {
  std::uint64_t h = fnv1a(serialize_key_values(config));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string assemble(const KeyValueDoc& header, const CommandOutcome& outcome) {
  KeyValueDoc full = header;
  for (const auto& [k, v] : outcome.body.entries()) full.set(k, v);
  std::string text = serialize_key_values(full);
  if (!outcome.table.empty()) text += "\n# table\n" + outcome.table;
  return text;
}

}  // namespace

RunResult run(const KeyValueDoc& config) {
  KeyValueDoc header;
  std::string command = config.find("command").value_or("");
  header.set("tool", "kaonet");
  header.set("command", command);
  header.set("config_hash", hash_hex(config));

  try {
    if (command.empty()) throw ConfigError("missing command");
    CommandOutcome outcome = dispatch(command, config);
    header.set("status", "ok");
    return {assemble(header, outcome), 0};
  } catch (const SweepPartial& partial) {
    header.set("status", "error");
    header.set("error.code", error_code_name(partial.code));
    return {assemble(header, partial.outcome), error_exit_status(partial.code)};
  } catch (const Error& e) {
    header.set("status", "error");
    header.set("error.code", error_code_name(e.code()));
    header.set("error.message", e.what());
    return {serialize_key_values(header), error_exit_status(e.code())};
  }
}

RunResult run_config_text(const std::string& text) {
  std::istringstream in(text);
  KeyValueDoc config;
  try {
    config = parse_key_values(in);
  } catch (const Error& e) {
    KeyValueDoc header;
    header.set("tool", "kaonet");
    header.set("status", "error");
    header.set("error.code", error_code_name(e.code()));
    header.set("error.message", e.what());
    return {serialize_key_values(header), error_exit_status(e.code())};
  }
  return run(config);
}

}  // namespace kaonet
