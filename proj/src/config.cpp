#include "stirling/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "stirling/lindblad.hpp"
#include "stirling/stirling_cycle.hpp"

namespace stirling {

namespace {

struct Unit {
  std::string_view name;
  double scale;
};

constexpr Unit kAngleUnits[] = {{"", 1.0}, {"rad", 1.0}, {"deg", std::numbers::pi / 180.0}};
constexpr Unit kGammaUnits[] = {{"", 1.0}, {"MHz/T", 1.0}};
constexpr Unit kFieldUnits[] = {{"", 1.0}, {"mT", 1.0}, {"T", 1000.0}};
constexpr Unit kHertzUnits[] = {{"", 1.0}, {"Hz", 1.0}};
constexpr Unit kLengthUnits[] = {{"", 1.0}, {"A", 1.0}, {"Angstrom", 1.0}, {"\xC3\x85", 1.0}};
constexpr Unit kEnergyUnits[] = {{"", 1.0}, {"peV", 1.0}};
constexpr Unit kTimeUnits[] = {{"", 1.0}, {"ns", 1.0}, {"us", 1e3}, {"ms", 1e6}};
constexpr Unit kRateUnits[] = {{"", 1.0}, {"1/ns", 1.0}};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <std::size_t N>
double parse_quantity(std::string_view key, std::string_view value, const Unit (&units)[N],
                      std::size_t line) {
  value = trim(value);
  double number = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), number);
  if (ec != std::errc() || !std::isfinite(number)) {
    throw ParseError(line, std::string(key), "expected a number, got '" + std::string(value) + "'");
  }
  const std::string_view suffix = trim(value.substr(static_cast<std::size_t>(ptr - value.data())));
  for (const Unit& u : units) {
    if (u.name == suffix) return number * u.scale;
  }
  std::string allowed;
  for (const Unit& u : units) {
    if (!u.name.empty()) allowed += (allowed.empty() ? "" : ", ") + std::string(u.name);
  }
  throw ParseError(line, std::string(key),
                   "unknown unit '" + std::string(suffix) + "' (allowed: " + allowed + ")");
}

std::size_t parse_count(std::string_view key, std::string_view value, std::size_t line) {
  value = trim(value);
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ParseError(line, std::string(key),
                     "expected a non-negative integer, got '" + std::string(value) + "'");
  }
  return n;
}

bool parse_bool(std::string_view key, std::string_view value, std::size_t line) {
  value = trim(value);
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ParseError(line, std::string(key), "expected true/false, got '" + std::string(value) + "'");
}

std::string render_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::filesystem::path summary_path(const std::filesystem::path& trace) {
  std::filesystem::path out = trace;
  out.replace_filename(trace.stem().string() + "_summary" + trace.extension().string());
  return out;
}

void write_file(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  table.write(os);
  os.flush();
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<std::string> cycle_header() {
  return {"theta1", "theta2", "Q_AB", "Q_BC", "Q_CD", "Q_DA", "W_peV", "eta", "engine_mode"};
}

std::vector<CsvCell> cycle_row(double theta1, double theta2, const CycleResult& c) {
  return {theta1, theta2, c.q_ab, c.q_bc, c.q_cd, c.q_da, c.work, c.efficiency,
          std::string(c.mode == EngineMode::Engine ? "engine" : "non-engine")};
}

}  // namespace

ParseError::ParseError(std::size_t line, std::string key, const std::string& message)
    : Error("line " + std::to_string(line) + ", key '" + key + "': " + message),
      line_(line),
      key_(std::move(key)) {}

std::string_view command_name(Command c) {
  switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::Cycle: return "cycle";
    case Command::Sweep: return "sweep";
    case Command::Power: return "power";
  }
  return "cycle";
}

std::optional<Command> command_from_name(std::string_view name) {
  for (Command c : {Command::Spectrum, Command::Cycle, Command::Sweep, Command::Power}) {
    if (command_name(c) == name) return c;
  }
  return std::nullopt;
}

GridSpec RunConfig::effective_grid() const {
  const bool spectrum = command == Command::Spectrum;
  return GridSpec{grid_start.value_or(0.0),
                  grid_stop.value_or(spectrum ? std::numbers::pi : std::numbers::pi / 2),
                  grid_count.value_or(spectrum ? 181 : 91)};
}

void RunConfig::validate() const {
  if (!(params.B0 >= 0.0)) throw ValidationError("B0 must be >= 0");
  if (!(params.r > 0.0)) throw ValidationError("r must be > 0");
  if (!(kT_hot > 0.0) || !(kT_cold > 0.0)) throw ValidationError("bath kT must be > 0");
  if (kT_cold > kT_hot) {
    throw ValidationError("kT_cold (" + render_double(kT_cold) + ") exceeds kT_hot (" +
                          render_double(kT_hot) + ")");
  }
  if (grid_count && *grid_count == 0) throw ValidationError("grid_count must be >= 1");
  if (iterations == 0) throw ValidationError("iterations must be >= 1");
  if (!(tau_adiabatic_ns >= 0.0) || !(tau_isochoric_ns >= 0.0)) {
    throw ValidationError("stroke durations must be >= 0");
  }
  if (gamma0 && !(*gamma0 > 0.0)) throw ValidationError("gamma0 must be > 0");
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value, std::size_t line) {
  key = trim(key);
  value = trim(value);
  const std::string k(key);
  if (k == "command") {
    const auto cmd = command_from_name(value);
    if (!cmd) throw ParseError(line, k, "unknown command '" + std::string(value) + "'");
    c.command = *cmd;
  } else if (k == "gamma_I_over_2pi") {
    c.params.gamma_I_over_2pi = parse_quantity(key, value, kGammaUnits, line);
  } else if (k == "gamma_S_over_2pi") {
    c.params.gamma_S_over_2pi = parse_quantity(key, value, kGammaUnits, line);
  } else if (k == "B0") {
    c.params.B0 = parse_quantity(key, value, kFieldUnits, line);
  } else if (k == "J") {
    c.params.J = parse_quantity(key, value, kHertzUnits, line);
  } else if (k == "r") {
    c.params.r = parse_quantity(key, value, kLengthUnits, line);
  } else if (k == "phi") {
    c.params.phi = parse_quantity(key, value, kAngleUnits, line);
  } else if (k == "secular") {
    c.params.secular = parse_bool(key, value, line);
  } else if (k == "kT_hot") {
    c.kT_hot = parse_quantity(key, value, kEnergyUnits, line);
  } else if (k == "kT_cold") {
    c.kT_cold = parse_quantity(key, value, kEnergyUnits, line);
  } else if (k == "theta1") {
    c.theta1 = parse_quantity(key, value, kAngleUnits, line);
  } else if (k == "theta2") {
    c.theta2 = parse_quantity(key, value, kAngleUnits, line);
  } else if (k == "grid_start") {
    c.grid_start = parse_quantity(key, value, kAngleUnits, line);
  } else if (k == "grid_stop") {
    c.grid_stop = parse_quantity(key, value, kAngleUnits, line);
  } else if (k == "grid_count") {
    c.grid_count = parse_count(key, value, line);
  } else if (k == "iterations") {
    c.iterations = parse_count(key, value, line);
  } else if (k == "tau_adiabatic_ns") {
    c.tau_adiabatic_ns = parse_quantity(key, value, kTimeUnits, line);
  } else if (k == "tau_isochoric_ns") {
    c.tau_isochoric_ns = parse_quantity(key, value, kTimeUnits, line);
  } else if (k == "gamma0") {
    if (value == "auto") {
      c.gamma0.reset();
    } else {
      c.gamma0 = parse_quantity(key, value, kRateUnits, line);
    }
  } else if (k == "output") {
    if (value.empty()) throw ParseError(line, k, "empty output path");
    c.output = std::string(value);
  } else {
    throw ParseError(line, k, "unknown key");
  }
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, std::string(line), "expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(line_no, "", "missing key before '='");
    apply_setting(base, key, line.substr(eq + 1), line_no);
  }
  base.validate();
  return base;
}

std::string render_config(const RunConfig& c) {
  std::ostringstream os;
  os << "command = " << command_name(c.command) << '\n'
     << "gamma_I_over_2pi = " << render_double(c.params.gamma_I_over_2pi) << " MHz/T\n"
     << "gamma_S_over_2pi = " << render_double(c.params.gamma_S_over_2pi) << " MHz/T\n"
     << "B0 = " << render_double(c.params.B0) << " mT\n"
     << "J = " << render_double(c.params.J) << " Hz\n"
     << "r = " << render_double(c.params.r) << " A\n"
     << "phi = " << render_double(c.params.phi) << " rad\n"
     << "secular = " << (c.params.secular ? "true" : "false") << '\n'
     << "kT_hot = " << render_double(c.kT_hot) << " peV\n"
     << "kT_cold = " << render_double(c.kT_cold) << " peV\n"
     << "theta1 = " << render_double(c.theta1) << " rad\n"
     << "theta2 = " << render_double(c.theta2) << " rad\n";
  if (c.grid_start) os << "grid_start = " << render_double(*c.grid_start) << " rad\n";
  if (c.grid_stop) os << "grid_stop = " << render_double(*c.grid_stop) << " rad\n";
  if (c.grid_count) os << "grid_count = " << *c.grid_count << '\n';
  os << "iterations = " << c.iterations << '\n'
     << "tau_adiabatic_ns = " << render_double(c.tau_adiabatic_ns) << " ns\n"
     << "tau_isochoric_ns = " << render_double(c.tau_isochoric_ns) << " ns\n"
     << "gamma0 = " << (c.gamma0 ? render_double(*c.gamma0) + " 1/ns" : std::string("auto"))
     << '\n';
  if (c.output) os << "output = " << *c.output << '\n';
  return os.str();
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void CsvTable::add_row(const std::vector<CsvCell>& cells) {
  if (cells.size() != header.size()) {
    throw std::invalid_argument("CsvTable: row has " + std::to_string(cells.size()) +
                                " cells, header has " + std::to_string(header.size()));
  }
  std::vector<std::string> row;
  row.reserve(cells.size());
  for (const auto& cell : cells) {
    if (const auto* d = std::get_if<double>(&cell)) {
      row.push_back(format_number(*d));
    } else if (const auto* i = std::get_if<long long>(&cell)) {
      row.push_back(std::to_string(*i));
    } else {
      row.push_back(std::get<std::string>(cell));
    }
  }
  rows.push_back(std::move(row));
}

void CsvTable::write(std::ostream& os) const {
  auto emit = [&os](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << fields[i];
    os << '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
}

std::string CsvTable::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

CsvTable spectrum_table(const RunConfig& config) {
  const GridSpec g = config.effective_grid();
  const auto points = spectrum_scan(config.params, linear_grid(g.start, g.stop, g.count));
  CsvTable table;
  table.header = {"theta_rad"};
  for (std::size_t k = 0; k < points.front().energies.size(); ++k) {
    table.header.push_back("E" + std::to_string(k + 1) + "_peV");
  }
  for (const auto& p : points) {
    std::vector<CsvCell> row{p.theta};
    for (double e : p.energies) row.emplace_back(e);
    table.add_row(row);
  }
  return table;
}

CsvTable cycle_table(const RunConfig& config) {
  const CycleResult c = run_cycle(config.params, config.theta1, config.theta2,
                                  BathTemperature(config.kT_hot), BathTemperature(config.kT_cold));
  CsvTable table{cycle_header(), {}};
  table.add_row(cycle_row(config.theta1, config.theta2, c));
  return table;
}

CsvTable sweep_table(const RunConfig& config) {
  const GridSpec g = config.effective_grid();
  const std::vector<double> grid = linear_grid(g.start, g.stop, g.count);
  const auto results = sweep_theta2(config.params, config.theta1, grid,
                                    BathTemperature(config.kT_hot), BathTemperature(config.kT_cold));
  CsvTable table{cycle_header(), {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    table.add_row(cycle_row(config.theta1, grid[i], results[i]));
  }
  return table;
}

PowerTables power_tables(const RunConfig& config) {
  IsothermalProtocol protocol{config.theta1,         config.theta2,
                              config.iterations,     config.tau_adiabatic_ns,
                              config.tau_isochoric_ns, BathTemperature(config.kT_hot),
                              config.params};
  PowerTables out;
  out.gamma0 = config.gamma0 ? *config.gamma0 : calibrate_gamma0(protocol);
  const auto records = run_isothermal(protocol, out.gamma0);

  out.trace.header = {"iter", "theta_rad", "fidelity_inst", "fidelity_final", "p1", "p2", "p3",
                      "p4",   "E1",        "E2",            "E3",             "E4"};
  for (const auto& r : records) {
    std::vector<CsvCell> row{static_cast<long long>(r.index), r.theta,
                             r.fidelity_to_instantaneous_gibbs, r.fidelity_to_final_gibbs};
    for (double p : r.populations) row.emplace_back(p);
    for (double e : r.level_energies) row.emplace_back(e);
    out.trace.add_row(row);
  }

  const CycleResult best = run_cycle(config.params, config.theta1, config.theta2,
                                     BathTemperature(config.kT_hot), BathTemperature(config.kT_cold));
  const PowerEstimate power = estimate_power(best.work, protocol);
  out.summary.header = {"t_cycle_ms", "W_max_peV", "power_J_per_s"};
  out.summary.add_row({power.t_cycle_ms, best.work, power.power_w});
  return out;
}

int run(const RunConfig& config, std::ostream& stdout_stream, std::ostream& log) {
  try {
    config.validate();
    log << "# effective config\n" << render_config(config);

    CsvTable primary;
    std::optional<CsvTable> secondary;
    switch (config.command) {
      case Command::Spectrum: primary = spectrum_table(config); break;
      case Command::Cycle: primary = cycle_table(config); break;
      case Command::Sweep: primary = sweep_table(config); break;
      case Command::Power: {
        PowerTables tables = power_tables(config);
        log << "# gamma0 = " << render_double(tables.gamma0) << " 1/ns\n";
        primary = std::move(tables.trace);
        secondary = std::move(tables.summary);
        break;
      }
    }

    if (config.output) {
      const std::filesystem::path path(*config.output);
      write_file(path, primary);
      if (secondary) write_file(summary_path(path), *secondary);
    } else {
      primary.write(stdout_stream);
      if (secondary) {
        stdout_stream << '\n';
        secondary->write(stdout_stream);
      }
      stdout_stream.flush();
      if (!stdout_stream) throw IoError("failed writing to standard output");
    }
    return kExitOk;
  } catch (const ParseError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ValidationError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    log << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    log << "domain error: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace stirling
