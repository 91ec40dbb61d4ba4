#include "cli.hpp"

#include "dtc/circuit.hpp"
#include "dtc/error.hpp"
#include "dtc/hardware.hpp"
#include "dtc/pipeline.hpp"
#include "dtc/render.hpp"
#include "dtc/schedule.hpp"
#include "dtc/validate.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace dtc::cli {

namespace fs = std::filesystem;

namespace {

/// Thrown for problems with the invocation itself.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunManifest {
  std::string mode = "dynamic";
  std::string circuit_file;
  std::string bench;
  int n = 0;
  std::uint64_t seed = 0;
  std::string config_path;
  std::string out_dir = ".";
  std::string stem;
  bool emit_schedule = true;
  bool emit_report = true;
  bool emit_svg = false;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) {
    throw UsageError("cannot read " + p.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes through a sibling temp file so readers never see partial output.
void write_atomic(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) {
    fs::create_directories(p.parent_path());
  }
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("cannot write " + p.string());
    }
    out << text;
  }
  fs::rename(tmp, p);
}

HardwareConfig resolve_config(const std::string& flag) {
  std::string path = flag;
  if (path.empty()) {
    if (const char* env = std::getenv("DTC_CONFIG"); env != nullptr) {
      path = env;
    }
  }
  if (path.empty()) {
    return {};
  }
  if (!fs::exists(path)) {
    throw UsageError("config file not found: " + path);
  }
  return load_config(path);
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

int do_compile(const RunManifest& m, std::ostream& out) {
  const bool from_file = !m.circuit_file.empty();
  if (from_file == !m.bench.empty()) {
    throw UsageError("give exactly one of --circuit or --bench");
  }
  if (!from_file && m.n <= 0) {
    throw UsageError("--bench needs --n");
  }
  const CompileMode mode = parse_mode(m.mode);
  const HardwareConfig hw = resolve_config(m.config_path);
  const Circuit circuit =
      from_file ? parse_circuit(read_file(m.circuit_file)) : gen_benchmark(m.bench, m.n, m.seed);
  const auto result = compile(circuit, hw, mode);

  std::string stem = m.stem;
  if (stem.empty()) {
    stem = from_file ? fs::path(m.circuit_file).stem().string()
                     : m.bench + "_" + std::to_string(m.n);
    stem += "_" + m.mode;
  }
  const fs::path dir(m.out_dir);
  if (m.emit_schedule) {
    write_atomic(dir / (stem + ".schedule.json"), schedule_to_json(result.schedule));
  }
  if (m.emit_report) {
    write_atomic(dir / (stem + ".report.json"), report_to_json(result.report));
  }
  if (m.emit_svg) {
    write_atomic(dir / (stem + ".svg"), render_svg(result.schedule));
  }
  out << "mode=" << result.report.mode << " total_us=" << result.report.total_us
      << " entangling_us=" << result.report.entangling_us
      << " fidelity=" << result.report.fidelity.total << '\n';
  return kOk;
}

int do_validate(const std::string& path, const std::string& fidelity, std::ostream& out,
                std::ostream& err) {
  Schedule s;
  try {
    s = schedule_from_json(read_file(path));
  } catch (const ParseError& e) {
    err << "invalid schedule: " << e.what() << '\n';
    return kFailure;
  }
  const auto diags = validate_schedule(s);
  for (const auto& d : diags) {
    err << "[" << d.category << "] instruction " << d.instruction << ": " << d.message << '\n';
  }
  if (!diags.empty()) {
    err << diags.size() << " diagnostic(s)\n";
    return kFailure;
  }
  if (fidelity == "json") {
    out << fidelity_to_json(fidelity_report(s));
  } else if (fidelity == "csv") {
    out << fidelity_to_csv(fidelity_report(s));
  } else {
    out << "ok: " << s.instructions.size() << " instructions, total_us=" << s.total_us << '\n';
  }
  return kOk;
}

struct SweepRow {
  std::string line;
  std::string error;
};

int do_sweep(const std::string& family, const std::string& sizes, const std::string& modes,
             std::uint64_t seed, int threads, const std::string& config_path,
             const std::string& out_path, std::ostream& out, std::ostream& err) {
  (void)parse_family(family);
  std::vector<int> ns;
  for (const auto& s : split(sizes)) {
    try {
      ns.push_back(std::stoi(s));
    } catch (const std::exception&) {
      throw UsageError("bad size '" + s + "'");
    }
  }
  std::vector<CompileMode> ms;
  for (const auto& s : split(modes)) {
    ms.push_back(parse_mode(s));
  }
  if (ns.empty() || ms.empty()) {
    throw UsageError("--sizes and --modes must not be empty");
  }
  const HardwareConfig hw = resolve_config(config_path);

  std::vector<std::pair<int, CompileMode>> jobs;
  for (const int n : ns) {
    for (const CompileMode m : ms) {
      jobs.emplace_back(n, m);
    }
  }
  std::vector<SweepRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const auto [n, mode] = jobs[i];
      try {
        const auto r = compile(gen_benchmark(family, n, seed), hw, mode).report;
        std::ostringstream line;
        line.precision(17);
        line << family << ',' << n << ',' << mode_name(mode) << ',' << r.total_us << ','
             << r.entangling_us << ',' << r.fidelity.total << '\n';
        rows[i].line = line.str();
      } catch (const std::exception& e) {
        rows[i].error = family + " n=" + std::to_string(n) + " " +
                        std::string(mode_name(mode)) + ": " + e.what();
      }
    }
  };
  const auto count = static_cast<std::size_t>(
      std::clamp<int>(threads, 1, static_cast<int>(std::max<std::size_t>(1, jobs.size()))));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < count; ++t) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& t : pool) {
    t.join();
  }

  std::string csv = "family,n,mode,total_us,entangling_us,fidelity\n";
  int status = kOk;
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      err << r.error << '\n';
      status = kFailure;
    }
    csv += r.line;
  }
  if (out_path.empty()) {
    out << csv;
  } else {
    write_atomic(out_path, csv);
  }
  return status;
}

int do_render(const std::string& path, const std::string& out_path, int stage,
              std::ostream& out, std::ostream& err) {
  Schedule s;
  try {
    s = schedule_from_json(read_file(path));
  } catch (const ParseError& e) {
    err << "invalid schedule: " << e.what() << '\n';
    return kFailure;
  }
  RenderOptions opt;
  opt.stage = stage;
  const auto svg = render_svg(s, opt);
  if (out_path.empty()) {
    out << svg;
  } else {
    write_atomic(out_path, svg);
  }
  return kOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zoned neutral-atom compiler with directional-transport channels", "dtc"};
  app.require_subcommand(1);

  RunManifest m;
  auto* compile_cmd = app.add_subcommand("compile", "Compile a circuit to a timed schedule");
  compile_cmd->add_option("--circuit", m.circuit_file, "Circuit file (qreg/h/x/rz/cz/cp lines)");
  compile_cmd->add_option("--bench", m.bench, "Benchmark family: qft, ising, bv, cat, adder");
  compile_cmd->add_option("--n", m.n, "Qubit count for --bench");
  compile_cmd->add_option("--seed", m.seed, "Benchmark seed");
  compile_cmd->add_option("--mode", m.mode, "static, dynamic or aod-baseline");
  compile_cmd->add_option("--config", m.config_path, "Hardware config (default: $DTC_CONFIG)");
  compile_cmd->add_option("--out", m.out_dir, "Output directory");
  compile_cmd->add_option("--name", m.stem, "Output file stem");
  compile_cmd->add_flag("!--no-schedule", m.emit_schedule, "Skip the schedule JSON");
  compile_cmd->add_flag("!--no-report", m.emit_report, "Skip the report JSON");
  compile_cmd->add_flag("--svg", m.emit_svg, "Also write an SVG rendering");

  std::string schedule_path;
  std::string fidelity_format;
  auto* validate_cmd = app.add_subcommand("validate", "Replay and check a schedule");
  validate_cmd->add_option("schedule", schedule_path, "Schedule JSON")->required();
  validate_cmd->add_option("--fidelity", fidelity_format, "Print fidelity as json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string family;
  std::string sizes;
  std::string modes = "static,dynamic,aod-baseline";
  std::uint64_t sweep_seed = 0;
  int threads = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  std::string sweep_config;
  std::string sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "Compile a benchmark family over sizes and modes");
  sweep_cmd->add_option("--family", family, "Benchmark family")->required();
  sweep_cmd->add_option("--sizes", sizes, "Comma-separated qubit counts")->required();
  sweep_cmd->add_option("--modes", modes, "Comma-separated modes");
  sweep_cmd->add_option("--seed", sweep_seed, "Benchmark seed");
  sweep_cmd->add_option("--threads", threads, "Worker threads");
  sweep_cmd->add_option("--config", sweep_config, "Hardware config (default: $DTC_CONFIG)");
  sweep_cmd->add_option("--out", sweep_out, "CSV path (default: stdout)");

  std::string render_in;
  std::string render_out;
  int render_stage = -1;
  auto* render_cmd = app.add_subcommand("render", "Draw a schedule as SVG");
  render_cmd->add_option("--schedule", render_in, "Schedule JSON")->required();
  render_cmd->add_option("--out", render_out, "SVG path (default: stdout)");
  render_cmd->add_option("--stage", render_stage, "Only this stage");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  try {
    if (compile_cmd->parsed()) {
      return do_compile(m, out);
    }
    if (validate_cmd->parsed()) {
      return do_validate(schedule_path, fidelity_format, out, err);
    }
    if (sweep_cmd->parsed()) {
      return do_sweep(family, sizes, modes, sweep_seed, threads, sweep_config, sweep_out, out,
                      err);
    }
    return do_render(render_in, render_out, render_stage, out, err);
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

} // namespace dtc::cli
