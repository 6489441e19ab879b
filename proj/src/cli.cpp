#include "zeig/cli.hpp"

#include <charconv>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zeig/harness.hpp"
#include "zeig/report.hpp"
#include "zeig/tensor_io.hpp"

namespace zeig::cli {

namespace {

enum class Format { Json, Csv, Text };

struct RunRequest {
  std::string tensor_path;
  std::string method = "mpni";
  double tol = 1e-12;
  int max_iter = 100;
  std::string x0 = "uniform";
  std::optional<double> lambda0;
  std::string beta;
  std::string format = "json";
  bool trace = false;
  int starts = 50;
  std::uint64_t seed = 0;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError(std::string("bad number '") + item + "' in " + what);
    }
  }
  return out;
}

Vector start_vector(const std::string& spec, int dim) {
  if (spec == "uniform") return Vector::Constant(dim, 1.0 / dim);
  if (spec.rfind("random:", 0) == 0) {
    const std::string seed_text = spec.substr(7);
    std::uint64_t seed = 0;
    auto [ptr, ec] = std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed);
    if (ec != std::errc() || ptr != seed_text.data() + seed_text.size() || seed_text.empty()) {
      throw InputError("bad seed in --x0 '" + spec + "'");
    }
    return simplex_starts(dim, 1, seed).front();
  }
  auto vals = parse_list(spec, "--x0");
  if (static_cast<int>(vals.size()) != dim) {
    throw InputError("--x0 has " + std::to_string(vals.size()) + " entries, tensor dimension is " +
                     std::to_string(dim));
  }
  Vector x = Eigen::Map<Vector>(vals.data(), dim);
  if (!(x.array() > 0.0).all() || std::abs(x.sum() - 1.0) > 1e-10) {
    throw InputError("--x0 entries must be positive and sum to 1");
  }
  return x;
}

SolverConfig make_config(const RunRequest& req) {
  SolverConfig cfg;
  auto method = parse_method(req.method);
  if (!method) throw InputError("unknown method '" + req.method + "'");
  cfg.method = *method;
  cfg.tol = req.tol;
  cfg.max_iter = req.max_iter;
  cfg.lambda0 = req.lambda0;
  if (!req.beta.empty()) cfg.beta_schedule = parse_list(req.beta, "--beta");
  cfg.validate();
  return cfg;
}

Format parse_format(const std::string& f) {
  if (f == "json") return Format::Json;
  if (f == "csv") return Format::Csv;
  if (f == "text") return Format::Text;
  throw InputError("unknown format '" + f + "'");
}

int cmd_solve(const RunRequest& req, std::ostream& out) {
  const Tensor a = load_tensor(req.tensor_path);
  const SolverConfig cfg = make_config(req);
  const Format fmt = parse_format(req.format);
  const Vector x0 = start_vector(req.x0, a.dim());
  const SolveReport rep = solve(a, x0, cfg);
  switch (fmt) {
    case Format::Json: report::write_json(out, report::solve_json(rep, req.trace)); break;
    case Format::Csv: report::write_trace_csv(out, rep.trace); break;
    case Format::Text: report::write_solve_text(out, rep, req.trace); break;
  }
  return rep.status == Status::Converged ? 0 : 2;
}

int cmd_sweep(const RunRequest& req, std::ostream& out) {
  if (req.starts < 1) throw InputError("--starts must be at least 1");
  const Tensor a = load_tensor(req.tensor_path);
  const SolverConfig cfg = make_config(req);
  const Format fmt = parse_format(req.format);
  const MultiStartResult res = multi_start(a, req.starts, req.seed, cfg);
  switch (fmt) {
    case Format::Json: report::write_json(out, report::sweep_json(res, cfg.method, req.seed, cfg.tol)); break;
    case Format::Csv: report::write_sweep_csv(out, res); break;
    case Format::Text: report::write_sweep_text(out, res); break;
  }
  return res.pairs.empty() ? 2 : 0;
}

int cmd_check(const std::string& path, std::ostream& out) {
  const Tensor a = load_tensor(path);
  const Vector x = Vector::Constant(a.dim(), 1.0 / a.dim());
  const RatioBounds b = ratio_bounds(a, x);
  out << "m=" << a.order() << " n=" << a.dim() << " nnz=" << a.nnz() << '\n';
  out.precision(17);
  out << "bounds at uniform x: [" << b.lower << ", " << b.upper << "]\n";
  return 0;
}

void add_solver_options(CLI::App& sub, RunRequest& req) {
  sub.add_option("--tensor", req.tensor_path, "tensor file")->required();
  sub.add_option("--method", req.method, "newton | mni | pni | mpni")->capture_default_str();
  sub.add_option("--tol", req.tol, "stop when ||A x^{m-1} - lambda x||_1 < tol")->capture_default_str();
  sub.add_option("--max-iter", req.max_iter, "iteration limit")->capture_default_str();
  sub.add_option("--beta", req.beta, "PNI beta schedule, comma separated");
  sub.add_option("--format", req.format, "json | csv | text")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonnegative Z-eigenpairs of nonnegative tensors", "zeig"};
  app.require_subcommand(1);

  RunRequest req;
  auto* solve_cmd = app.add_subcommand("solve", "run one solver from one start");
  add_solver_options(*solve_cmd, req);
  solve_cmd->add_option("--x0", req.x0, "uniform | random:<seed> | comma-separated vector")
      ->capture_default_str();
  solve_cmd->add_option("--lambda0", req.lambda0, "starting eigenvalue (newton only)");
  solve_cmd->add_flag("--trace", req.trace, "include the per-iteration trace");

  auto* sweep_cmd = app.add_subcommand("sweep", "multi-start search for distinct eigenpairs");
  add_solver_options(*sweep_cmd, req);
  sweep_cmd->add_option("--starts", req.starts, "number of random starts")->capture_default_str();
  sweep_cmd->add_option("--seed", req.seed, "seed for the start vectors")->capture_default_str();

  std::string check_path;
  auto* check_cmd = app.add_subcommand("check", "validate a tensor file");
  check_cmd->add_option("tensor", check_path, "tensor file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(req, out);
    if (sweep_cmd->parsed()) return cmd_sweep(req, out);
    return cmd_check(check_path, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace zeig::cli
