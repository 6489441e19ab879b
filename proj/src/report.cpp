#include "zeig/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace zeig::report {

namespace {

json vec_json(const Vector& v) {
  json arr = json::array();
  for (double d : v) arr.push_back(d);
  return arr;
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::vector<std::string> flag_names(const StepRecord& r) {
  std::vector<std::string> out;
  if (r.flags.lambda_perturbed) out.emplace_back("lambda_perturbed");
  if (r.flags.projection_active) out.emplace_back("projection_active");
  if (r.flags.zero_denominator) out.emplace_back("zero_denominator");
  if (r.flags.beta_escalated) out.emplace_back("beta_escalated");
  return out;
}

std::string num(double d) {
  if (!std::isfinite(d)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

std::string csv_num(const std::optional<double>& d) { return d ? num(*d) : std::string(); }

void write_value(std::ostream& out, const json& v, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (v.type()) {
    case json::value_t::number_float:
      out << num(v.get<double>());
      return;
    case json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      // Arrays of plain numbers stay on one line.
      const bool flat = std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number(); });
      out << '[';
      bool first = true;
      for (const json& e : v) {
        out << (first ? "" : ",");
        if (flat) {
          out << (first ? "" : " ");
        } else {
          out << '\n' << pad;
        }
        write_value(out, e, indent, depth + 1);
        first = false;
      }
      if (!flat) out << '\n' << close_pad;
      out << ']';
      return;
    }
    case json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        out << (first ? "\n" : ",\n") << pad << json(it.key()).dump() << ": ";
        write_value(out, it.value(), indent, depth + 1);
        first = false;
      }
      out << '\n' << close_pad << '}';
      return;
    }
    default:
      out << v.dump();
  }
}

}  // namespace

json solve_json(const SolveReport& rep, bool with_trace) {
  json j = json::object();
  j["method"] = std::string(to_string(rep.method));
  j["status"] = std::string(to_string(rep.status));
  j["eigenvalue"] = rep.final.lambda;
  j["eigenvector"] = vec_json(rep.final.x);
  j["residual"] = rep.final.residual_norm;
  j["iterations"] = rep.iterations;
  if (!rep.message.empty()) j["message"] = rep.message;
  if (with_trace) {
    json trace = json::array();
    for (const StepRecord& r : rep.trace) {
      json s = json::object();
      s["k"] = r.k;
      s["lambda"] = r.lambda;
      s["lambda_hat"] = opt_json(r.lambda_hat);
      s["lambda_low"] = r.interval ? json(r.interval->lower) : json(nullptr);
      s["lambda_high"] = r.interval ? json(r.interval->upper) : json(nullptr);
      s["residual"] = r.residual;
      s["x"] = vec_json(r.x);
      s["flags"] = flag_names(r);
      trace.push_back(std::move(s));
    }
    j["trace"] = std::move(trace);
  }
  return j;
}

json sweep_json(const MultiStartResult& res, Method method, std::uint64_t seed, double tol) {
  json j = json::object();
  j["method"] = std::string(to_string(method));
  j["seed"] = seed;
  j["starts"] = res.runs.size();
  j["tol"] = tol;
  json pairs = json::array();
  for (const Eigenpair& p : res.pairs) {
    pairs.push_back({{"eigenvalue", p.lambda},
                     {"eigenvector", vec_json(p.x)},
                     {"residual", p.residual},
                     {"witness_start", vec_json(p.witness)},
                     {"method", std::string(to_string(p.method))}});
  }
  j["eigenpairs"] = std::move(pairs);
  json runs = json::array();
  for (const StartOutcome& o : res.runs) {
    json r = {{"start", vec_json(o.start)},
              {"status", std::string(to_string(o.status))},
              {"iterations", o.iterations},
              {"eigenvalue", o.lambda},
              {"residual", o.residual}};
    if (!o.reason.empty()) r["excluded"] = o.reason;
    runs.push_back(std::move(r));
  }
  j["runs"] = std::move(runs);
  return j;
}

void write_json(std::ostream& out, const json& value, int indent) {
  write_value(out, value, indent, 0);
  out << '\n';
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace) {
  out << "k,lambda,lambda_hat,lambda_low,lambda_high,residual,flags\n";
  for (const StepRecord& r : trace) {
    std::string flags;
    for (const auto& f : flag_names(r)) flags += (flags.empty() ? "" : "|") + f;
    out << r.k << ',' << num(r.lambda) << ',' << csv_num(r.lambda_hat) << ','
        << csv_num(r.interval ? std::optional(r.interval->lower) : std::nullopt) << ','
        << csv_num(r.interval ? std::optional(r.interval->upper) : std::nullopt) << ','
        << num(r.residual) << ',' << flags << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const MultiStartResult& res) {
  out << "eigenvalue,residual,eigenvector\n";
  for (const Eigenpair& p : res.pairs) {
    std::string vec;
    for (double d : p.x) vec += (vec.empty() ? "" : " ") + num(d);
    out << num(p.lambda) << ',' << num(p.residual) << ',' << vec << '\n';
  }
}

void write_solve_text(std::ostream& out, const SolveReport& rep, bool with_trace) {
  out << "method:     " << to_string(rep.method) << '\n'
      << "status:     " << to_string(rep.status) << '\n'
      << "iterations: " << rep.iterations << '\n'
      << "eigenvalue: " << num(rep.final.lambda) << '\n'
      << "residual:   " << num(rep.final.residual_norm) << '\n'
      << "eigenvector:";
  for (double d : rep.final.x) out << ' ' << num(d);
  out << '\n';
  if (!rep.message.empty()) out << "note:       " << rep.message << '\n';
  if (with_trace) {
    out << '\n';
    write_trace_csv(out, rep.trace);
  }
}

void write_sweep_text(std::ostream& out, const MultiStartResult& res) {
  std::size_t failed = 0;
  for (const auto& r : res.runs) failed += r.reason.empty() ? 0 : 1;
  out << res.pairs.size() << " distinct nonnegative eigenpairs from " << res.runs.size()
      << " starts (" << failed << " runs not admitted)\n";
  for (const Eigenpair& p : res.pairs) {
    out << "  lambda = " << num(p.lambda) << "  x =";
    for (double d : p.x) out << ' ' << num(d);
    out << "  residual = " << num(p.residual) << '\n';
  }
}

}  // namespace zeig::report
