// Batch front end: every pipeline behind one binary with JSON in and out.
// Exit codes: 0 verdict produced, 1 input problem, 2 a theory guarantee
// failed at runtime (which would mean a bug, not bad data).

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "deltam/counterexample.hpp"
#include "deltam/diffops.hpp"
#include "deltam/errors.hpp"
#include "deltam/invariance.hpp"
#include "deltam/json_io.hpp"
#include "deltam/parallel.hpp"
#include "deltam/recover.hpp"
#include "deltam/spectral.hpp"
#include "deltam/subspace.hpp"

namespace {

using deltam::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return json::parse(in);  // parse_error carries the byte position
}

std::vector<std::pair<double, double>> read_csv_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::vector<std::pair<double, double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("t,", 0) == 0) continue;  // header
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected 't,value'");
    try {
      rows.emplace_back(std::stod(line.substr(0, comma)),
                        std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": malformed number");
    }
  }
  if (rows.empty()) throw std::invalid_argument(path + ": no samples");
  return rows;
}

void write_csv(const std::string& path, const std::vector<double>& ts,
               const std::vector<double>& vals) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << "t,value\n" << std::setprecision(17);
  for (std::size_t i = 0; i < ts.size(); ++i)
    out << ts[i] << ',' << vals[i] << '\n';
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

struct GlobalOpts {
  double tol = deltam::kDefaultTol;
  std::uint64_t seed = 0;
  std::vector<double> grid;  // lo hi count when given
  std::vector<double> h_seq;

  deltam::Tolerance tolerance() const { return deltam::Tolerance(tol); }

  std::vector<double> grid_points(double lo, double hi, std::size_t count) const {
    if (grid.size() == 3) {
      lo = grid[0];
      hi = grid[1];
      count = static_cast<std::size_t>(grid[2]);
    }
    return deltam::linspace(lo, hi, count);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exponential polynomial difference calculus toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--tol", g.tol, "zero test width, relative")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for randomized procedures");
  app.add_option("--grid", g.grid, "evaluation grid: lo hi count")->expected(3);
  app.add_option("--h-sequence", g.h_seq, "decreasing steps for the limit")
      ->expected(-1);

  // montel
  auto* montel = app.add_subcommand("montel", "two step difference kernel test");
  std::size_t montel_m = 1;
  std::string montel_h1, montel_h2, montel_file;
  montel->add_option("--m", montel_m, "difference order")->required();
  montel->add_option("--h1", montel_h1, "first step, a+b*sqrt2")->required();
  montel->add_option("--h2", montel_h2, "second step, a+b*sqrt2")->required();
  montel->add_option("--f", montel_file, "function JSON file")->required();

  // closure
  auto* closure = app.add_subcommand("closure", "smallest invariant superspace");
  std::string closure_kind = "box", closure_file;
  std::size_t closure_m = 1;
  double closure_h1 = 1.0, closure_h2 = 0.0;
  closure->add_option("--kind", closure_kind, "box or diamond")
      ->check(CLI::IsMember({"box", "diamond"}));
  closure->add_option("--subspace", closure_file, "subspace JSON file")->required();
  closure->add_option("--m", closure_m, "power with image inside the input")
      ->required();
  closure->add_option("--h1", closure_h1, "step of the first operator")->required();
  closure->add_option("--h2", closure_h2, "step of the second operator (diamond)");

  // decompose
  auto* decompose = app.add_subcommand("decompose", "split into polynomial and exponential parts");
  std::string decompose_file;
  std::size_t decompose_m = 1;
  decompose->add_option("--subspace", decompose_file, "subspace JSON file")->required();
  decompose->add_option("--m", decompose_m, "invariance order")->required();

  // main2
  auto* main2 = app.add_subcommand("main2", "sampled equivalence of the two invariance notions");
  std::string main2_file;
  std::size_t main2_m = 1, main2_trials = 24;
  main2->add_option("--subspace", main2_file, "subspace JSON file")->required();
  main2->add_option("--m", main2_m, "invariance order")->required();
  main2->add_option("--trials", main2_trials, "sampled steps per notion");

  // djokovic
  auto* djokovic = app.add_subcommand("djokovic", "mixed difference factorization check");
  std::size_t djokovic_s = 1;
  djokovic->add_option("--s", djokovic_s, "number of steps")->required();

  // counterexample
  auto* counter = app.add_subcommand("counterexample", "sharpness witness for rational step ratios");
  std::size_t ce_m = 2, ce_p = 2, ce_q = 3;
  double ce_h = 1.0;
  std::string ce_csv;
  counter->add_option("--m", ce_m, "difference order")->required();
  counter->add_option("--p", ce_p, "first period multiple")->required();
  counter->add_option("--q", ce_q, "second period multiple")->required();
  counter->add_option("--step", ce_h, "base period");
  counter->add_option("--csv", ce_csv, "dump samples to this file");

  // recover
  auto* recover = app.add_subcommand("recover", "frequency recovery from samples");
  std::string recover_family;
  std::vector<std::string> recover_csvs;
  std::size_t recover_m = 1;
  recover->add_option("--family", recover_family,
                      "JSON file: {\"m\":k,\"functions\":[...]}");
  recover->add_option("--csv", recover_csvs, "sampled CSV files, one per function")
      ->expected(-1);
  recover->add_option("--m", recover_m, "difference order for CSV input");

  // matrix
  auto* matrix = app.add_subcommand("matrix", "difference matrix on an ambient space");
  std::string matrix_file;
  double matrix_h = 1.0;
  std::size_t matrix_m = 1;
  matrix->add_option("--ambient", matrix_file, "ambient space JSON file")->required();
  matrix->add_option("--step", matrix_h, "step")->required();
  matrix->add_option("--m", matrix_m, "power");

  // stirling
  auto* stirling = app.add_subcommand("stirling", "partition count of the second kind");
  std::size_t stirling_n = 0, stirling_k = 0;
  stirling->add_option("--n", stirling_n, "set size")->required();
  stirling->add_option("--k", stirling_k, "block count")->required();

  // global flags are accepted on either side of the subcommand name
  for (CLI::App* sub : {montel, closure, decompose, main2, djokovic, counter,
                        recover, matrix, stirling})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit(json{{"error", e.what()}});
    return 1;
  }

  try {
    const deltam::Tolerance tol = g.tolerance();

    if (*montel) {
      auto f = deltam::exppoly_from_json(read_json_file(montel_file));
      auto h1 = deltam::ExactStep::parse(montel_h1);
      auto h2 = deltam::ExactStep::parse(montel_h2);
      emit(deltam::to_json(deltam::montel_check(f, montel_m, h1, h2, tol)));
    } else if (*closure) {
      auto V = deltam::subspace_from_json(read_json_file(closure_file), tol);
      auto d = deltam::DifferenceOp::delta(1, 0);
      deltam::Subspace W =
          closure_kind == "box"
              ? deltam::box_closure(V, d, {closure_h1}, closure_m, tol)
              : deltam::diamond_closure(V, d, d, {closure_h1}, {closure_h2},
                                        closure_m, tol);
      emit(json{{"kind", closure_kind},
                {"dim_input", V.dim()},
                {"dim_closure", W.dim()},
                {"subspace", deltam::to_json(W)}});
    } else if (*decompose) {
      auto V = deltam::subspace_from_json(read_json_file(decompose_file), tol);
      emit(deltam::to_json(deltam::decompose_PE(V, decompose_m, g.seed, tol)));
    } else if (*main2) {
      auto V = deltam::subspace_from_json(read_json_file(main2_file), tol);
      emit(deltam::to_json(
          deltam::main2_equivalence(V, main2_m, main2_trials, g.seed, tol)));
    } else if (*djokovic) {
      const bool equal = deltam::djokovic_rhs(djokovic_s) == deltam::mixed(djokovic_s);
      json out = {{"s", djokovic_s},
                  {"equal", equal},
                  {"terms_before_cancel", deltam::djokovic_expansion_size(djokovic_s)}};
      if (!equal)
        out["alternate_equal"] =
            deltam::djokovic_rhs_alt(djokovic_s) == deltam::mixed(djokovic_s);
      emit(out);
    } else if (*counter) {
      auto ce = deltam::build_counterexample(ce_m, ce_p, ce_q, ce_h, tol);
      const auto grid = g.grid_points(-5.0, 5.0, 200);
      const double rp = deltam::verify_period_multiple(ce.f, ce.h, ce.m, ce_p, grid);
      const double rq = deltam::verify_period_multiple(ce.f, ce.h, ce.m, ce_q, grid);
      std::vector<double> corners;
      for (double t = grid.front(); t <= grid.back(); t += ce.h / 2.0)
        corners.push_back(t + ce.h / 2.0);
      auto witness = deltam::non_analytic_witness(ce.f, corners, 1e-6, tol);
      json out = {{"m", ce.m},
                  {"p", ce_p},
                  {"q", ce_q},
                  {"h", ce.h},
                  {"max_residual_ph", rp},
                  {"max_residual_qh", rq}};
      if (witness)
        out["corner"] = {{"point", witness->point},
                         {"slope_left", witness->slope_left},
                         {"slope_right", witness->slope_right}};
      else
        out["corner"] = nullptr;
      if (!ce_csv.empty()) {
        write_csv(ce_csv, grid, deltam::map_grid(ce.f, grid));
        out["csv"] = ce_csv;
      }
      emit(out);
    } else if (*recover) {
      deltam::RecoveryOptions opt;
      opt.tol = tol;
      if (!g.h_seq.empty()) opt.h_seq = g.h_seq;
      if (g.grid.size() == 3)
        opt.grid = deltam::GridSpec{g.grid[0], g.grid[1],
                                    static_cast<std::size_t>(g.grid[2])};
      if (recover_family.empty() == recover_csvs.empty())
        throw std::invalid_argument("recover: pass exactly one of --family, --csv");
      if (!recover_family.empty()) {
        json j = read_json_file(recover_family);
        if (!j.is_object() || !j.contains("m") || !j.contains("functions"))
          throw std::invalid_argument(
              "recover: expected {\"m\":k,\"functions\":[...]}");
        std::vector<deltam::ExpPolynomial> fs;
        for (const auto& jf : j["functions"])
          fs.push_back(deltam::exppoly_from_json(jf));
        auto fam = deltam::SampledFamily::from_exppolys(fs, j["m"].get<std::size_t>(), tol);
        emit(deltam::to_json(deltam::run_recovery(fam, opt)));
      } else {
        std::vector<std::function<deltam::Scalar(double)>> funcs;
        for (const auto& path : recover_csvs) {
          auto interp = deltam::piecewise_linear(read_csv_samples(path));
          funcs.push_back([interp](double t) { return deltam::Scalar(interp(t)); });
        }
        auto fam = deltam::SampledFamily::auto_collocation(funcs, recover_m, tol);
        emit(deltam::to_json(deltam::run_recovery(fam, opt)));
      }
    } else if (*matrix) {
      auto S = deltam::ambient_from_json(read_json_file(matrix_file));
      auto A = deltam::matrix_delta(S, matrix_h);
      emit(deltam::to_json(matrix_m == 1 ? A : deltam::matrix_power(A, matrix_m)));
    } else if (*stirling) {
      emit(json{{"value", deltam::stirling2(stirling_n, stirling_k).get_str()}});
    }
    return 0;
  } catch (const deltam::TheoremViolation& e) {
    emit(json{{"error", e.what()}, {"kind", "theorem-violation"}});
    return 2;
  } catch (const std::exception& e) {
    emit(json{{"error", e.what()}});
    return 1;
  }
}
