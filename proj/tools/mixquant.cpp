// Command-line surface: compute quantizers and errors, emit tables, run the
// Lloyd-Max oracle and verification, and render SVG charts.
//
// Exit codes: 0 success, 2 usage or precondition error, 3 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "mixquant/mixquant.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MIXQUANT_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

std::string human(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path);
  if (!os) throw std::invalid_argument("cannot open for writing: " + out_path);
  os << text;
  if (!os) throw std::runtime_error("write failed: " + out_path);
}

std::string quantize_text(const mixquant::QuantizationResult& r) {
  std::string s = "n = " + std::to_string(r.n) + "\ncodebook =";
  for (double x : r.codebook) s += " " + human(x);
  s += "\nerror = " + human(r.error) + "\n";
  const mixquant::TableRow row = mixquant::make_row(r);
  s += "split: k = " + std::to_string(row.k) + ", m = " + std::to_string(row.m) +
       ", case = " + row.case_label + "\n";
  return s;
}

int cmd_quantize(int n, double p, const std::string& format, double tol,
                 const std::string& out) {
  if (p != 0.5 && n >= 2) {
    std::cerr << "quantize: closed forms are available only for weight 1/2 when n >= 2; "
                 "use the `oracle` subcommand for other weights\n";
    return kExitUsage;
  }
  mixquant::QuantizationResult r =
      (p == 0.5) ? mixquant::solve(n)
                 : mixquant::QuantizationResult{
                       1, mixquant::Codebook({(2.0 - p) / 2.0}),
                       mixquant::StepDensity::mixture(p).variance(), std::nullopt};
  if (format == "json")
    emit(mixquant::result_json(r, tol).dump(2) + "\n", out);
  else
    emit(quantize_text(r), out);
  return 0;
}

int cmd_table(int from, int to, const std::string& format,
              const mixquant::TableOptions& opt, const std::string& out) {
  const auto rows = mixquant::generate_table(from, to, opt);
  std::string text;
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) arr.push_back(mixquant::to_json(row));
    text = arr.dump(2) + "\n";
  } else {
    text = std::string(mixquant::table_csv_header()) + "\n";
    for (const auto& row : rows) text += mixquant::to_csv(row) + "\n";
  }
  emit(text, out);
  for (const auto& row : rows)
    if (!row.note.empty()) return kExitNumerical;
  return 0;
}

int cmd_oracle(int n, double p, int restarts, double tol, std::uint64_t seed,
               const std::string& format, const std::string& out) {
  const mixquant::StepDensity d = mixquant::StepDensity::mixture(p);
  const mixquant::OracleReport rep = mixquant::lloyd(d, n, restarts, 100000, tol, seed);
  if (format == "json") {
    nlohmann::json j{{"n", rep.n},
                     {"codebook", rep.codebook.points()},
                     {"error", rep.error},
                     {"iterations", rep.iterations},
                     {"restart_index", rep.restart_index},
                     {"converged", rep.converged},
                     {"seed", rep.seed},
                     {"rng", rep.rng},
                     {"meta", {{"tol", tol}, {"version", mixquant::kVersion}}}};
    emit(j.dump(2) + "\n", out);
  } else {
    std::string s = "n = " + std::to_string(rep.n) + "\ncodebook =";
    for (double x : rep.codebook) s += " " + human(x);
    s += "\nerror = " + human(rep.error) +
         "\nconverged = " + (rep.converged ? "yes" : "no") +
         ", iterations = " + std::to_string(rep.iterations) +
         ", best restart = " + std::to_string(rep.restart_index) + "\n";
    emit(s, out);
  }
  return rep.converged ? 0 : kExitNumerical;
}

int cmd_verify(int n, int restarts, double tol, std::uint64_t seed,
               const std::string& format, const std::string& out) {
  const mixquant::VerifyReport v = mixquant::verify(n, restarts, tol, seed);
  if (format == "json") {
    nlohmann::json j{{"n", n},
                     {"closed_form",
                      {{"codebook", v.closed_form.codebook.points()},
                       {"error", v.closed_form.error}}},
                     {"oracle",
                      {{"codebook", v.oracle.codebook.points()},
                       {"error", v.oracle.error},
                       {"restart_index", v.oracle.restart_index}}},
                     {"max_point_gap", v.max_point_gap},
                     {"error_gap", v.error_gap}};
    emit(j.dump(2) + "\n", out);
  } else {
    emit("n = " + std::to_string(n) + "\nclosed-form error = " +
             human(v.closed_form.error) + "\noracle error = " + human(v.oracle.error) +
             "\nerror gap = " + human(v.error_gap) +
             "\nmax codepoint gap = " + human(v.max_point_gap) + "\n",
         out);
  }
  return 0;
}

int cmd_plot(const std::string& kind, int max_n, double p, const std::string& out) {
  const std::string svg = (kind == "density") ? mixquant::render_density_svg(p)
                                              : mixquant::render_codepoints_svg(max_n);
  emit(svg, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal quantizers for the symmetric two-piece mixed distribution"};
  app.require_subcommand(1);
  app.set_version_flag("--version", mixquant::kVersion);

  int n = 1;
  double p = 0.5;
  int from = 1, to = 10;
  std::string format;
  bool with_oracle = false;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  int restarts = 64;
  double tol = 1e-12;
  std::uint64_t seed = default_seed();
  std::string out;
  std::string kind = "codepoints";

  auto* quantize = app.add_subcommand("quantize", "Optimal n-point codebook and error");
  quantize->add_option("-n,--n", n, "number of codepoints")
      ->required()
      ->check(CLI::PositiveNumber);
  quantize->add_option("--p", p, "mixture weight")->check(CLI::Range(1e-9, 1.0 - 1e-9));
  quantize->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->default_str("text");
  quantize->add_option("--tol", tol, "tolerance recorded in metadata");
  quantize->add_option("--out", out, "write to file instead of stdout");

  auto* table = app.add_subcommand("table", "One row per n over a range");
  table->add_option("--from", from, "first n")->check(CLI::PositiveNumber);
  table->add_option("--to", to, "last n")->check(CLI::PositiveNumber);
  table->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_str("csv");
  table->add_flag("--with-oracle", with_oracle, "add oracle_error and gap columns");
  table->add_option("--jobs", jobs, "worker count")->check(CLI::PositiveNumber);
  table->add_option("--restarts", restarts, "oracle restarts")->check(CLI::PositiveNumber);
  table->add_option("--tol", tol, "oracle tolerance");
  table->add_option("--seed", seed, "oracle seed");
  table->add_option("--out", out, "write to file instead of stdout");

  auto* sequence = app.add_subcommand("sequence", "Integer seed a(n) of the split search");
  sequence->add_option("-n,--n", n, "index")->required()->check(CLI::PositiveNumber);

  auto* oracle = app.add_subcommand("oracle", "Multi-restart Lloyd-Max quantizer");
  oracle->add_option("-n,--n", n, "number of codepoints")
      ->required()
      ->check(CLI::PositiveNumber);
  oracle->add_option("--p", p, "mixture weight")->check(CLI::Range(1e-9, 1.0 - 1e-9));
  oracle->add_option("--restarts", restarts, "restart count")->check(CLI::PositiveNumber);
  oracle->add_option("--tol", tol, "convergence tolerance");
  oracle->add_option("--seed", seed, "PRNG seed");
  oracle->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->default_str("text");
  oracle->add_option("--out", out, "write to file instead of stdout");

  auto* verify = app.add_subcommand("verify", "Closed form vs the Lloyd-Max oracle");
  verify->add_option("-n,--n", n, "number of codepoints")
      ->required()
      ->check(CLI::PositiveNumber);
  verify->add_option("--restarts", restarts, "restart count")->check(CLI::PositiveNumber);
  verify->add_option("--tol", tol, "convergence tolerance");
  verify->add_option("--seed", seed, "PRNG seed");
  verify->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->default_str("text");
  verify->add_option("--out", out, "write to file instead of stdout");

  auto* plot = app.add_subcommand("plot", "Render an SVG chart");
  plot->add_option("--kind", kind, "chart kind")
      ->check(CLI::IsMember({"codepoints", "density"}));
  plot->add_option("-n,--n", n, "largest n in the codepoint chart")
      ->check(CLI::PositiveNumber)
      ->default_val(9);
  plot->add_option("--p", p, "mixture weight for the density chart")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  plot->add_option("--out", out, "output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (quantize->parsed())
      return cmd_quantize(n, p, format.empty() ? "text" : format, tol, out);
    if (table->parsed()) {
      mixquant::TableOptions opt;
      opt.with_oracle = with_oracle;
      opt.jobs = jobs;
      opt.restarts = restarts;
      opt.tol = tol;
      opt.seed = seed;
      return cmd_table(from, to, format.empty() ? "csv" : format, opt, out);
    }
    if (sequence->parsed()) {
      std::cout << mixquant::seed_sequence(n) << "\n";
      return 0;
    }
    if (oracle->parsed())
      return cmd_oracle(n, p, restarts, tol, seed, format.empty() ? "text" : format, out);
    if (verify->parsed())
      return cmd_verify(n, restarts, tol, seed, format.empty() ? "text" : format, out);
    if (plot->parsed()) return cmd_plot(kind, n, p, out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
