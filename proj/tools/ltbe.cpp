// ltbe: command-line front-end.
//
// Exit status: 0 success, 1 invalid input, 2 I/O failure, 3 fixpoint not
// reached (the matrix is still written), 4 a law check failed.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ltbe/ltbe.hpp"

namespace {

constexpr int kExitInput = 1;
constexpr int kExitIo = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitLawFailure = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write '" + out_path + "'");
}

std::string format_gap(double g) {
  if (std::isinf(g)) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", g);
  return buf;
}

std::string render_report(const ltbe::FixpointReport& rep, const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json j;
    j["kind"] = std::string(ltbe::to_string(rep.result.kind()));
    j["rows"] = rep.result.rows().ids();
    j["cols"] = rep.result.cols().ids();
    j["entries"] = ltbe::to_json_records(rep.result);
    j["iterations"] = rep.iterations;
    j["converged"] = rep.converged;
    if (std::isinf(rep.final_gap)) {
      j["final_gap"] = "inf";
    } else {
      j["final_gap"] = rep.final_gap;
    }
    j["threshold_exit"] = rep.threshold_exit;
    j["diverged"] = rep.diverged;
    return j.dump(2) + "\n";
  }
  std::string out = ltbe::to_csv(rep.result);
  out += "# iterations=" + std::to_string(rep.iterations) +
         " converged=" + (rep.converged ? "true" : "false") +
         " final_gap=" + format_gap(rep.final_gap);
  if (rep.threshold_exit) out += " threshold_exit=true";
  if (rep.diverged) out += " diverged=true";
  return out + "\n";
}

std::string render_matrix(const ltbe::ValRel& r, const std::string& format, std::size_t depth) {
  if (format == "json") {
    nlohmann::ordered_json j;
    j["kind"] = std::string(ltbe::to_string(r.kind()));
    j["rows"] = r.rows().ids();
    j["cols"] = r.cols().ids();
    j["entries"] = ltbe::to_json_records(r);
    j["depth"] = depth;
    return j.dump(2) + "\n";
  }
  return ltbe::to_csv(r) + "# depth=" + std::to_string(depth) + "\n";
}

int fixpoint_status(const ltbe::FixpointReport& rep) {
  return rep.converged || rep.threshold_exit ? 0 : kExitNotConverged;
}

struct FixpointFlags {
  std::optional<std::size_t> max_iter;
  double tol = 1e-9;
  std::optional<std::string> threshold;
  std::string format = "csv";
  std::string out;

  void attach(CLI::App* cmd, bool with_threshold) {
    cmd->add_option("--max-iter", max_iter, "Iteration limit (default 10*|C|*|D|+10)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol", tol, "Prob convergence tolerance")->check(CLI::NonNegativeNumber);
    if (with_threshold) {
      cmd->add_option("--threshold", threshold, "Stop once every entry is below this value");
    }
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out, "Output file (default stdout)");
  }

  ltbe::FixpointOptions options(ltbe::SemiringKind kind) const {
    ltbe::FixpointOptions o;
    o.max_iterations = max_iter;
    o.tolerance = tol;
    if (threshold) o.threshold = ltbe::parse_value(kind, *threshold);
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear-time behaviour of coalgebras with branching"};
  app.require_subcommand(1);

  std::string system_path, spec_path, a_path, b_path;
  FixpointFlags flags;

  auto* behaviour = app.add_subcommand("behaviour", "Value matrix of system states vs spec states");
  behaviour->add_option("--system", system_path, "System file")->required();
  behaviour->add_option("--spec", spec_path, "Specification file")->required();
  flags.attach(behaviour, true);

  auto* bisim = app.add_subcommand("bisim", "Bisimilarity between two bool systems");
  bisim->add_option("--a", a_path, "First system")->required();
  bisim->add_option("--b", b_path, "Second system")->required();
  flags.attach(bisim, false);

  auto* common = app.add_subcommand("common", "Common maximal traces of two systems");
  common->add_option("--a", a_path, "First system")->required();
  common->add_option("--b", b_path, "Second system")->required();
  flags.attach(common, true);

  std::size_t depth = 0;
  auto* oracle = app.add_subcommand("oracle", "Bounded-depth reference values");
  oracle->add_option("--system", system_path, "System file (with --spec)");
  oracle->add_option("--spec", spec_path, "Specification file");
  oracle->add_option("--a", a_path, "First system (common-trace mode, with --b)");
  oracle->add_option("--b", b_path, "Second system");
  oracle->add_option("--depth", depth, "Expansion depth")->required();
  oracle->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  oracle->add_option("--out", flags.out, "Output file (default stdout)");

  std::string kind_name;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::size_t size_bound = 2;
  auto* laws = app.add_subcommand("check-laws", "Semiring and monad law checks");
  laws->add_option("--kind", kind_name, "bool | prob | tropical")
      ->required()
      ->check(CLI::IsMember({"bool", "prob", "tropical"}));
  laws->add_option("--samples", samples, "Random triples for prob/tropical")->check(CLI::PositiveNumber);
  laws->add_option("--seed", seed, "RNG seed");
  laws->add_option("--size-bound", size_bound, "Carrier size for the monad harness")
      ->check(CLI::Range(1, 4));
  laws->add_option("--out", flags.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (behaviour->parsed()) {
      const auto sys = ltbe::parse_system(read_file(system_path));
      const auto spec = ltbe::parse_spec(read_file(spec_path));
      const auto rep = ltbe::behaviour(sys, spec, flags.options(sys.stack.kind));
      emit(render_report(rep, flags.format), flags.out);
      return fixpoint_status(rep);
    }
    if (bisim->parsed() || common->parsed()) {
      const auto a = ltbe::parse_system(read_file(a_path));
      const auto b = ltbe::parse_system(read_file(b_path));
      const auto opts = flags.options(a.stack.kind);
      const auto rep = bisim->parsed() ? ltbe::bisimilarity(a, b, opts) : ltbe::common_trace(a, b, opts);
      emit(render_report(rep, flags.format), flags.out);
      return fixpoint_status(rep);
    }
    if (oracle->parsed()) {
      const bool pair_mode = !a_path.empty() || !b_path.empty();
      const bool spec_mode = !system_path.empty() || !spec_path.empty();
      if (pair_mode == spec_mode || (pair_mode && (a_path.empty() || b_path.empty())) ||
          (spec_mode && (system_path.empty() || spec_path.empty()))) {
        std::cerr << "oracle: give either --system and --spec, or --a and --b\n";
        return kExitInput;
      }
      ltbe::ValRel m = pair_mode
          ? ltbe::oracle_common(ltbe::parse_system(read_file(a_path)),
                                ltbe::parse_system(read_file(b_path)), depth)
          : ltbe::oracle_matrix(ltbe::parse_system(read_file(system_path)),
                                ltbe::parse_spec(read_file(spec_path)), depth);
      emit(render_matrix(m, flags.format, depth), flags.out);
      return 0;
    }
    if (laws->parsed()) {
      const auto kind = ltbe::parse_kind(kind_name);
      const auto semiring = ltbe::check_semiring_laws(kind, samples, seed);
      const auto monad = ltbe::check_monad_consistency(kind, size_bound);
      std::string text = semiring.summary() + monad.laws.summary();
      text += "INFO monad/" + kind_name + " map injective=" + (monad.injective ? "true" : "false") +
              " surjective=" + (monad.surjective ? "true" : "false");
      if (!monad.missing.empty()) {
        text += " witness=(";
        for (const auto& v : monad.missing.front().first) text += v.to_string() + ";";
        text += " | ";
        for (const auto& v : monad.missing.front().second) text += v.to_string() + ";";
        text += ")";
      }
      text += "\n";
      emit(text, flags.out);
      return semiring.all_passed() && monad.laws.all_passed() ? 0 : kExitLawFailure;
    }
  } catch (const IoError& e) {
    std::cerr << "ltbe: " << e.what() << "\n";
    return kExitIo;
  } catch (const ltbe::Error& e) {
    std::cerr << "ltbe: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
