// Command-line front end: visibility checks, region enclosures, cuts,
// certificates and the finite point-set laboratory.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "visicut/certify.hpp"
#include "visicut/cuts.hpp"
#include "visicut/error.hpp"
#include "visicut/io.hpp"
#include "visicut/polarlab.hpp"
#include "visicut/tighten.hpp"
#include "visicut/visibility.hpp"

namespace {

using visicut::io::Json;

enum Exit { kOk = 0, kNegative = 1, kInput = 2, kNumerical = 3 };

struct Options {
  std::string input;
  std::string output = "stdout";
  std::string format = "json";
  int depth = 18;
  double min_width = 0.0;
  double tol = -1.0;
  std::uint64_t seed = 0;
  int trials = 0;
  bool quiet = false;

  std::vector<double> point;
  bool tighten = false;
  std::string domain;
  std::vector<double> poly;
  std::string check;
};

std::string read_file(const std::string& path) {
  if (path.empty()) throw visicut::InputError("--input is required");
  std::ifstream in(path);
  if (!in) throw visicut::InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Options& opt, const Json& j) {
  const std::string text = opt.format == "csv" ? visicut::io::to_csv(j) : visicut::io::dump(j) + "\n";
  if (opt.output.empty() || opt.output == "stdout") {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output);
  if (!out) throw visicut::InputError("cannot write " + opt.output);
  out << text;
}

void note(const Options& opt, const std::string& msg) {
  if (!opt.quiet) std::cerr << msg << "\n";
}

int cmd_check(const Options& opt) {
  const auto inst = visicut::io::parse_instance(read_file(opt.input));
  if (opt.point.size() != inst.dim())
    throw visicut::InputError("--point needs " + std::to_string(inst.dim()) + " coordinates");
  const bool visible = visicut::is_visible(inst, opt.point);
  const bool relaxed = visicut::in_relaxation(inst, opt.point);
  Json j{{"point", opt.point},
         {"visible", visible},
         {"relaxed", relaxed},
         {"g_value", inst.g().eval(opt.point)},
         {"p_lambda_coeffs", visicut::io::to_json(inst.g().restrict_to_segment(opt.point, inst.xbar()))}};
  emit(opt, j);
  return kOk;
}

int cmd_region(const Options& opt) {
  const auto inst = visicut::io::parse_instance(read_file(opt.input));
  emit(opt, visicut::io::to_json(visicut::region_description(inst)));
  return kOk;
}

visicut::Enclosure enclose(const Options& opt, const visicut::ProblemInstance& inst) {
  return visicut::prune_enclosure(visicut::region_description(inst), {opt.depth, opt.min_width});
}

int cmd_tighten(const Options& opt) {
  const auto inst = visicut::io::parse_instance(read_file(opt.input));
  const auto enc = enclose(opt, inst);
  Json j{{"region", visicut::io::to_json(visicut::region_description(inst))},
         {"enclosure", visicut::io::to_json(enc)}};
  emit(opt, j);
  if (enc.status == visicut::EnclosureStatus::ProvedEmpty) {
    note(opt, "visible region proved empty");
    return kNegative;
  }
  return kOk;
}

Json cut_report(const visicut::Cut& cut) {
  Json j = visicut::io::to_json(cut);
  j["inequality"] = cut.to_string();
  return j;
}

int cmd_cut(const Options& opt) {
  const auto inst = visicut::io::parse_instance(read_file(opt.input));
  const auto& full = inst.domain().box();
  const auto plain = visicut::gradient_cut(inst.g(), full, inst.xbar());
  Json j;
  std::optional<visicut::Cut> cut = plain;
  if (!opt.domain.empty()) {
    if (opt.tighten) throw visicut::InputError("--domain and --tighten are exclusive");
    const Json dj = visicut::io::parse(read_file(opt.domain));
    const auto box = visicut::io::box_from_json(dj.contains("box") ? dj.at("box") : dj);
    if (box.size() != inst.dim()) throw visicut::InputError("--domain box has the wrong dimension");
    cut = visicut::gradient_cut(inst.g(), box, inst.xbar());
    j["domain"] = visicut::io::to_json(box);
  } else if (opt.tighten) {
    const auto enc = enclose(opt, inst);
    j["enclosure"] = visicut::io::to_json(enc);
    if (enc.status == visicut::EnclosureStatus::ProvedEmpty) {
      emit(opt, j);
      note(opt, "visible region proved empty");
      return kNegative;
    }
    cut = visicut::gradient_cut(inst.g(), enc.box, inst.xbar());
    j["domain"] = visicut::io::to_json(enc.box);
  } else {
    j["domain"] = visicut::io::to_json(full);
  }
  if (!cut) {
    emit(opt, j);
    note(opt, "no separating underestimator");
    return kNegative;
  }
  j["cut"] = cut_report(*cut);
  if (opt.tighten || !opt.domain.empty()) {
    if (plain) {
      j["untightened"] = cut_report(*plain);
      j["dominance"] = visicut::to_string(visicut::compare_cuts(*cut, *plain, full, 1000, opt.seed));
    } else {
      j["untightened"] = nullptr;
      j["dominance"] = "only_tightened";
    }
  }
  if (opt.trials > 0) {
    const auto rep = visicut::validate_cut(*cut, inst, opt.trials, opt.seed);
    const double tol = opt.tol > 0.0 ? opt.tol : 1e-7;
    j["validation"] = Json{{"status", visicut::to_string(rep.status)},
                           {"feasible_samples", rep.feasible_samples},
                           {"max_violation", rep.feasible_samples > 0 ? Json(rep.max_violation) : Json(nullptr)},
                           {"within_tol", rep.feasible_samples > 0 && rep.max_violation <= tol}};
  }
  emit(opt, j);
  return kOk;
}

int cmd_certify(const Options& opt) {
  visicut::UniPoly p;
  int bound = -1;
  if (!opt.poly.empty()) {
    p = visicut::UniPoly(opt.poly);
  } else {
    const Json in = visicut::io::parse(read_file(opt.input));
    if (!in.is_object() || !in.contains("coeffs")) throw visicut::InputError("certify input needs \"coeffs\"");
    p = visicut::io::unipoly_from_json(in.at("coeffs"));
    if (in.contains("degree_bound")) bound = in.at("degree_bound").get<int>();
  }
  try {
    const auto cert = visicut::sos_decompose(p, bound);
    const double residual = visicut::verify_certificate(p, cert);
    const double tol = (opt.tol > 0.0 ? opt.tol : 1e-8) * std::max(1.0, p.max_abs_coeff());
    if (residual > tol) throw visicut::NumericalError("certificate residual " + std::to_string(residual));
    Json j{{"poly", visicut::io::to_json(p)}, {"certificate", visicut::io::to_json(cert)}, {"residual", residual}};
    emit(opt, j);
    return kOk;
  } catch (const visicut::NotNonnegativeError&) {
    emit(opt, Json{{"poly", visicut::io::to_json(p)}, {"certificate", nullptr}, {"result", "not nonnegative"}});
    note(opt, "not nonnegative");
    return kNegative;
  }
}

int cmd_lab(const Options& opt) {
  const auto check = visicut::parse_lab_check(opt.check);
  if (!check) throw visicut::InputError("--check must be visible, shadow, smallest-inter or smallest-closed");
  std::mt19937_64 rng(opt.seed);
  if (!opt.input.empty()) {
    const auto file = visicut::io::parse_point_set(read_file(opt.input));
    const auto out = visicut::run_lab_check(*check, file.set, rng, file.subset);
    Json j{{"check", visicut::to_string(*check)},
           {"pass", out.pass},
           {"polar_empty", Json{{"input", out.polar_empty}, {"candidate", visicut::polar_empty(out.candidate)}}},
           {"candidate", visicut::io::to_json(out.candidate)}};
    if (!out.pass) j["counterexample"] = out.detail;
    emit(opt, j);
    return out.pass ? kOk : kNegative;
  }
  const int trials = opt.trials > 0 ? opt.trials : 200;
  int passed = 0;
  Json failures = Json::array();
  for (int t = 0; t < trials; ++t) {
    const auto ps = visicut::random_lab_set(*check, rng);
    const auto out = visicut::run_lab_check(*check, ps, rng);
    if (out.pass) {
      ++passed;
    } else if (failures.size() < 5) {
      failures.push_back(Json{{"trial", t}, {"detail", out.detail}, {"set", visicut::io::to_json(ps)}});
    }
  }
  emit(opt, Json{{"check", visicut::to_string(*check)},
                 {"seed", opt.seed},
                 {"trials", trials},
                 {"passed", passed},
                 {"failed", trials - passed},
                 {"failures", failures}});
  return passed == trials ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Visible-point cut tightening for polynomial constraints"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--input", opt.input, "Instance, point-set or polynomial file (JSON)");
  app.add_option("--output", opt.output, "Output path or 'stdout'");
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--depth", opt.depth, "Branch-and-prune depth")->check(CLI::Range(1, 40));
  app.add_option("--min-width", opt.min_width, "Smallest box side to split (default 1e-4 of the domain)");
  app.add_option("--tol", opt.tol, "Acceptance tolerance for residuals and violations");
  app.add_option("--seed", opt.seed, "Random seed");
  app.add_option("--trials", opt.trials, "Random trials (lab) or validation samples (cut)");
  app.add_flag("--quiet", opt.quiet, "Suppress diagnostics on stderr");

  auto* check = app.add_subcommand("check", "Visibility and relaxation membership of a point");
  check->add_option("--point", opt.point, "Coordinates, comma separated")->delimiter(',')->required();
  app.add_subcommand("region", "Implicit description of the visible region");
  app.add_subcommand("tighten", "Box enclosure of the visible region");
  auto* cut = app.add_subcommand("cut", "McCormick gradient cut");
  cut->add_flag("--tighten", opt.tighten, "Build the underestimator over the enclosure of the visible region");
  cut->add_option("--domain", opt.domain, "Box file {lo, hi} to build the underestimator over");
  auto* certify = app.add_subcommand("certify", "Sum-of-squares certificate of nonnegativity on [0,1]");
  certify->add_option("--poly", opt.poly, "Coefficients c0,c1,... (lowest degree first)")->delimiter(',');
  auto* lab = app.add_subcommand("lab", "Reverse-polar generator checks on finite point sets");
  lab->add_option("--check", opt.check, "visible | shadow | smallest-inter | smallest-closed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "check") return cmd_check(opt);
    if (name == "region") return cmd_region(opt);
    if (name == "tighten") return cmd_tighten(opt);
    if (name == "cut") return cmd_cut(opt);
    if (name == "certify") return cmd_certify(opt);
    return cmd_lab(opt);
  } catch (const visicut::InputError& e) {
    note(opt, std::string("input error: ") + e.what());
    return kInput;
  } catch (const visicut::NumericalError& e) {
    note(opt, std::string("numerical failure: ") + e.what());
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    note(opt, std::string("input error: ") + e.what());
    return kInput;
  }
}
