// Command-line front end. Talks to the library only through fwp.h.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fwp.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;

struct Failure {
  int exit_code;
  std::string message;
};

// Every point and quad the tool works with comes from the tessellation, so
// degeneracies are numerical breakdowns rather than bad input.
int exit_code_for(fwp_status s) {
  switch (s) {
    case FWP_OK:
      return kExitPass;
    case FWP_ERR_INVALID_ARGUMENT:
    case FWP_ERR_PARSE:
    case FWP_ERR_NOT_AN_EDGE:
    case FWP_ERR_NOT_IN_P:
    case FWP_ERR_IO:
      return kExitInput;
    default:
      return kExitFailure;
  }
}

void check(fwp_status s) {
  if (s != FWP_OK) throw Failure{exit_code_for(s), std::string(fwp_status_name(s)) + ": " + fwp_last_error()};
}

struct CoordsDeleter {
  void operator()(fwp_coords* c) const { fwp_coords_free(c); }
};
struct HomeoDeleter {
  void operator()(fwp_homeo* h) const { fwp_homeo_free(h); }
};
using CoordsPtr = std::unique_ptr<fwp_coords, CoordsDeleter>;
using HomeoPtr = std::unique_ptr<fwp_homeo, HomeoDeleter>;

// Takes ownership of a string returned by the library.
std::string take(char* s) {
  std::string out(s ? s : "");
  fwp_string_free(s);
  return out;
}

CoordsPtr load(const std::string& path) {
  fwp_coords* c = nullptr;
  check(fwp_coords_load(path.c_str(), &c));
  return CoordsPtr(c);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitInput, "io: cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_builtin(const std::string& spec) { return spec.rfind("perturbed:", 0) == 0; }

// --homeo is either a builtin map or a coordinate file to develop.
HomeoPtr homeo_from_spec(const std::string& spec, unsigned max_gen) {
  fwp_homeo* h = nullptr;
  if (is_builtin(spec)) {
    check(fwp_homeo_builtin(spec.c_str(), &h));
  } else {
    CoordsPtr c = load(spec);
    check(fwp_homeo_from_coords(c.get(), max_gen, &h));
  }
  return HomeoPtr(h);
}

HomeoPtr homeo_from_coords_file(const std::string& path, unsigned max_gen) {
  CoordsPtr c = load(path);
  fwp_homeo* h = nullptr;
  check(fwp_homeo_from_coords(c.get(), max_gen, &h));
  return HomeoPtr(h);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kExitInput, "io: cannot write '" + path + "'"};
  out << text;
  if (!out) throw Failure{kExitInput, "io: write failed for '" + path + "'"};
}

struct Options {
  unsigned max_gen = 8;
  double tol = 1e-9;
  std::vector<std::string> coords;
  std::string out;
  std::string samples;
  std::string suite = "all";
  uint64_t seed = 1;
  bool ford = false;
  bool dual = false;
  bool breakpoints = false;
  std::string homeo;
};

void add_max_gen(CLI::App* app, Options& o) {
  app->add_option("--max-gen", o.max_gen, "Largest generation considered")->check(CLI::Range(0u, 24u))->capture_default_str();
}

void add_tol(CLI::App* app, Options& o) {
  app->add_option("--tol", o.tol, "Tolerance for floating-point checks")
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            double v = 0.0;
            try {
              size_t used = 0;
              v = std::stod(s, &used);
              if (used != s.size()) return "not a number: " + s;
            } catch (const std::exception&) {
              return "not a number: " + s;
            }
            if (!(v > 0.0 && v <= 1e-2)) return "tolerance must lie in (0, 1e-2]";
            return {};
          },
          "(0, 1e-2]"))
      ->capture_default_str();
}

void add_out(CLI::App* app, Options& o) { app->add_option("--out", o.out, "Output file (default stdout)"); }

int finish(const std::string& text, int pass, const Options& o) {
  write_output(o.out, text);
  return pass ? kExitPass : kExitFailure;
}

int run_tessellate(const Options& o) {
  HomeoPtr h;
  if (!o.coords.empty() && !o.homeo.empty()) throw Failure{kExitInput, "give either --coords or --homeo"};
  if (!o.coords.empty()) h = homeo_from_coords_file(o.coords.front(), o.max_gen);
  if (!o.homeo.empty()) h = homeo_from_spec(o.homeo, o.max_gen);
  char* svg = nullptr;
  check(fwp_render_svg(o.max_gen, o.dual, o.ford, h.get(), &svg));
  return finish(take(svg), 1, o);
}

int run_roundtrip(const Options& o) {
  CoordsPtr c = load(o.coords.front());
  char* report = nullptr;
  int pass = 0;
  check(fwp_roundtrip(c.get(), o.max_gen, o.tol, &report, &pass));
  return finish(take(report), pass, o);
}

int run_develop(const Options& o) {
  if (o.coords.empty() == o.homeo.empty()) throw Failure{kExitInput, "give exactly one of --coords or --homeo"};
  HomeoPtr h = o.coords.empty() ? homeo_from_spec(o.homeo, o.max_gen) : homeo_from_coords_file(o.coords.front(), o.max_gen);
  char* text = nullptr;
  if (o.breakpoints) {
    check(fwp_homeo_breakpoints(h.get(), &text));
  } else {
    size_t n = 1024;
    if (!o.samples.empty()) {
      try {
        size_t used = 0;
        long long v = std::stoll(o.samples, &used);
        if (used != o.samples.size() || v <= 0) throw std::invalid_argument("samples");
        n = static_cast<size_t>(v);
      } catch (const std::exception&) {
        throw Failure{kExitInput, "--samples must be a positive integer for develop"};
      }
    }
    check(fwp_develop_csv(h.get(), n, &text));
  }
  return finish(take(text), 1, o);
}

int run_extract(const Options& o) {
  const int sources = !o.samples.empty() + !o.coords.empty() + !o.homeo.empty();
  if (sources != 1) throw Failure{kExitInput, "give exactly one of --samples, --coords or --homeo"};
  HomeoPtr h;
  if (!o.samples.empty()) {
    fwp_homeo* raw = nullptr;
    check(fwp_homeo_from_samples(read_text(o.samples).c_str(), &raw));
    h.reset(raw);
  } else if (!o.coords.empty()) {
    h = homeo_from_coords_file(o.coords.front(), o.max_gen);
  } else {
    h = homeo_from_spec(o.homeo, o.max_gen);
  }
  char* report = nullptr;
  check(fwp_extract(h.get(), o.max_gen, &report));
  return finish(take(report), 1, o);
}

int run_wp(const Options& o) {
  if (o.coords.empty() || o.coords.size() > 2) throw Failure{kExitInput, "wp takes one or two --coords files"};
  CoordsPtr a = load(o.coords.front());
  CoordsPtr b = o.coords.size() == 2 ? load(o.coords.back()) : nullptr;
  CoordsPtr base;
  if (!o.homeo.empty()) {
    if (is_builtin(o.homeo)) throw Failure{kExitInput, "wp needs a coordinate file as --homeo base"};
    base = load(o.homeo);
  }
  char* report = nullptr;
  int pass = 0;
  check(fwp_wp(a.get(), b ? b.get() : a.get(), base.get(), &report, &pass));
  return finish(take(report), pass, o);
}

int run_qc(const Options& o) {
  CoordsPtr c = load(o.coords.front());
  char* report = nullptr;
  int pass = 0;
  check(fwp_qc(c.get(), o.max_gen, &report, &pass));
  return finish(take(report), pass, o);
}

int run_verify(const Options& o) {
  char* report = nullptr;
  int pass = 0;
  check(fwp_verify(o.suite.c_str(), o.seed, &report, &pass));
  return finish(take(report), pass, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shear and diamond-shear coordinates on the Farey tessellation"};
  app.set_version_flag("--version", std::string(fwp_version()));
  app.require_subcommand(1);
  Options o;

  auto* tess = app.add_subcommand("tessellate", "Render the tessellation, or its image under a map, as SVG");
  add_max_gen(tess, o);
  tess->add_option("--coords", o.coords, "Coordinate file to develop")->expected(1);
  tess->add_option("--homeo", o.homeo, "Coordinate file or perturbed:EPS");
  tess->add_flag("--dual", o.dual, "Draw the dual tree");
  tess->add_flag("--ford", o.ford, "Draw Ford circles");
  add_out(tess, o);

  auto* rt = app.add_subcommand("roundtrip", "Check the Phi/Psi identities on a coordinate file");
  rt->add_option("--coords", o.coords, "Coordinate file")->required()->expected(1);
  add_max_gen(rt, o);
  add_tol(rt, o);
  add_out(rt, o);

  auto* dev = app.add_subcommand("develop", "Sample the homeomorphism developed from coordinates");
  dev->add_option("--coords", o.coords, "Coordinate file")->expected(1);
  dev->add_option("--homeo", o.homeo, "Coordinate file or perturbed:EPS");
  dev->add_option("--samples", o.samples, "Number of grid angles (default 1024)");
  dev->add_flag("--breakpoints", o.breakpoints, "Print the breakpoints instead of samples");
  add_max_gen(dev, o);
  add_out(dev, o);

  auto* ex = app.add_subcommand("extract", "Read shear and diamond coordinates off a homeomorphism");
  ex->add_option("--samples", o.samples, "CSV file of angle_in,angle_out samples");
  ex->add_option("--coords", o.coords, "Coordinate file to develop first")->expected(1);
  ex->add_option("--homeo", o.homeo, "Coordinate file or perturbed:EPS");
  add_max_gen(ex, o);
  add_out(ex, o);

  auto* wp = app.add_subcommand("wp", "Weil-Petersson metric and symplectic form of tangent vectors");
  wp->add_option("--coords", o.coords, "One or two coordinate files")->required()->expected(1, 2)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  wp->add_option("--homeo", o.homeo, "Coordinate file of the base point");
  add_out(wp, o);

  auto* qc = app.add_subcommand("qc", "Beltrami estimates of the quasiconformal extension");
  qc->add_option("--coords", o.coords, "Coordinate file")->required()->expected(1);
  add_max_gen(qc, o);
  add_out(qc, o);

  auto* ver = app.add_subcommand("verify", "Run the verification suites");
  std::vector<std::string> suites{"all"};
  for (size_t i = 0; i < fwp_verify_suite_count(); ++i) suites.emplace_back(fwp_verify_suite(i));
  ver->add_option("--suite", o.suite, "Suite name")->check(CLI::IsMember(suites))->capture_default_str();
  ver->add_option("--seed", o.seed, "Seed of the property-based checks")->capture_default_str();
  add_out(ver, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*tess) return run_tessellate(o);
    if (*rt) return run_roundtrip(o);
    if (*dev) return run_develop(o);
    if (*ex) return run_extract(o);
    if (*wp) return run_wp(o);
    if (*qc) return run_qc(o);
    return run_verify(o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  }
}
