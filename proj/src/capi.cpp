#include "fwp.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "fwp/coords_io.hpp"
#include "fwp/error.hpp"
#include "fwp/reports.hpp"
#include "fwp/wpgeom.hpp"

struct fwp_coords {
  fwp::CoordFn f;
};

struct fwp_homeo {
  fwp::Homeo h;
};

namespace {

thread_local std::string last_error;

fwp_status to_status(fwp::ErrorCode c) { return static_cast<fwp_status>(static_cast<int>(c)); }

fwp_status fail(fwp_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
fwp_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return FWP_OK;
  } catch (const fwp::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FWP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FWP_ERR_INTERNAL, e.what());
  }
}

void need(const void* p, const char* what) {
  if (!p) throw fwp::Error(fwp::ErrorCode::kInvalidArgument, std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const fwp::Report& r, char** report, int* pass) {
  need(report, "report");
  *report = dup(r.text);
  if (pass) *pass = r.pass ? 1 : 0;
}

fwp::QuadOnCircle quad(const double* q) {
  need(q, "quad");
  return fwp::QuadOnCircle({fwp::Complex(q[0], q[1]), fwp::Complex(q[2], q[3]), fwp::Complex(q[4], q[5]),
                            fwp::Complex(q[6], q[7])});
}

}  // namespace

extern "C" {

const char* fwp_version(void) { return "0.1.0"; }

const char* fwp_status_name(fwp_status status) {
  if (status < FWP_OK || status > FWP_ERR_INTERNAL) return "unknown";
  return fwp::error_name(static_cast<fwp::ErrorCode>(status));
}

const char* fwp_last_error(void) { return last_error.c_str(); }

void fwp_string_free(char* s) { std::free(s); }

fwp_status fwp_coords_new(fwp_coord_kind kind, fwp_coords** out) {
  return guarded([&] {
    need(out, "out");
    if (kind != FWP_SHEAR && kind != FWP_DIAMOND) throw fwp::Error(fwp::ErrorCode::kInvalidArgument, "unknown kind");
    *out = new fwp_coords{fwp::CoordFn(kind == FWP_SHEAR ? fwp::CoordKind::kShear : fwp::CoordKind::kDiamond)};
  });
}

fwp_status fwp_coords_parse(const char* json, fwp_coords** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new fwp_coords{fwp::coords_from_json(json)};
  });
}

fwp_status fwp_coords_load(const char* path, fwp_coords** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new fwp_coords{fwp::load_coords(path)};
  });
}

fwp_status fwp_coords_set(fwp_coords* c, const char* a, const char* b, double value) {
  return guarded([&] {
    need(c, "coords");
    need(a, "a");
    need(b, "b");
    c->f.set(fwp::Edge::parse(a, b), value);
  });
}

fwp_status fwp_coords_get(const fwp_coords* c, const char* a, const char* b, double* value) {
  return guarded([&] {
    need(c, "coords");
    need(a, "a");
    need(b, "b");
    need(value, "value");
    *value = c->f(fwp::Edge::parse(a, b));
  });
}

fwp_status fwp_coords_kind(const fwp_coords* c, fwp_coord_kind* kind) {
  return guarded([&] {
    need(c, "coords");
    need(kind, "kind");
    *kind = c->f.kind() == fwp::CoordKind::kShear ? FWP_SHEAR : FWP_DIAMOND;
  });
}

fwp_status fwp_coords_size(const fwp_coords* c, size_t* size) {
  return guarded([&] {
    need(c, "coords");
    need(size, "size");
    *size = c->f.size();
  });
}

fwp_status fwp_coords_to_json(const fwp_coords* c, char** json) {
  return guarded([&] {
    need(c, "coords");
    need(json, "json");
    *json = dup(fwp::coords_to_json(c->f));
  });
}

void fwp_coords_free(fwp_coords* c) { delete c; }

fwp_status fwp_homeo_from_coords(const fwp_coords* c, unsigned max_gen, fwp_homeo** out) {
  return guarded([&] {
    need(c, "coords");
    need(out, "out");
    *out = new fwp_homeo{fwp::Homeo::from_coords(c->f, max_gen)};
  });
}

fwp_status fwp_homeo_from_samples(const char* csv, fwp_homeo** out) {
  return guarded([&] {
    need(csv, "csv");
    need(out, "out");
    *out = new fwp_homeo{fwp::Homeo::from_samples(csv)};
  });
}

fwp_status fwp_homeo_builtin(const char* spec, fwp_homeo** out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "out");
    *out = new fwp_homeo{fwp::Homeo::builtin(spec)};
  });
}

const char* fwp_homeo_kind(const fwp_homeo* h) { return h ? h->h.kind() : ""; }

fwp_status fwp_homeo_eval(const fwp_homeo* h, const char* vertex, double* re, double* im) {
  return guarded([&] {
    need(h, "homeo");
    need(vertex, "vertex");
    need(re, "re");
    need(im, "im");
    const fwp::Complex w = h->h(fwp::Vertex::parse(vertex));
    *re = w.real();
    *im = w.imag();
  });
}

fwp_status fwp_homeo_breakpoints(const fwp_homeo* h, char** json) {
  return guarded([&] {
    need(h, "homeo");
    need(json, "json");
    const auto* dev = h->h.developed();
    if (!dev) throw fwp::Error(fwp::ErrorCode::kInvalidArgument, "only developed maps have breakpoints");
    *json = dup(dev->breakpoints_json());
  });
}

void fwp_homeo_free(fwp_homeo* h) { delete h; }

fwp_status fwp_roundtrip(const fwp_coords* c, unsigned max_gen, double tol, char** report, int* pass) {
  return guarded([&] {
    need(c, "coords");
    emit(fwp::roundtrip_report(c->f, max_gen, tol), report, pass);
  });
}

fwp_status fwp_develop_csv(const fwp_homeo* h, size_t samples, char** csv) {
  return guarded([&] {
    need(h, "homeo");
    need(csv, "csv");
    if (samples == 0) throw fwp::Error(fwp::ErrorCode::kInvalidArgument, "need at least one sample");
    *csv = dup(fwp::develop_csv(h->h, samples));
  });
}

fwp_status fwp_extract(const fwp_homeo* h, unsigned max_gen, char** report) {
  return guarded([&] {
    need(h, "homeo");
    emit(fwp::extract_report(h->h, max_gen), report, nullptr);
  });
}

fwp_status fwp_wp(const fwp_coords* theta1, const fwp_coords* theta2, const fwp_coords* base, char** report,
                  int* pass) {
  return guarded([&] {
    need(theta1, "theta1");
    need(theta2, "theta2");
    const fwp::CoordFn identity(fwp::CoordKind::kDiamond);
    emit(fwp::wp_report(theta1->f, theta2->f, base ? base->f : identity), report, pass);
  });
}

fwp_status fwp_qc(const fwp_coords* c, unsigned max_gen, char** report, int* pass) {
  return guarded([&] {
    need(c, "coords");
    emit(fwp::qc_report(c->f, max_gen), report, pass);
  });
}

fwp_status fwp_verify(const char* suite, uint64_t seed, char** report, int* pass) {
  return guarded([&] {
    need(suite, "suite");
    emit(fwp::run_verify(suite, seed), report, pass);
  });
}

size_t fwp_verify_suite_count(void) { return fwp::verify_suites().size(); }

const char* fwp_verify_suite(size_t i) {
  const auto& s = fwp::verify_suites();
  return i < s.size() ? s[i].c_str() : nullptr;
}

fwp_status fwp_render_svg(unsigned max_gen, int dual, int ford, const fwp_homeo* h, char** svg) {
  return guarded([&] {
    need(svg, "svg");
    fwp::SvgOptions opt;
    opt.max_gen = max_gen;
    opt.dual = dual != 0;
    opt.ford = ford != 0;
    *svg = dup(fwp::render_svg(opt, h ? &h->h : nullptr));
  });
}

fwp_status fwp_sigma(double a_re, double a_im, double b_re, double b_im, double* re, double* im) {
  return guarded([&] {
    need(re, "re");
    need(im, "im");
    const fwp::Complex s = fwp::sigma({a_re, a_im}, {b_re, b_im});
    *re = s.real();
    *im = s.imag();
  });
}

fwp_status fwp_metric_pairing(const double q1[8], const double q2[8], double* out) {
  return guarded([&] {
    need(out, "out");
    *out = fwp::metric_pairing(quad(q1), quad(q2));
  });
}

fwp_status fwp_symplectic_direct(const double q1[8], const double q2[8], double* out) {
  return guarded([&] {
    need(out, "out");
    *out = fwp::symplectic_direct(quad(q1), quad(q2));
  });
}

}  // extern "C"
