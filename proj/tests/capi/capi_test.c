/* Exercises the C interface from C, linking only the shared library. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "fwp.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static void test_coords(void) {
  fwp_coords* c = NULL;
  EXPECT(fwp_coords_new(FWP_DIAMOND, &c) == FWP_OK);
  EXPECT(fwp_coords_set(c, "0/1", "inf", 0.5) == FWP_OK);
  EXPECT(fwp_coords_set(c, "0", "1", -0.25) == FWP_OK);
  EXPECT(fwp_coords_set(c, "0", "2", 1.0) == FWP_ERR_NOT_AN_EDGE);
  EXPECT(strlen(fwp_last_error()) > 0);

  size_t n = 0;
  EXPECT(fwp_coords_size(c, &n) == FWP_OK && n == 2);
  double v = 0.0;
  EXPECT(fwp_coords_get(c, "1/0", "0/1", &v) == FWP_OK && v == 0.5);
  fwp_coord_kind kind = FWP_SHEAR;
  EXPECT(fwp_coords_kind(c, &kind) == FWP_OK && kind == FWP_DIAMOND);

  char* json = NULL;
  EXPECT(fwp_coords_to_json(c, &json) == FWP_OK);
  fwp_coords* back = NULL;
  EXPECT(fwp_coords_parse(json, &back) == FWP_OK);
  EXPECT(fwp_coords_get(back, "0", "1", &v) == FWP_OK && v == -0.25);
  fwp_string_free(json);
  fwp_coords_free(back);

  EXPECT(fwp_coords_set(c, "0", "1", 0.0) == FWP_OK);
  EXPECT(fwp_coords_size(c, &n) == FWP_OK && n == 1);

  char* report = NULL;
  int pass = 0;
  EXPECT(fwp_roundtrip(c, 5, 1e-9, &report, &pass) == FWP_OK && pass == 1);
  fwp_string_free(report);
  EXPECT(fwp_roundtrip(c, 5, -1.0, &report, &pass) == FWP_ERR_INVALID_ARGUMENT);
  fwp_coords_free(c);

  EXPECT(fwp_coords_parse("{\"kind\":", &back) == FWP_ERR_PARSE);
  EXPECT(fwp_coords_load("/nonexistent.json", &back) != FWP_OK);
  EXPECT(fwp_coords_new(FWP_SHEAR, NULL) == FWP_ERR_INVALID_ARGUMENT);
}

static void test_homeo(void) {
  fwp_coords* c = NULL;
  fwp_coords_new(FWP_DIAMOND, &c);
  fwp_coords_set(c, "0", "inf", 1.0);
  fwp_homeo* h = NULL;
  EXPECT(fwp_homeo_from_coords(c, 6, &h) == FWP_OK);
  EXPECT(strcmp(fwp_homeo_kind(h), "developed") == 0);
  double re = 0.0, im = 0.0;
  EXPECT(fwp_homeo_eval(h, "1/2", &re, &im) == FWP_OK);
  EXPECT(fabs(re + 0.30340146137410895) < 1e-13 && fabs(im + 0.95286281973642728) < 1e-13);
  EXPECT(fwp_homeo_eval(h, "x", &re, &im) == FWP_ERR_PARSE);

  char* text = NULL;
  EXPECT(fwp_homeo_breakpoints(h, &text) == FWP_OK && text[0] == '[');
  fwp_string_free(text);
  EXPECT(fwp_develop_csv(h, 16, &text) == FWP_OK);
  fwp_homeo* s = NULL;
  EXPECT(fwp_homeo_from_samples(text, &s) == FWP_OK);
  EXPECT(strcmp(fwp_homeo_kind(s), "samples") == 0);
  fwp_string_free(text);
  fwp_homeo_free(s);

  EXPECT(fwp_extract(h, 4, &text) == FWP_OK);
  fwp_string_free(text);
  EXPECT(fwp_render_svg(4, 1, 1, h, &text) == FWP_OK && strstr(text, "<svg") != NULL);
  fwp_string_free(text);

  int pass = 0;
  EXPECT(fwp_wp(c, c, NULL, &text, &pass) == FWP_OK && pass == 1);
  fwp_string_free(text);
  EXPECT(fwp_qc(c, 6, &text, &pass) == FWP_OK && pass == 1);
  fwp_string_free(text);
  fwp_homeo_free(h);

  fwp_coords* shear = NULL;
  fwp_coords_new(FWP_SHEAR, &shear);
  fwp_coords_set(shear, "0", "inf", 1.0);
  EXPECT(fwp_wp(shear, c, NULL, &text, &pass) == FWP_ERR_NOT_IN_P);
  EXPECT(strcmp(fwp_status_name(FWP_ERR_NOT_IN_P), "NotInP") == 0);
  fwp_coords_free(shear);
  fwp_coords_free(c);

  EXPECT(fwp_homeo_builtin("perturbed:0.1", &h) == FWP_OK);
  EXPECT(strcmp(fwp_homeo_kind(h), "analytic") == 0);
  EXPECT(fwp_homeo_breakpoints(h, &text) == FWP_ERR_INVALID_ARGUMENT);
  fwp_homeo_free(h);
  EXPECT(fwp_homeo_builtin("bogus", &h) == FWP_ERR_PARSE);
}

static void test_numerics(void) {
  double re = 0.0, im = 0.0;
  EXPECT(fwp_sigma(1.0, 0.0, 1.0, 0.0, &re, &im) == FWP_OK && re == 0.25 && im == 0.0);
  const double q[8] = {1.0, 0.0, 0.0, 1.0, -1.0, 0.0, 0.0, -1.0};
  double g = 0.0;
  EXPECT(fwp_metric_pairing(q, q, &g) == FWP_OK);
  EXPECT(fabs(g - 8.0 * log(2.0) / 3.14159265358979323846) < 1e-13);
  const double bad[8] = {1.0, 0.0, 0.0, -1.0, -1.0, 0.0, 0.0, 1.0};
  EXPECT(fwp_metric_pairing(q, bad, &g) == FWP_ERR_DEGENERATE_QUAD);
  double w = 1.0;
  EXPECT(fwp_symplectic_direct(q, q, &w) == FWP_OK && fabs(w) < 1e-8);
}

static void test_verify(void) {
  size_t n = fwp_verify_suite_count();
  EXPECT(n > 0);
  EXPECT(fwp_verify_suite(n) == NULL);
  char* report = NULL;
  int pass = 0;
  EXPECT(fwp_verify(fwp_verify_suite(0), 3, &report, &pass) == FWP_OK && pass == 1);
  fwp_string_free(report);
  EXPECT(fwp_verify("nope", 3, &report, &pass) == FWP_ERR_INVALID_ARGUMENT);
  EXPECT(strcmp(fwp_version(), "0.1.0") == 0);
}

int main(void) {
  test_coords();
  test_homeo();
  test_numerics();
  test_verify();
  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  return failures ? 1 : 0;
}
