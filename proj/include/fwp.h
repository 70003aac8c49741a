/* C interface to the Farey shear / Weil-Petersson library.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every call that can fail returns an fwp_status; on failure the message is
 * available from fwp_last_error() on the same thread until the next call.
 * Strings returned through char** are owned by the caller and released with
 * fwp_string_free.
 */
#ifndef FWP_H
#define FWP_H

#include <stddef.h>
#include <stdint.h>

#if defined(FWP_BUILDING_LIBRARY)
#define FWP_API __attribute__((visibility("default")))
#else
#define FWP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fwp_status {
  FWP_OK = 0,
  FWP_ERR_INVALID_ARGUMENT = 1,
  FWP_ERR_PARSE = 2,
  FWP_ERR_NOT_AN_EDGE = 3,
  FWP_ERR_DEGENERATE_POINTS = 4,
  FWP_ERR_DEGENERATE_QUAD = 5,
  FWP_ERR_DEGENERATE_IMAGE = 6,
  FWP_ERR_MONOTONICITY = 7,
  FWP_ERR_NOT_DIFFERENTIABLE = 8,
  FWP_ERR_NOT_IN_P = 9,
  FWP_ERR_IO = 10,
  FWP_ERR_INTERNAL = 11
} fwp_status;

typedef enum fwp_coord_kind { FWP_SHEAR = 0, FWP_DIAMOND = 1 } fwp_coord_kind;

typedef struct fwp_coords fwp_coords;
typedef struct fwp_homeo fwp_homeo;

FWP_API const char* fwp_version(void);
FWP_API const char* fwp_status_name(fwp_status status);
FWP_API const char* fwp_last_error(void);
FWP_API void fwp_string_free(char* s);

/* Coordinate functions. */
FWP_API fwp_status fwp_coords_new(fwp_coord_kind kind, fwp_coords** out);
FWP_API fwp_status fwp_coords_parse(const char* json, fwp_coords** out);
FWP_API fwp_status fwp_coords_load(const char* path, fwp_coords** out);
/* Vertices as "p/q", "n" or "inf". Setting 0 removes the entry. */
FWP_API fwp_status fwp_coords_set(fwp_coords* c, const char* a, const char* b, double value);
FWP_API fwp_status fwp_coords_get(const fwp_coords* c, const char* a, const char* b, double* value);
FWP_API fwp_status fwp_coords_kind(const fwp_coords* c, fwp_coord_kind* kind);
FWP_API fwp_status fwp_coords_size(const fwp_coords* c, size_t* size);
FWP_API fwp_status fwp_coords_to_json(const fwp_coords* c, char** json);
FWP_API void fwp_coords_free(fwp_coords* c);

/* Circle homeomorphisms. */
FWP_API fwp_status fwp_homeo_from_coords(const fwp_coords* c, unsigned max_gen, fwp_homeo** out);
FWP_API fwp_status fwp_homeo_from_samples(const char* csv, fwp_homeo** out);
/* "perturbed:EPS" */
FWP_API fwp_status fwp_homeo_builtin(const char* spec, fwp_homeo** out);
/* "developed", "vertices", "samples" or "analytic"; owned by the handle. */
FWP_API const char* fwp_homeo_kind(const fwp_homeo* h);
FWP_API fwp_status fwp_homeo_eval(const fwp_homeo* h, const char* vertex, double* re, double* im);
/* Breakpoints of a developed map as JSON. */
FWP_API fwp_status fwp_homeo_breakpoints(const fwp_homeo* h, char** json);
FWP_API void fwp_homeo_free(fwp_homeo* h);

/* Reports. pass may be NULL. */
FWP_API fwp_status fwp_roundtrip(const fwp_coords* c, unsigned max_gen, double tol, char** report, int* pass);
FWP_API fwp_status fwp_develop_csv(const fwp_homeo* h, size_t samples, char** csv);
FWP_API fwp_status fwp_extract(const fwp_homeo* h, unsigned max_gen, char** report);
/* base may be NULL for the identity. */
FWP_API fwp_status fwp_wp(const fwp_coords* theta1, const fwp_coords* theta2, const fwp_coords* base, char** report,
                          int* pass);
FWP_API fwp_status fwp_qc(const fwp_coords* c, unsigned max_gen, char** report, int* pass);
/* suite is one of fwp_verify_suite(i) or "all". */
FWP_API fwp_status fwp_verify(const char* suite, uint64_t seed, char** report, int* pass);
FWP_API size_t fwp_verify_suite_count(void);
FWP_API const char* fwp_verify_suite(size_t i);
/* h may be NULL for the identity. */
FWP_API fwp_status fwp_render_svg(unsigned max_gen, int dual, int ford, const fwp_homeo* h, char** svg);

/* Numerics. Quads are four unit complex numbers in counterclockwise order,
 * interleaved as re0, im0, re1, im1, ... */
FWP_API fwp_status fwp_sigma(double a_re, double a_im, double b_re, double b_im, double* re, double* im);
FWP_API fwp_status fwp_metric_pairing(const double q1[8], const double q2[8], double* out);
FWP_API fwp_status fwp_symplectic_direct(const double q1[8], const double q2[8], double* out);

#ifdef __cplusplus
}
#endif

#endif
