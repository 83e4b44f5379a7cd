#ifndef FDOM_FDOM_H
#define FDOM_FDOM_H

/*
 * Dirichlet fundamental domains for unit groups of orders in indefinite
 * rational quaternion algebras.
 *
 * All objects are opaque handles released with the matching *_free call.
 * Every fallible call returns an fdom_status; on failure a description is
 * available from fdom_last_error() on the same thread. Strings returned
 * through char** out-parameters are released with fdom_string_free.
 *
 * Real arithmetic uses a per-thread working precision that each call sets
 * from its own options, so handles computed at different precisions may be
 * used from one thread in any order.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(FDOM_BUILDING_LIBRARY)
#define FDOM_API __declspec(dllexport)
#else
#define FDOM_API __declspec(dllimport)
#endif
#else
#define FDOM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fdom_status {
  FDOM_OK = 0,
  FDOM_ERR_INVALID_ARGUMENT = 1,
  FDOM_ERR_DEFINITE_ALGEBRA = 2,
  FDOM_ERR_INVALID_ELEMENT = 3,
  FDOM_ERR_DEGENERATE_INPUT = 4,
  FDOM_ERR_DIVERGENCE = 5,
  FDOM_ERR_NON_COCOMPACT = 6,
  FDOM_ERR_UNSUPPORTED = 7,
  FDOM_ERR_PRECISION = 8,
  FDOM_ERR_RESOURCE = 9,
  FDOM_ERR_NOT_IN_GROUP = 10,
  FDOM_ERR_IO = 11,
  FDOM_ERR_NUMERIC = 12,
  FDOM_ERR_INTERNAL = 13
} fdom_status;

typedef struct fdom_order fdom_order;
typedef struct fdom_domain fdom_domain;

typedef struct fdom_options {
  int precision_digits; /* decimal digits, >= 10; default 38 */
  uint64_t seed;
  double C;             /* search bound; 0 = heuristic default */
  double c_balance;     /* batch-size constant; 0 = 1/2 */
  double r_exponent;    /* sampling-radius exponent; 0 = 2.1 */
  double area;          /* area override; 0 = from the discriminant */
  int use_ifp;          /* 1 = quadratic-solving inner loop (default), 0 = plain enumeration */
  size_t max_iterations; /* 0 = 1000 */
} fdom_options;

FDOM_API const char* fdom_version(void);
FDOM_API const char* fdom_last_error(void);
FDOM_API const char* fdom_status_name(fdom_status status);
FDOM_API void fdom_string_free(char* s);

FDOM_API void fdom_options_init(fdom_options* options);

/* Orders. a and b are rationals written "p" or "p/q". */
FDOM_API fdom_status fdom_order_maximal(const char* a, const char* b, fdom_order** out);
/* basis: 16 rationals, row-major, each row the coefficients of 1, i, j, ij. */
FDOM_API fdom_status fdom_order_from_basis(const char* a, const char* b, const char* const basis[16],
                                           fdom_order** out);
/* Text file: first line "a,b"; optionally 16 more rationals (whitespace or
   comma separated) giving an explicit basis. Lines starting with '#' are
   ignored. Without a basis the maximal order is used. */
FDOM_API fdom_status fdom_order_from_file(const char* path, fdom_order** out);
/* A maximal order in an algebra of the given squarefree discriminant. */
FDOM_API fdom_status fdom_order_for_discriminant(int64_t discriminant, fdom_order** out);
/* Eichler order of the given level in the 2x2 matrix algebra. */
FDOM_API fdom_status fdom_order_eichler(int64_t level, fdom_order** out);
FDOM_API void fdom_order_free(fdom_order* order);

FDOM_API int64_t fdom_order_discriminant(const fdom_order* order);         /* of the algebra */
FDOM_API int64_t fdom_order_reduced_discriminant(const fdom_order* order); /* of the order */
FDOM_API fdom_status fdom_order_algebra(const fdom_order* order, char** a, char** b);
/* Heuristic search bound and area target (the latter fails for D = 1 or
   non-maximal orders). */
FDOM_API double fdom_order_default_C(const fdom_order* order);
FDOM_API fdom_status fdom_order_area_target(const fdom_order* order, double* out);

/* Domains. On FDOM_ERR_DIVERGENCE *out still receives the partial result. */
FDOM_API fdom_status fdom_domain_compute(const fdom_order* order, const fdom_options* options, fdom_domain** out);
FDOM_API void fdom_domain_free(fdom_domain* domain);

FDOM_API size_t fdom_domain_side_count(const fdom_domain* domain);
FDOM_API size_t fdom_domain_generator_count(const fdom_domain* domain);
FDOM_API double fdom_domain_area(const fdom_domain* domain); /* negative when infinite */
FDOM_API double fdom_domain_area_target(const fdom_domain* domain);
FDOM_API int fdom_domain_converged(const fdom_domain* domain);
FDOM_API int fdom_domain_exact(const fdom_domain* domain);
FDOM_API int fdom_domain_pairing_complete(const fdom_domain* domain);
FDOM_API size_t fdom_domain_elements_found(const fdom_domain* domain);
FDOM_API size_t fdom_domain_trials(const fdom_domain* domain);
FDOM_API size_t fdom_domain_iterations(const fdom_domain* domain);
/* Full-precision decimal strings. */
FDOM_API fdom_status fdom_domain_area_string(const fdom_domain* domain, char** out);

/* The side paired with side i, or -1. */
FDOM_API long fdom_domain_side_partner(const fdom_domain* domain, size_t side);
/* Order coordinates of the element of side i (4 entries; fails if they do
   not fit in 64 bits or the side is infinite). */
FDOM_API fdom_status fdom_domain_side_coords(const fdom_domain* domain, size_t side, int64_t coords[4]);

/* Word problem. The element is given by order coordinates and must have
   reduced norm 1. letters receives signed 1-based side indices: +s is the
   element of side s-1, -s its inverse; their product is the element.
   Release with fdom_word_free. */
FDOM_API fdom_status fdom_domain_word(const fdom_domain* domain, const int64_t coords[4], long** letters,
                                      size_t* length);
FDOM_API void fdom_word_free(long* letters);
/* Product of a word in order coordinates. */
FDOM_API fdom_status fdom_domain_evaluate_word(const fdom_domain* domain, const long* letters, size_t length,
                                               int64_t coords[4]);

/* Export. */
FDOM_API fdom_status fdom_domain_json(const fdom_domain* domain, char** out);
FDOM_API fdom_status fdom_domain_write_json(const fdom_domain* domain, const char* path);
FDOM_API fdom_status fdom_domain_write_svg(const fdom_domain* domain, const char* path, int overlay_circles);

/* Offline re-verification of a saved document. *ok is 1 when the stored
   pairing and area are reproduced; message describes the outcome. */
FDOM_API fdom_status fdom_verify_file(const char* path, int* ok, char** message);

/* Timing calibration: for each C run the given number of full enumerations
   and write a CSV with header "C,elapsed_s,found". With C_values NULL, ten
   values from a quarter of the heuristic bound up to twice it are used.
   slope is the fitted elements-per-trial slope in C, r_squared the quality
   of the fit elapsed = A + B C^2. area may be 0 for maximal orders. */
FDOM_API fdom_status fdom_calibrate(const fdom_order* order, const double* C_values, size_t count, size_t trials,
                                    uint64_t seed, double area, int precision_digits, const char* csv_path,
                                    double* slope, double* r_squared);

#ifdef __cplusplus
}
#endif

#endif
