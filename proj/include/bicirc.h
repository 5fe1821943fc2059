/*
 * (C) Copyright 2026 the bicirc authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 *
 * C interface to the bicirc library: bi-orthogonal polynomial systems on
 * the unit circle with 2j-k / j-2k moment structure. All objects are
 * opaque handles; every call reports a bicirc_status and writes results
 * through out-parameters. Complex numbers travel as {re, im} pairs.
 */
#ifndef BICIRC_H
#define BICIRC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  BICIRC_OK = 0,
  BICIRC_E_INVALID = 1,
  BICIRC_E_SINGULAR = 2,
  BICIRC_E_WINDOW = 3,
  BICIRC_E_SERIES = 4,
  BICIRC_E_BAND = 5,
  BICIRC_E_BUDGET = 6,
  BICIRC_E_REGION = 7,
  BICIRC_E_ANNULUS = 8,
  BICIRC_E_DEGENERATE = 9,
  BICIRC_E_ZERO_ARG = 10,
  BICIRC_E_INTERNAL = 11
} bicirc_status;

typedef enum { BICIRC_KIND_2JK = 0, BICIRC_KIND_J2K = 1 } bicirc_kind;

typedef enum {
  BICIRC_KERNEL_SUM = 0,
  BICIRC_KERNEL_MASTER = 1,
  BICIRC_KERNEL_CD = 2
} bicirc_kernel_method;

typedef struct {
  double re;
  double im;
} bicirc_complex;

typedef struct bicirc_weight bicirc_weight;
typedef struct bicirc_system bicirc_system;

const char* bicirc_version(void);
const char* bicirc_status_name(bicirc_status status);
/* Message for the most recent failure on this thread ("" when none). */
const char* bicirc_last_error(void);

/* ---- weights ------------------------------------------------------- */

/* Grammar: "exp" | "expu:u=<re>[+<im>i]" | "fourier:<path.json>" where the
 * JSON file holds {"coeffs": {"<k>": [re, im], ...}}. */
bicirc_status bicirc_weight_parse(const char* spec, bicirc_weight** out);
bicirc_status bicirc_weight_exp(bicirc_weight** out);
bicirc_status bicirc_weight_exp_deformed(bicirc_complex u, bicirc_weight** out);
bicirc_status bicirc_weight_fourier(const int* indices, const bicirc_complex* coeffs,
                                    size_t count, bicirc_weight** out);
void bicirc_weight_free(bicirc_weight* w);

bicirc_status bicirc_moment(const bicirc_weight* w, int k, bicirc_complex* out);
bicirc_status bicirc_deformed_moment(bicirc_complex u, int l, bicirc_complex* out);
/* det(g_{2j-k+ell}(u)) over 0 <= j,k < n */
bicirc_status bicirc_tau(int n, int ell, bicirc_complex u, bicirc_complex* out);

/* ---- systems -------------------------------------------------------- */

bicirc_status bicirc_system_new(const bicirc_weight* w, bicirc_kind kind, int offset,
                                bicirc_system** out);
void bicirc_system_free(bicirc_system* sys);

bicirc_status bicirc_system_det(bicirc_system* sys, int n, bicirc_complex* out);
bicirc_status bicirc_system_norm(bicirc_system* sys, int n, bicirc_complex* out);
/* family: 'P' or 'Q' for 2j-k systems, 'R' or 'S' for j-2k systems.
 * coeffs must hold n+1 entries (ascending degree, monic). */
bicirc_status bicirc_system_poly(bicirc_system* sys, char family, int n,
                                 bicirc_complex* coeffs);
bicirc_status bicirc_system_tail(bicirc_system* sys, char family, int n, bicirc_complex* out);

/* Recurrence coefficient by name: "delta","eta","beta","alpha" (2j-k) or
 * "kappa","rho","gamma","theta" (j-2k). */
bicirc_status bicirc_recurrence_coeff(const bicirc_weight* w, bicirc_kind kind,
                                      const char* which, int n, int offset,
                                      bicirc_complex* out);

/* Kernel K_n(z1, z2) (2j-k) or L_n(z1, z2) (j-2k) by the chosen route. */
bicirc_status bicirc_kernel(const bicirc_weight* w, bicirc_kind kind, int n, int offset,
                            bicirc_kernel_method method, bicirc_complex z1, bicirc_complex z2,
                            bicirc_complex* out);

/* ---- associated functions ------------------------------------------ */

/* which: 1 or 2. */
bicirc_status bicirc_caratheodory(const bicirc_weight* w, int which, int offset,
                                  bicirc_complex z, bicirc_complex* out);
/* family: "Phat","Qhat","Rhat","Shat","Pdagger","Sdagger",
 *         "Pcheck","Qcheck","Rcheck","Scheck". */
bicirc_status bicirc_assoc(const bicirc_weight* w, const char* family, int n, int offset,
                           bicirc_complex z, bicirc_complex* out);

/* ---- verification ---------------------------------------------------- */

/* Run a verification suite ("dodgson", "duality", "biorth", "recur",
 * "mixed", "kernels", "cd", "oracle", "assoc", "casorati", "closed-forms"
 * or "all"). options_json may be NULL or a JSON object with any of
 * {"n_max": int, "seed": int, "m": int, "tol_scale": double,
 *  "threads": int}. On success *report_json receives a malloc'd JSON
 * document (free with bicirc_string_free); its "ok" field tells whether
 * every check passed. */
bicirc_status bicirc_verify(const bicirc_weight* w, const char* suite,
                            const char* options_json, char** report_json);
void bicirc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* BICIRC_H */
