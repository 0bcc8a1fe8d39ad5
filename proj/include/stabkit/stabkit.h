#ifndef STABKIT_H
#define STABKIT_H

/*
 * C interface to libstabkit. Structured arguments are passed as JSON request
 * strings; reports come back as newly allocated strings (JSON, CSV, SVG or
 * text, per the request's "format") that the caller releases with
 * stab_string_free. Rationals are written "p/q".
 *
 * Every call returns a stab_status. On STAB_OK and STAB_NEGATIVE the report
 * is set; otherwise *out is NULL and stab_last_error() describes the failure.
 */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(STABKIT_BUILDING)
#define STAB_API __attribute__((visibility("default")))
#else
#define STAB_API
#endif

typedef enum stab_status {
    STAB_OK = 0,
    STAB_NEGATIVE = 1,      /* computed, and the verdict is negative */
    STAB_INVALID_INPUT = 2, /* malformed request or out-of-contract values */
    STAB_RESOURCE = 3,      /* an enumeration bound was exceeded */
    STAB_INTERNAL = 4
} stab_status;

typedef struct stab_lattice stab_lattice;
typedef struct stab_quiver stab_quiver;

STAB_API const char* stab_version(void);
/* Message of the last failed call on this thread; empty after a success. */
STAB_API const char* stab_last_error(void);
STAB_API void stab_string_free(char* s);

/* {"gram": [[2]], "ample": [1], "curves": [], "basis": ["h"]}; NULL gives NS = Zh, h^2 = 2. */
STAB_API stab_status stab_lattice_create(const char* config, stab_lattice** out);
STAB_API void stab_lattice_free(stab_lattice* lat);

/* Requests name classes over the basis, e.g. {"B": "0", "omega": "t*h"}. */
STAB_API stab_status stab_k3_scan(const stab_lattice* lat, const char* request, char** out);
STAB_API stab_status stab_k3_guard(const stab_lattice* lat, const char* request, char** out);
STAB_API stab_status stab_k3_heart_check(const stab_lattice* lat, const char* request, char** out);
STAB_API stab_status stab_k3_normalize(const stab_lattice* lat, const char* request, char** out);

/* {"vertices": 2, "arrows": [[1, 2]], "p": 2, "charge": [["-1","1"], ["1","1"]]};
 * vertices are numbered from 1. NULL gives that A2 example. */
STAB_API stab_status stab_quiver_create(const char* config, stab_quiver** out);
STAB_API void stab_quiver_free(stab_quiver* q);

STAB_API stab_status stab_quiver_hn(const stab_quiver* q, const char* request, char** out);
STAB_API stab_status stab_quiver_jh(const stab_quiver* q, const char* request, char** out);
STAB_API stab_status stab_quiver_check(const stab_quiver* q, const char* request, char** out);
STAB_API stab_status stab_quiver_deform(const stab_quiver* q, const char* request, char** out);
STAB_API stab_status stab_quiver_tilt(const stab_quiver* q, const char* request, char** out);

STAB_API stab_status stab_curve_decompose(const char* request, char** out);
STAB_API stab_status stab_curve_polygon(const char* request, char** out);
STAB_API stab_status stab_curve_order_check(const char* request, char** out);

/* Group elements are {"M": [[a, b], [c, d]], "f0": "p/q"}. */
STAB_API stab_status stab_group_compose(const char* request, char** out);
/* lat may be NULL when the request acts on a curve charge. */
STAB_API stab_status stab_group_act(const stab_lattice* lat, const char* request, char** out);
STAB_API stab_status stab_group_commute(const stab_lattice* lat, const char* request, char** out);

#ifdef __cplusplus
}
#endif

#endif
