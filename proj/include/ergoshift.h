#ifndef ERGOSHIFT_H
#define ERGOSHIFT_H

/* C API for the ergoshift library.
 *
 * All entry points are thread-compatible: distinct reports may be used from
 * distinct threads concurrently. Strings returned by the API are owned by the
 * report (or, for es_last_error, by thread-local storage) and remain valid
 * until the owning object is freed.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum es_status {
  ES_OK = 0,
  ES_CHECK_FAILED = 1,
  ES_CONFIG_ERROR = 2,
  ES_PRECISION_EXHAUSTED = 3,
  ES_INTERNAL_ERROR = 4
} es_status;

typedef struct es_report es_report;

/* Runs one experiment described by a JSON config string. On ES_OK or
 * ES_CHECK_FAILED *out receives a report that must be freed with
 * es_report_free; on other statuses *out is set to NULL and es_last_error
 * describes the failure. */
es_status es_run(const char* config_json, es_report** out);

/* Runs a named suite ("acceptance" or "quick"). out_dir may be NULL or empty
 * to suppress CSV artifacts. */
es_status es_suite(const char* name, int threads, const char* out_dir,
                   es_report** out);

/* Runs one acceptance criterion, 1..8. */
es_status es_acceptance(int criterion, int threads, const char* out_dir,
                        es_report** out);

/* Full report as a JSON document. Owned by the report. */
const char* es_report_json(const es_report* report);

/* 1 if every check in the report passed, else 0. */
int es_report_passed(const es_report* report);

void es_report_free(es_report* report);

/* Message for the most recent failure on the calling thread, or "". */
const char* es_last_error(void);

/* Library version, e.g. "1.0.0". */
const char* es_version(void);

#ifdef __cplusplus
}
#endif

#endif /* ERGOSHIFT_H */
