/*
 * asev: airport service EV fleet simulator and rollout controller.
 *
 * C interface over opaque handles. Every function returning asev_status
 * records a message retrievable with asev_last_error() on failure; the
 * message is per thread and valid until the next failing call on it.
 */
#ifndef ASEV_ASEV_H
#define ASEV_ASEV_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(ASEV_BUILDING_LIBRARY)
#define ASEV_API __declspec(dllexport)
#else
#define ASEV_API __declspec(dllimport)
#endif
#else
#define ASEV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum asev_status {
  ASEV_OK = 0,
  ASEV_ERR_INPUT = 1,      /* malformed scenario, unreadable or unwritable file */
  ASEV_ERR_INFEASIBLE = 2, /* a run violated the delay threshold or drained a battery */
  ASEV_ERR_ARGUMENT = 3,   /* null handle, bad enum value, unknown key */
  ASEV_ERR_INTERNAL = 4
} asev_status;

typedef enum asev_policy {
  ASEV_POLICY_GREEDY = 0,
  ASEV_POLICY_RENEWABLE = 1,
  ASEV_POLICY_ROLLOUT = 2
} asev_policy;

typedef struct asev_scenario asev_scenario;
typedef struct asev_report asev_report;
typedef struct asev_diagnostics asev_diagnostics;

typedef struct asev_cost {
  double energy;
  double degradation;
  double terminal;
  double total;
} asev_cost;

ASEV_API const char* asev_version(void);
ASEV_API const char* asev_last_error(void);

/* Policy names: "greedy", "renewable", "rollout". */
ASEV_API asev_status asev_policy_from_name(const char* name, asev_policy* out);
ASEV_API const char* asev_policy_name(asev_policy policy);

/* ---- scenarios ---------------------------------------------------------- */

ASEV_API asev_status asev_scenario_load(const char* path, asev_scenario** out);
ASEV_API void asev_scenario_free(asev_scenario* scenario);

ASEV_API asev_status asev_scenario_set_seed(asev_scenario* scenario, uint64_t seed);
ASEV_API asev_status asev_scenario_set_param(asev_scenario* scenario, const char* key,
                                             double value);
ASEV_API asev_status asev_scenario_set_parallel(asev_scenario* scenario, int enabled);

/* Comma-separated list of keys accepted by asev_scenario_set_param. */
ASEV_API const char* asev_sweepable_keys(void);

ASEV_API double asev_scenario_stage_minutes(const asev_scenario* scenario);
ASEV_API int asev_scenario_horizon(const asev_scenario* scenario);
ASEV_API size_t asev_scenario_flight_count(const asev_scenario* scenario);

/* Policies listed in the scenario file ("policies", else "policy"); may be 0. */
ASEV_API size_t asev_scenario_default_policies(const asev_scenario* scenario, asev_policy* out,
                                               size_t capacity);

/* ---- validation --------------------------------------------------------- */

/* Never fails on a bad scenario; the problems are returned as diagnostics. */
ASEV_API asev_status asev_validate(const char* path, asev_diagnostics** out);
ASEV_API size_t asev_diagnostics_count(const asev_diagnostics* diagnostics);
ASEV_API const char* asev_diagnostics_message(const asev_diagnostics* diagnostics, size_t index);
ASEV_API void asev_diagnostics_free(asev_diagnostics* diagnostics);

/* ---- runs --------------------------------------------------------------- */

/* Returns ASEV_OK with a report even when the run is infeasible; check
 * asev_report_feasible(). */
ASEV_API asev_status asev_run(const asev_scenario* scenario, asev_policy policy,
                              asev_report** out);

/* Runs `count` policies with common random numbers; out[i] receives a report. */
ASEV_API asev_status asev_compare(const asev_scenario* scenario, const asev_policy* policies,
                                  size_t count, asev_report** out);

ASEV_API void asev_report_free(asev_report* report);
ASEV_API int asev_report_feasible(const asev_report* report);
ASEV_API asev_policy asev_report_policy(const asev_report* report);
ASEV_API asev_status asev_report_cost(const asev_report* report, asev_cost* out);

/* Empty string for feasible runs. */
ASEV_API const char* asev_report_infeasibility(const asev_report* report);
ASEV_API int asev_report_infeasible_stage(const asev_report* report);

/* JSON document owned by the report. */
ASEV_API const char* asev_report_json(const asev_report* report);

/* Writes report.json, timeline_<asev>.csv, load_curve.csv, service_log.csv. */
ASEV_API asev_status asev_report_write(const asev_report* report, const char* directory);

/* One line: policy total energy degradation terminal feasible. */
ASEV_API const char* asev_report_summary(const asev_report* report, const char* currency);

/* Comparison table over `count` reports, deltas against reports[0]. */
ASEV_API const char* asev_comparison_csv(const asev_report* const* reports, size_t count);
ASEV_API const char* asev_comparison_table(const asev_report* const* reports, size_t count,
                                           const char* currency);

/* ---- tariff generator --------------------------------------------------- */

/* Expands `start_hhmm,end_hhmm,price` tiers into a `stage,value` price file
 * with horizon+1 rows. terminal_price < 0 means "wrap to the 00:00 tier". */
ASEV_API asev_status asev_expand_tariff(const char* tiers_path, const char* out_path,
                                        int horizon, double stage_minutes,
                                        double terminal_price);

#ifdef __cplusplus
}
#endif

#endif /* ASEV_ASEV_H */
