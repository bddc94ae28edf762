/* C interface to the nlslab engine.
 *
 * The engine runs pseudo-spectral NLS experiments described by sectioned
 * config files and writes reports (JSON), aggregate CSV rows, and plot data.
 * All functions are thread-compatible: distinct sessions may be used from
 * distinct threads; a single session must not be shared concurrently.
 */
#ifndef NLSLAB_H
#define NLSLAB_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct nlslab_session nlslab_session;

typedef enum nlslab_status {
    NLSLAB_OK = 0,
    /* Malformed config / bad arguments (CLI exit code 2). */
    NLSLAB_ERR_BADINPUT = 1,
    /* Run-time failure: guard breach, numerical blowup, I/O. */
    NLSLAB_ERR_RUNTIME = 2
} nlslab_status;

const char* nlslab_version(void);

nlslab_session* nlslab_session_new(void);
void nlslab_session_free(nlslab_session* s);

/* Message from the most recent failing call on this session; owned by the
 * session, valid until the next call. Never NULL. */
const char* nlslab_last_error(const nlslab_session* s);

nlslab_status nlslab_set_workers(nlslab_session* s, int workers);
nlslab_status nlslab_set_seed(nlslab_session* s, unsigned long long seed);
nlslab_status nlslab_set_svg(nlslab_session* s, int enable);

/* Run one experiment config; outputs land in out_dir. */
nlslab_status nlslab_run(nlslab_session* s, const char* config_path, const char* out_dir);

/* Sweep one dotted config key (e.g. "solver.p") over comma-separated values. */
nlslab_status nlslab_sweep(nlslab_session* s, const char* config_path, const char* param,
                           const char* values_csv, const char* out_dir);

/* Emit per-run time-series CSV (and SVG when enabled) for every report under
 * report_dir. */
nlslab_status nlslab_plotdata(nlslab_session* s, const char* report_dir);

#ifdef __cplusplus
}
#endif

#endif /* NLSLAB_H */
