/* C interface to the direct-product code experiment library.
 *
 * Conventions:
 *   - Functions returning int give a status code (HDX_OK on success).
 *   - On failure, hdx_last_error() returns a message for the current
 *     thread, valid until the next failing call on that thread.
 *   - Strings returned through an out-parameter are owned by the caller
 *     and must be released with hdx_string_free().
 *   - Handles are opaque; free them with the matching *_free(). Passing
 *     NULL to a free function is a no-op.
 *   - Handles are not thread-safe; confine each to one thread.
 */

#ifndef HDX_H
#define HDX_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define HDX_OK 0
#define HDX_ERR_NULL 1    /* required pointer argument was NULL */
#define HDX_ERR_UTF8 2    /* string argument was not valid UTF-8 */
#define HDX_ERR_PARSE 3   /* configuration failed to parse or validate */
#define HDX_ERR_RUNTIME 4 /* sampling, routing, or decoding failed */
#define HDX_ERR_PANIC 5   /* internal invariant violation */

/* Opaque experiment configuration. */
typedef struct HdxConfig HdxConfig;
/* Opaque hypergraph system with its own random stream. */
typedef struct HdxSystem HdxSystem;

/* Static version string; do not free. */
const char *hdx_version(void);

/* Last error message on this thread; never NULL, do not free. */
const char *hdx_last_error(void);

/* Frees a string returned through an out-parameter. */
void hdx_string_free(char *s);

/* Parses a flat "key = value" experiment configuration (same format as
 * the preset files). On HDX_OK, *out owns a new config. */
int hdx_config_parse(const char *text, HdxConfig **out);
void hdx_config_free(HdxConfig *cfg);

/* Writes the system identifier, e.g. "subspace-q4-d3". */
int hdx_config_system_id(const HdxConfig *cfg, char **out);

/* Runs the configured encode -> corrupt -> decode campaign and writes the
 * JSON-lines report (one line per trial, then a summary line). The result
 * is deterministic in the configuration, including its seed. */
int hdx_config_run(const HdxConfig *cfg, char **out);

/* Builds the configured hypergraph system; its internal random stream is
 * seeded from `seed`. */
int hdx_system_build(const HdxConfig *cfg, uint64_t seed, HdxSystem **out);
void hdx_system_free(HdxSystem *sys);

/* Local degrees; each returns 0 on a NULL handle. */
uint64_t hdx_system_degree(const HdxSystem *sys);      /* vertices per edge */
uint64_t hdx_system_up_degree(const HdxSystem *sys);   /* edges per vertex */
uint64_t hdx_system_edge_degree(const HdxSystem *sys); /* intersection index space */

/* Samples a uniform hyperedge name. */
int hdx_system_random_edge(HdxSystem *sys, char **out);

/* Routes between two hyperedge names; writes the path as a JSON array of
 * names. Routing is randomized; a failure is HDX_ERR_RUNTIME and the
 * caller may simply retry. */
int hdx_system_route(HdxSystem *sys, const char *from, const char *to,
                     char **out);

#ifdef __cplusplus
}
#endif

#endif /* HDX_H */
