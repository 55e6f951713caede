/*
 * msidx.h
 *
 * C interface to the matching-statistics index: build or load an index,
 * compute matching statistics of patterns in one pass, stream patterns one
 * byte at a time, list occurrences and extract maximal exact matches.
 *
 * All handles are opaque. Every call returns an msidx_status; on failure a
 * thread-local message is available through msidx_last_error().
 */
#ifndef MSIDX_H
#define MSIDX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MSIDX_API __declspec(dllexport)
#else
#define MSIDX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status values double as process exit codes in the CLI. */
typedef enum msidx_status {
  MSIDX_OK = 0,
  MSIDX_ERR_INTERNAL = 1,
  MSIDX_ERR_INVALID_INPUT = 2, /* validation: bad bytes, bad FASTA, bad arguments */
  MSIDX_ERR_FORMAT = 3,        /* corrupt index file or version mismatch */
  MSIDX_ERR_IO = 4
} msidx_status;

/* pos value for entries whose character does not occur in the text */
#define MSIDX_NONE UINT64_MAX

typedef enum msidx_input_mode { MSIDX_MODE_RAW = 0, MSIDX_MODE_FASTA = 1 } msidx_input_mode;

typedef enum msidx_variant {
  MSIDX_VARIANT_STD = 0,
  MSIDX_VARIANT_NAIVE = 1,
  MSIDX_VARIANT_HEUR = 2,
  MSIDX_VARIANT_TWOPASS = 3
} msidx_variant;

typedef struct msidx_index msidx_index;
typedef struct msidx_stream msidx_stream;

typedef struct msidx_build_options {
  msidx_input_mode mode;
  uint64_t window;   /* prefix-free parsing window, >= 2 */
  uint64_t modulus;  /* prefix-free parsing trigger modulus, >= 2 */
  int reversed;      /* index the reversed text, for left-to-right streaming */
  int with_locate;
  int with_thresholds;
} msidx_build_options;

typedef struct msidx_info {
  uint64_t n;  /* text length including the sentinel */
  uint64_t r;  /* BWT runs */
  uint64_t rule_count;
  uint64_t window;
  uint64_t modulus;
  uint64_t sigma;
  int reversed;
  int has_locate;
  int has_thresholds;
} msidx_info;

typedef struct msidx_counters {
  uint64_t steps;
  uint64_t lf_hits;
  uint64_t mismatches;
  uint64_t restarts;
  uint64_t lce_calls;
  uint64_t lce_char_compares;
  uint64_t lce_skips;
  uint64_t random_accesses;
} msidx_counters;

/* Returns 1 to continue, 0 to stop early. */
typedef int (*msidx_position_fn)(void* ctx, uint64_t pos);
typedef int (*msidx_mem_fn)(void* ctx, uint64_t i, uint64_t pos, uint64_t len);

MSIDX_API const char* msidx_last_error(void);
MSIDX_API const char* msidx_status_string(msidx_status status);

MSIDX_API void msidx_build_options_default(msidx_build_options* opts);

MSIDX_API msidx_status msidx_build(const uint8_t* data, size_t len, const msidx_build_options* opts,
                                   msidx_index** out);
MSIDX_API msidx_status msidx_load(const char* path, msidx_index** out);
MSIDX_API msidx_status msidx_save(const msidx_index* idx, const char* path);
MSIDX_API void msidx_free(msidx_index* idx);

MSIDX_API msidx_status msidx_get_info(const msidx_index* idx, msidx_info* info);

/* Matching statistics of pattern[0..m). pos_out and len_out hold m entries
 * each. counters may be NULL; when given it is accumulated into. */
MSIDX_API msidx_status msidx_matching_statistics(const msidx_index* idx, const uint8_t* pattern,
                                                 size_t m, msidx_variant variant,
                                                 uint64_t* pos_out, uint64_t* len_out,
                                                 msidx_counters* counters);

/* Streaming requires an index built with reversed = 1. */
MSIDX_API msidx_status msidx_stream_open(const msidx_index* idx, msidx_variant variant,
                                         msidx_stream** out);
MSIDX_API msidx_status msidx_stream_push(msidx_stream* s, uint8_t c, uint64_t* pos,
                                         uint64_t* len);
MSIDX_API msidx_status msidx_stream_counters(const msidx_stream* s, msidx_counters* counters);
MSIDX_API void msidx_stream_close(msidx_stream* s);

/* Occurrences of pattern[i..j] given the pattern's matching statistics.
 * Requires an index built with with_locate = 1. */
MSIDX_API msidx_status msidx_locate(const msidx_index* idx, const uint64_t* ms_pos,
                                    const uint64_t* ms_len, size_t m, size_t i, size_t j,
                                    msidx_position_fn fn, void* ctx);

MSIDX_API msidx_status msidx_mems(const uint64_t* ms_pos, const uint64_t* ms_len, size_t m,
                                  uint64_t min_len, msidx_mem_fn fn, void* ctx);

#ifdef __cplusplus
}
#endif

#endif /* MSIDX_H */
