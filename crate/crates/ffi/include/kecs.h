#ifndef KECS_H
#define KECS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KecsMethod {
  /**
   * Flow on bipartite graphs, oracle otherwise.
   */
  KECS_METHOD_AUTO = 0,
  KECS_METHOD_AUGMENTING = 1,
  KECS_METHOD_FLOW = 2,
  KECS_METHOD_ORACLE = 3,
} KecsMethod;

typedef enum KecsStatus {
  KECS_STATUS_OK = 0,
  KECS_STATUS_NULL_POINTER = 1,
  KECS_STATUS_INVALID_ARGUMENT = 2,
  KECS_STATUS_INVALID_GRAPH = 3,
  KECS_STATUS_PARSE_ERROR = 4,
  KECS_STATUS_NOT_BIPARTITE = 5,
  KECS_STATUS_TOO_LARGE = 6,
  /**
   * The oracle ran out of budget; the result is a lower bound.
   */
  KECS_STATUS_BUDGET_EXHAUSTED = 7,
  KECS_STATUS_BUFFER_TOO_SMALL = 8,
  KECS_STATUS_PANIC = 9,
} KecsStatus;

typedef struct KecsGraph KecsGraph;

typedef struct KecsSolution KecsSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread. Valid until the next
 * call into the library from the same thread.
 */
const char *kecs_last_error(void);

/**
 * Builds a graph on `n` vertices from `m` edges given as `2 * m` vertex
 * indices.
 *
 * # Safety
 * `endpoints` must point to `2 * m` readable values (it may be null when
 * `m` is 0) and `out` must be writable.
 */
enum KecsStatus kecs_graph_from_edges(size_t n,
                                      const size_t *endpoints,
                                      size_t m,
                                      struct KecsGraph **out);

/**
 * Parses the `p el` edge-list format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum KecsStatus kecs_graph_parse_edge_list(const char *text, struct KecsGraph **out);

/**
 * Parses one graph6 string (short form).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum KecsStatus kecs_graph_parse_graph6(const char *text, struct KecsGraph **out);

/**
 * Named fixture such as `petersen`, `k33` or `cycle:5`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` writable.
 */
enum KecsStatus kecs_graph_named(const char *name, struct KecsGraph **out);

/**
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t kecs_graph_vertex_count(const struct KecsGraph *g);

/**
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t kecs_graph_edge_count(const struct KecsGraph *g);

/**
 * # Safety
 * `g` must be null or a handle not yet freed.
 */
void kecs_graph_free(struct KecsGraph *g);

/**
 * Computes a maximum `k`-edge-colorable subgraph. `budget` caps oracle
 * search nodes, 0 meaning unlimited. On `BudgetExhausted` the solution is
 * still stored and holds the best subgraph found.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum KecsStatus kecs_solve(const struct KecsGraph *g,
                           size_t k,
                           enum KecsMethod method,
                           uint64_t budget,
                           struct KecsSolution **out);

/**
 * # Safety
 * `s` must be null or a live solution handle.
 */
size_t kecs_solution_nu(const struct KecsSolution *s);

/**
 * # Safety
 * `s` must be null or a live solution handle.
 */
bool kecs_solution_is_exact(const struct KecsSolution *s);

/**
 * Writes the color of each edge (1..=k, 0 when the edge is left out) into
 * `colors`, which must hold one entry per edge.
 *
 * # Safety
 * `s` must be a live solution handle and `colors` must point to `len`
 * writable values.
 */
enum KecsStatus kecs_solution_colors(const struct KecsSolution *s, uint32_t *colors, size_t len);

/**
 * Certificate JSON for the solution. Release with `kecs_string_free`.
 *
 * # Safety
 * `s` must be a live solution handle and `out` writable.
 */
enum KecsStatus kecs_solution_certificate(const struct KecsSolution *s, char **out);

/**
 * # Safety
 * `s` must be null or a handle not yet freed.
 */
void kecs_solution_free(struct KecsSolution *s);

/**
 * Checks a certificate without solving. `valid` receives the verdict; the
 * first violation, if any, is available from `kecs_last_error`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `valid` writable.
 */
enum KecsStatus kecs_verify_certificate(const char *json, bool *valid);

/**
 * Writes nu_0, nu_1, ... into `values` until every edge fits, and the
 * number written into `len`. `BufferTooSmall` reports the needed length in
 * `len`.
 *
 * # Safety
 * `g` must be a live graph handle, `values` must point to `cap` writable
 * values and `len` must be writable.
 */
enum KecsStatus kecs_spectrum(const struct KecsGraph *g,
                              uint64_t budget,
                              size_t *values,
                              size_t cap,
                              size_t *len);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void kecs_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* KECS_H */
