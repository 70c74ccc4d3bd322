/*
 * hyperdetach -- fair vertex splitting for hypergraphs and factorizations
 * of complete multi-uniform and multipartite designs.
 *
 * C interface of the shared library. Structured data crosses the boundary
 * as JSON text (schemas are documented in the repository README); handles
 * are opaque. Every string returned through a char** out-parameter is owned
 * by the caller and must be released with hyperdetach_string_free().
 */

#ifndef HYPERDETACH_H
#define HYPERDETACH_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hyperdetach_status {
  HYPERDETACH_OK = 0,
  /* A verification report contains failed checks. */
  HYPERDETACH_ERROR_VERIFICATION = 1,
  /* The request names an infeasible or refused construction; *error holds
     a structured JSON reason. */
  HYPERDETACH_ERROR_INFEASIBLE = 2,
  /* Malformed JSON or domain errors in the input. */
  HYPERDETACH_ERROR_INVALID_INPUT = 3,
  /* A bug: the library reached a state its own invariants forbid. */
  HYPERDETACH_ERROR_INTERNAL = 4
} hyperdetach_status;

typedef struct hyperdetach_hypergraph hyperdetach_hypergraph;

const char* hyperdetach_version(void);

void hyperdetach_string_free(char* text);

/* ------------------------------------------------------------------ */
/* Hypergraph handles                                                  */
/* ------------------------------------------------------------------ */

/* Parses { "vertices": [...], "colors"?: k, "edges": [...] }. */
hyperdetach_status hyperdetach_hypergraph_parse(
    const char* json_text, hyperdetach_hypergraph** out, char** error);

hyperdetach_status hyperdetach_hypergraph_emit(
    const hyperdetach_hypergraph* graph, char** json_out);

void hyperdetach_hypergraph_free(hyperdetach_hypergraph* graph);

int64_t hyperdetach_vertex_count(const hyperdetach_hypergraph* graph);
int64_t hyperdetach_edge_count(const hyperdetach_hypergraph* graph);
int64_t hyperdetach_hinge_count(const hyperdetach_hypergraph* graph);
int hyperdetach_color_count(const hyperdetach_hypergraph* graph);

/* Number of hinges on the vertex. */
hyperdetach_status hyperdetach_degree(const hyperdetach_hypergraph* graph,
                                      int64_t vertex, int64_t* out,
                                      char** error);

/* Number of distinct vertices under the edge. */
hyperdetach_status hyperdetach_edge_size(const hyperdetach_hypergraph* graph,
                                         int64_t edge, int64_t* out,
                                         char** error);

/* Number of edges whose hinge distribution equals the given multiset,
   passed as parallel arrays of vertices and multiplicities. */
hyperdetach_status hyperdetach_multiplicity(
    const hyperdetach_hypergraph* graph, const int64_t* vertices,
    const int64_t* multiplicities, int64_t entry_count, int64_t* out,
    char** error);

/* ------------------------------------------------------------------ */
/* Operations (JSON request/response)                                  */
/* ------------------------------------------------------------------ */

/* Builds a complete design.
   Request: { "design": { "n", "H": [...], "lambda": [...], "parts"? } }
   Response: design artifact. */
hyperdetach_status hyperdetach_generate(const char* request, char** response,
                                        char** error);

/* Fair split of a ground set against two laminar families.
   Request: { "ground": [...], "familyA": [[...]...], "familyB": [[...]...],
              "n": k }
   Response: { "z": [...], "certificate": ... }. */
hyperdetach_status hyperdetach_split(const char* request, char** response,
                                     char** error);

/* Splits vertices fairly.
   Request: { "hypergraph": {...}, "g": [[vertex, count]...], "seed"?,
              "audit"? }
   Response: detachment artifact. With "audit": true, *audit_lines receives
   one JSON object per splitting step. */
hyperdetach_status hyperdetach_detach(const char* request, char** response,
                                      char** audit_lines, char** error);

/* Builds a factorization of a complete design.
   Request: { "design": {...}, "factors": { "R": [...], "Q"? },
              "kind": "R"|"QR"|"almostR", "seed"? }
   Response: factorization artifact, or HYPERDETACH_ERROR_INFEASIBLE with a
   structured refusal in *error. */
hyperdetach_status hyperdetach_factorize(const char* request, char** response,
                                         char** error);

/* Verifies any artifact produced by the operations above (dispatch on its
   "kind" field). *report always receives the full report; the status is
   HYPERDETACH_ERROR_VERIFICATION when any check fails. */
hyperdetach_status hyperdetach_verify(const char* artifact, char** report,
                                      char** error);

#ifdef __cplusplus
}
#endif

#endif /* HYPERDETACH_H */
