#include "hyperdetach.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "hdx/json_io.hpp"
#include "hdx/service.hpp"

// The opaque handle wraps the immutable core type.
struct hyperdetach_hypergraph {
  hdx::Hypergraph graph;
};

namespace {

char* copy_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out) std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void set_error(char** error, const std::string& message) {
  if (error) *error = copy_string(message);
}

hyperdetach_status map_exception(char** error) {
  try {
    throw;
  } catch (const hdx::ParseError& err) {
    set_error(error, err.what());
    return HYPERDETACH_ERROR_INVALID_INPUT;
  } catch (const hdx::DomainError& err) {
    set_error(error, err.what());
    return HYPERDETACH_ERROR_INVALID_INPUT;
  } catch (const hdx::InternalError& err) {
    set_error(error, err.what());
    return HYPERDETACH_ERROR_INTERNAL;
  } catch (const std::exception& err) {
    set_error(error, err.what());
    return HYPERDETACH_ERROR_INTERNAL;
  }
}

hyperdetach_status run_service(
    hdx::service::Outcome (*operation)(const std::string&),
    const char* request, char** response, char** audit_lines, char** error) {
  if (response) *response = nullptr;
  if (audit_lines) *audit_lines = nullptr;
  if (error) *error = nullptr;
  if (!request) {
    set_error(error, "null request");
    return HYPERDETACH_ERROR_INVALID_INPUT;
  }
  try {
    hdx::service::Outcome outcome = operation(std::string(request));
    if (response && !outcome.payload.empty()) {
      *response = copy_string(outcome.payload);
    }
    if (audit_lines && !outcome.audit_lines.empty()) {
      *audit_lines = copy_string(outcome.audit_lines);
    }
    if (!outcome.error.empty()) set_error(error, outcome.error);
    switch (outcome.status) {
      case hdx::service::kOk:
        return HYPERDETACH_OK;
      case hdx::service::kVerificationFailed:
        return HYPERDETACH_ERROR_VERIFICATION;
      case hdx::service::kInfeasible:
        return HYPERDETACH_ERROR_INFEASIBLE;
    }
    return HYPERDETACH_ERROR_INTERNAL;
  } catch (...) {
    return map_exception(error);
  }
}

}  // namespace

extern "C" {

const char* hyperdetach_version(void) { return "1.0.0"; }

void hyperdetach_string_free(char* text) { std::free(text); }

hyperdetach_status hyperdetach_hypergraph_parse(
    const char* json_text, hyperdetach_hypergraph** out, char** error) {
  if (error) *error = nullptr;
  if (!out) return HYPERDETACH_ERROR_INVALID_INPUT;
  *out = nullptr;
  if (!json_text) {
    set_error(error, "null document");
    return HYPERDETACH_ERROR_INVALID_INPUT;
  }
  try {
    hdx::json_io::json doc = hdx::json_io::parse_text(json_text);
    hdx::Hypergraph graph = hdx::json_io::parse_hypergraph(doc);
    *out = new hyperdetach_hypergraph{std::move(graph)};
    return HYPERDETACH_OK;
  } catch (...) {
    return map_exception(error);
  }
}

hyperdetach_status hyperdetach_hypergraph_emit(
    const hyperdetach_hypergraph* graph, char** json_out) {
  if (!graph || !json_out) return HYPERDETACH_ERROR_INVALID_INPUT;
  try {
    *json_out =
        copy_string(hdx::json_io::emit_hypergraph(graph->graph).dump(2) +
                    "\n");
    return HYPERDETACH_OK;
  } catch (...) {
    return map_exception(nullptr);
  }
}

void hyperdetach_hypergraph_free(hyperdetach_hypergraph* graph) {
  delete graph;
}

int64_t hyperdetach_vertex_count(const hyperdetach_hypergraph* graph) {
  return graph ? static_cast<int64_t>(graph->graph.vertices().size()) : 0;
}

int64_t hyperdetach_edge_count(const hyperdetach_hypergraph* graph) {
  return graph ? static_cast<int64_t>(graph->graph.edges().size()) : 0;
}

int64_t hyperdetach_hinge_count(const hyperdetach_hypergraph* graph) {
  return graph ? graph->graph.hinge_count() : 0;
}

int hyperdetach_color_count(const hyperdetach_hypergraph* graph) {
  return graph ? graph->graph.colors() : 0;
}

hyperdetach_status hyperdetach_degree(const hyperdetach_hypergraph* graph,
                                      int64_t vertex, int64_t* out,
                                      char** error) {
  if (error) *error = nullptr;
  if (!graph || !out) return HYPERDETACH_ERROR_INVALID_INPUT;
  try {
    *out = graph->graph.degree(vertex);
    return HYPERDETACH_OK;
  } catch (...) {
    return map_exception(error);
  }
}

hyperdetach_status hyperdetach_edge_size(const hyperdetach_hypergraph* graph,
                                         int64_t edge, int64_t* out,
                                         char** error) {
  if (error) *error = nullptr;
  if (!graph || !out) return HYPERDETACH_ERROR_INVALID_INPUT;
  try {
    *out = graph->graph.edge_size(edge);
    return HYPERDETACH_OK;
  } catch (...) {
    return map_exception(error);
  }
}

hyperdetach_status hyperdetach_multiplicity(
    const hyperdetach_hypergraph* graph, const int64_t* vertices,
    const int64_t* multiplicities, int64_t entry_count, int64_t* out,
    char** error) {
  if (error) *error = nullptr;
  if (!graph || !out || (entry_count > 0 && (!vertices || !multiplicities))) {
    return HYPERDETACH_ERROR_INVALID_INPUT;
  }
  try {
    hdx::VertexMultiset multiset;
    for (int64_t i = 0; i < entry_count; ++i) {
      multiset.add(vertices[i], multiplicities[i]);
    }
    *out = graph->graph.multiplicity(multiset);
    return HYPERDETACH_OK;
  } catch (...) {
    return map_exception(error);
  }
}

hyperdetach_status hyperdetach_generate(const char* request, char** response,
                                        char** error) {
  return run_service(hdx::service::generate, request, response, nullptr,
                     error);
}

hyperdetach_status hyperdetach_split(const char* request, char** response,
                                     char** error) {
  return run_service(hdx::service::split, request, response, nullptr, error);
}

hyperdetach_status hyperdetach_detach(const char* request, char** response,
                                      char** audit_lines, char** error) {
  return run_service(hdx::service::detach, request, response, audit_lines,
                     error);
}

hyperdetach_status hyperdetach_factorize(const char* request, char** response,
                                         char** error) {
  return run_service(hdx::service::factorize, request, response, nullptr,
                     error);
}

hyperdetach_status hyperdetach_verify(const char* artifact, char** report,
                                      char** error) {
  return run_service(hdx::service::verify, artifact, report, nullptr, error);
}

}  // extern "C"
