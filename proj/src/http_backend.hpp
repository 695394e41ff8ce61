#pragma once

#include "backend.hpp"

namespace rebact::backend {

struct BackendSpec;

/// Chat-completions-style HTTP client backend. Sends the prompt as a single
/// user message; the response message text is extracted via the spec's
/// dot-separated response_path (numeric components index arrays). Transient
/// transport failures and 5xx responses are retried with bounded
/// exponential backoff; concurrent calls are capped at max_in_flight.
BackendPtr make_http_backend(const BackendSpec &spec);

} // namespace rebact::backend
