// SPDX-License-Identifier: Apache-2.0

#include "core/run_config.hpp"

#include "core/error.hpp"

namespace mccm {

namespace {

using nlohmann::json;

template <typename T>
void maybe(const json& j, const char* key, T* out) {
  if (!j.contains(key)) {
    return;
  }
  try {
    *out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::InvalidArgument,
                std::string("config: bad value for '") + key + "'");
  }
}

}  // namespace

void RunConfig::apply(const json& j) {
  if (j.is_null()) {
    return;
  }
  if (!j.is_object()) {
    throw Error(ErrorCode::InvalidArgument, "config: expected a JSON object");
  }
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    maybe(s, "max_iter", &spg.max_iter);
    maybe(s, "grad_tol", &spg.grad_tol);
    maybe(s, "line_search_memory", &spg.line_search_memory);
    maybe(s, "step_min", &spg.step_min);
    maybe(s, "step_max", &spg.step_max);
    maybe(s, "armijo_c", &spg.armijo_c);
    spg.validate();
  }
  if (j.contains("mean")) {
    const json& m = j.at("mean");
    maybe(m, "tol", &mean.tol);
    maybe(m, "max_iter", &mean.max_iter);
    maybe(m, "step", &mean.step);
    mean.validate();
  }
  maybe(j, "ridge", &ridge);
  maybe(j, "seed", &seed);
  maybe(j, "threads", &threads);
  maybe(j, "weights", &include_weights);
  if (threads < 1) {
    throw Error(ErrorCode::InvalidArgument, "config: threads must be >= 1");
  }
}

}  // namespace mccm
