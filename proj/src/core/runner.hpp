// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_CORE_RUNNER_HPP
#define MCCM_CORE_RUNNER_HPP

#include <json.hpp>

#include <string>

namespace mccm {

// Command implementations behind the CLI and the shared-library API.
// Each takes an options object (file paths plus RunConfig keys plus
// command-specific settings) and returns a schema-versioned JSON report.
// Errors surface as mccm::Error.

/// Trains class models from the train dataset and classifies the test
/// dataset with the chosen variant ("variant": fm|cs|le|geo-nn|euclid-hull).
nlohmann::json run_classify(const std::string& train_path,
                            const std::string& test_path,
                            const nlohmann::json& options);

/// Times every requested variant over the identical classification inputs
/// ("variants": array, default fm/cs/le).
nlohmann::json run_benchmark(const std::string& train_path,
                             const std::string& test_path,
                             const nlohmann::json& options);

/// Runs the synthetic approximation-error study.
nlohmann::json run_synthetic(const nlohmann::json& options);

/// Converts CSV grids/tables into an SPD dataset file
/// ("recipe": covariance|brodatz|ethz|dct-set).
nlohmann::json run_descriptor(const nlohmann::json& options);

/// Generates synthetic datasets/fixtures ("kind": clusters|benchmark|
/// hull-vs-nn) and writes them as dataset files.
nlohmann::json run_generate(const nlohmann::json& options);

}  // namespace mccm

#endif  // MCCM_CORE_RUNNER_HPP
