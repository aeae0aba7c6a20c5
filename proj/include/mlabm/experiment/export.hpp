#pragma once

#include <filesystem>
#include <stdexcept>

#include "mlabm/experiment/batch.hpp"

namespace mlabm::experiment {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes config.json plus either runs.csv + steps_<idx>.csv or
/// runs.json + steps_<idx>.json into `dir` (created if missing).
void export_batch(const BatchResult& result, const std::filesystem::path& dir, OutputFormat format);

/// Reads a directory written by export_batch, in either format.
BatchResult import_batch(const std::filesystem::path& dir);

}  // namespace mlabm::experiment
