#pragma once

#include <string>
#include <vector>

#include "cartanlie/report.hpp"

namespace cartanlie {

/// jacobi, divergence, embedding, dimensions, decomposition, contact,
/// witness, nongeneration, sanity, audit, remark
const std::vector<std::string>& suite_names();

/// Checks the config against every module precondition; throws Error.
void validate(const RunConfig& config);
/// Shape named by --m/--n, defaulting to m = 2 (W, S, H) or 3 (K), n = 1.
Shape config_shape(const RunConfig& config);

/// Config errors propagate as Error; failed checks land in the reports.
ReportDocument cmd_info(const RunConfig& config);
ReportDocument cmd_verify(const RunConfig& config);
ReportDocument cmd_witness(const RunConfig& config);

/// Worker threads used by sampled checks; CARTANLIE_THREADS overrides.
unsigned worker_threads();

}  // namespace cartanlie
