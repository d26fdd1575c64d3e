#pragma once

#include <string>
#include <vector>

#include "orient/fast_filter.hpp"
#include "orient/simulator.hpp"

// CSV schema: header `t,gx,gy,gz,ax,ay,az,mx,my,mz`; t in seconds, strictly
// increasing; gyro in rad/s; accel/mag in arbitrary consistent units
// (normalized on ingestion).

namespace orient {

struct IngestOptions {
  int bias_window = 0;     // gyro-bias window in samples; 0 disables
  double dip = 0.0;        // rad
  bool estimate_dip = false;  // derive dip from a stationary window instead
};

struct IngestResult {
  std::vector<ImuSample> samples;  // accel/mag unit-norm, gyro bias-corrected
  double sample_time = 0.0;        // median timestamp difference
  double dip = 0.0;
};

/// Parses and preprocesses an IMU log. Throws ParseError, NonMonotoneTime or
/// DegenerateSample with the offending 1-based line number.
IngestResult ingest_csv(const std::string& path, const IngestOptions& options);

void write_measurement_csv(const std::string& path, const MeasurementLog& log);

/// Orientation output schema: `t,q0,q1,q2,q3`, unit-norm rows.
void write_orientation_csv(const std::string& path,
                           const std::vector<double>& t,
                           const std::vector<Quaternion>& q);

}  // namespace orient
