#include "orient/csv_io.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "orient/errors.hpp"

namespace orient {

namespace {

constexpr const char* kHeader = "t,gx,gy,gz,ax,ay,az,mx,my,mz";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_cell(const std::string& cell, int line_no) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(line_no, "non-numeric cell '" + cell + "'");
  return value;
}

}  // namespace

IngestResult ingest_csv(const std::string& path,
                        const IngestOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);

  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "empty file");
  ++line_no;
  // tolerate trailing \r from CRLF files
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader)
    throw ParseError(1, "expected header '" + std::string(kHeader) + "'");

  IngestResult result;
  result.dip = options.dip;
  std::vector<int> line_of;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 10)
      throw ParseError(line_no, "expected 10 columns, got " +
                                    std::to_string(cells.size()));
    ImuSample s;
    s.t = parse_cell(cells[0], line_no);
    s.gyro = {parse_cell(cells[1], line_no), parse_cell(cells[2], line_no),
              parse_cell(cells[3], line_no)};
    s.acc = {parse_cell(cells[4], line_no), parse_cell(cells[5], line_no),
             parse_cell(cells[6], line_no)};
    s.mag = {parse_cell(cells[7], line_no), parse_cell(cells[8], line_no),
             parse_cell(cells[9], line_no)};
    if (!result.samples.empty() && !(s.t > result.samples.back().t))
      throw NonMonotoneTime(line_no);
    result.samples.push_back(s);
    line_of.push_back(line_no);
  }
  if (result.samples.empty()) throw ParseError(line_no, "no data rows");

  const int n = static_cast<int>(result.samples.size());

  // gyro bias from the leading stationary window
  if (options.bias_window > 0) {
    const int w = std::min(options.bias_window, n);
    Vec3 bias{0, 0, 0};
    for (int k = 0; k < w; ++k) bias = bias + result.samples[k].gyro;
    bias = (1.0 / w) * bias;
    for (auto& s : result.samples) s.gyro = s.gyro - bias;
  }

  if (options.estimate_dip) {
    // stationary window: mean vertical component of the normalized field,
    // vertical taken from the accelerometer direction (-y_a)
    const int w = std::max(1, std::min(options.bias_window > 0
                                           ? options.bias_window
                                           : n,
                                       n));
    double acc_dip = 0.0;
    for (int k = 0; k < w; ++k) {
      const ImuSample& s = result.samples[k];
      const double na = norm(s.acc), nm = norm(s.mag);
      if (na < 1e-9 || nm < 1e-9) throw DegenerateSample(line_of[k]);
      // vertical (up) in body frame is -acc/|acc|
      acc_dip += dot((1.0 / nm) * s.mag, (-1.0 / na) * s.acc);
    }
    result.dip = -std::asin(std::clamp(acc_dip / w, -1.0, 1.0));
  }

  // normalize accel/mag
  for (int k = 0; k < n; ++k) {
    ImuSample& s = result.samples[k];
    const double na = norm(s.acc), nm = norm(s.mag);
    if (na < 1e-9 || nm < 1e-9) throw DegenerateSample(line_of[k]);
    s.acc = (1.0 / na) * s.acc;
    s.mag = (1.0 / nm) * s.mag;
  }

  // sampling time: median dt
  if (n > 1) {
    std::vector<double> dts(n - 1);
    for (int k = 1; k < n; ++k)
      dts[k - 1] = result.samples[k].t - result.samples[k - 1].t;
    std::nth_element(dts.begin(), dts.begin() + dts.size() / 2, dts.end());
    result.sample_time = dts[dts.size() / 2];
  }
  return result;
}

void write_measurement_csv(const std::string& path,
                           const MeasurementLog& log) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << kHeader << "\n";
  char buf[360];
  for (const ImuSample& s : log.samples) {
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g\n",
                  s.t, s.gyro.x, s.gyro.y, s.gyro.z, s.acc.x, s.acc.y, s.acc.z,
                  s.mag.x, s.mag.y, s.mag.z);
    out << buf;
  }
}

void write_orientation_csv(const std::string& path,
                           const std::vector<double>& t,
                           const std::vector<Quaternion>& q) {
  if (t.size() != q.size())
    throw LengthMismatch("write_orientation_csv: length mismatch");
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "t,q0,q1,q2,q3\n";
  char buf[200];
  for (std::size_t k = 0; k < q.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", t[k],
                  q[k].q0, q[k].qv.x, q[k].qv.y, q[k].qv.z);
    out << buf;
  }
}

}  // namespace orient
