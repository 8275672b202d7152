// Copyright 2026 The ngtmsv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Grid evaluation of analytic quantities and the table formats the command
// line tool emits. Everything here is plumbing around analytics.hpp.

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ngtmsv/analytics.hpp"
#include "ngtmsv/model.hpp"

namespace ngtmsv {

enum class Quantity { kProbability, kQfi, kQcrb, kParity, kSensitivity, kMerit, kWeightedMerit, kWigner };
enum class OutputFormat { kCsv, kJson };
enum class RecordStatus { kOk, kDegenerate, kStationary };

std::string to_string(Quantity q);
std::string to_string(OutputFormat f);
std::string to_string(RecordStatus s);
Quantity parse_quantity(const std::string& text);
OutputFormat parse_format(const std::string& text);
RecordStatus parse_status(const std::string& text);

// Evenly spaced values from start to stop inclusive; count 1 is the point `start`.
struct Axis {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  static Axis point(double v) { return {v, v, 1}; }
  std::vector<double> values() const;
  friend bool operator==(const Axis&, const Axis&) = default;
};

// "v" or "start:stop:count".
Axis parse_axis(const std::string& key, const std::string& text);

// Which heralded state to evaluate: a named preset, the bare TMSV, or
// explicit photon numbers.
struct SpecSelector {
  enum class Kind { kPreset, kTmsv, kCustom };
  Kind kind = Kind::kTmsv;
  OperationKind op = OperationKind::kAsymPS;
  int n = 1;
  std::array<int, 4> photons{};  // m1, m2, n1, n2

  static SpecSelector preset(OperationKind op, int n);
  static SpecSelector custom(int m1, int m2, int n1, int n2);
  static SpecSelector tmsv() { return {}; }

  // Presets follow the table's τ placement; custom specs use τ₁ = τ₂ = τ
  // unless a pair is given. The TMSV ignores τ.
  NGOperationSpec resolve(double tau1, double tau2) const;
  std::string label() const;
  friend bool operator==(const SpecSelector&, const SpecSelector&) = default;
};

// `tmsv`, `asym-ps-N`, `asym-pa-N`, `asym-pc-N`, `sym-ps-N`, `sym-pa-N`, `sym-pc-N`.
SpecSelector parse_preset(const std::string& text);

struct SweepRequest {
  Quantity quantity = Quantity::kProbability;
  SpecSelector spec;
  Axis lambda = Axis::point(0.5);
  Axis tau = Axis::point(1.0);
  std::optional<std::array<double, 2>> tau_pair;  // fixed (τ₁, τ₂) for custom specs
  Axis phi = Axis::point(0.01);
  PhaseSpacePoint point;  // Wigner evaluation point
  OutputFormat format = OutputFormat::kCsv;
  std::string output = "-";
  bool allow_partial = false;

  std::size_t size() const;
};

struct SweepRecord {
  double lambda = 0.0;
  double tau1 = 1.0;
  double tau2 = 1.0;
  double phi = 0.0;
  std::optional<double> value;  // present iff status is ok
  RecordStatus status = RecordStatus::kOk;

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

// Settings keyed by option name, as read from a config file or flags.
using Settings = std::map<std::string, std::string>;

inline constexpr int kMaxSpecPhotons = 13;

// Keys accepted in config files and as long flags.
const std::vector<std::string>& setting_keys();

// key=value lines, '#' starts a comment. Unknown keys are usage errors.
Settings parse_config_text(const std::string& text);
Settings read_config_file(const std::string& path);

// Validates everything before any computation; errors name the key.
SweepRequest request_from_settings(const Settings& settings);

// One quantity at one point; throws the analytics errors unchanged.
double evaluate_quantity(Quantity q, double lambda, const NGOperationSpec& spec, double phi,
                         const PhaseSpacePoint& point);

// Worker count: hardware concurrency, capped by NGI_THREADS when set.
int sweep_thread_count();

// Records in grid order: λ outermost, then τ, then φ.
std::vector<SweepRecord> run_sweep(const SweepRequest& request, int threads = 0);

bool all_ok(const std::vector<SweepRecord>& records);

void emit_table(const std::vector<SweepRecord>& records, OutputFormat format, std::ostream& out);
// "-" writes to stdout.
void write_table(const std::vector<SweepRecord>& records, OutputFormat format, const std::string& path);
std::vector<SweepRecord> parse_json_table(const std::string& text);

// Shortest decimal string that reads back to the same double.
std::string format_double(double x);

struct FigurePreset {
  std::string name;
  std::string description;
  Quantity quantity;
  SpecSelector spec;
  Axis lambda;
  Axis tau;
  Axis phi;
};

const std::vector<FigurePreset>& figure_presets();
const FigurePreset& find_figure(const std::string& name);
SweepRequest figure_request(const FigurePreset& figure);

}  // namespace ngtmsv
