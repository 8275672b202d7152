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

#include "ngtmsv/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "ngtmsv/errors.hpp"

namespace ngtmsv {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

[[noreturn]] void usage(const std::string& msg) { throw UsageError(msg); }

double parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v)) {
    usage("malformed number for '" + key + "': '" + text + "'");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    usage("malformed integer for '" + key + "': '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  usage("expected true or false for '" + key + "', got '" + text + "'");
}

void check_lambda(double v) {
  if (!(v >= 0.0 && v < 1.0)) usage("lambda must be in [0,1), got " + format_double(v));
}

void check_tau(const std::string& key, double v) {
  if (!(v > 0.0 && v <= 1.0)) usage(key + " must be in (0,1], got " + format_double(v));
}

template <class E>
E lookup(const std::vector<std::pair<E, const char*>>& table, const std::string& text, const char* what) {
  for (const auto& [value, name] : table) {
    if (text == name) return value;
  }
  std::string names;
  for (const auto& [value, name] : table) names += (names.empty() ? "" : ", ") + std::string(name);
  usage(std::string("unknown ") + what + " '" + text + "' (expected one of: " + names + ")");
}

template <class E>
std::string name_of(const std::vector<std::pair<E, const char*>>& table, E value) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "?";
}

const std::vector<std::pair<Quantity, const char*>>& quantity_names() {
  static const std::vector<std::pair<Quantity, const char*>> t = {
      {Quantity::kProbability, "probability"}, {Quantity::kQfi, "qfi"},
      {Quantity::kQcrb, "qcrb"},               {Quantity::kParity, "parity"},
      {Quantity::kSensitivity, "sensitivity"}, {Quantity::kMerit, "merit"},
      {Quantity::kWeightedMerit, "weighted_merit"}, {Quantity::kWigner, "wigner"}};
  return t;
}

const std::vector<std::pair<OutputFormat, const char*>>& format_names() {
  static const std::vector<std::pair<OutputFormat, const char*>> t = {{OutputFormat::kCsv, "csv"},
                                                                       {OutputFormat::kJson, "json"}};
  return t;
}

const std::vector<std::pair<RecordStatus, const char*>>& status_names() {
  static const std::vector<std::pair<RecordStatus, const char*>> t = {
      {RecordStatus::kOk, "ok"}, {RecordStatus::kDegenerate, "degenerate"}, {RecordStatus::kStationary, "stationary"}};
  return t;
}

const std::vector<std::pair<OperationKind, const char*>>& kind_names() {
  static const std::vector<std::pair<OperationKind, const char*>> t = {
      {OperationKind::kAsymPS, "asym-ps"}, {OperationKind::kAsymPA, "asym-pa"}, {OperationKind::kAsymPC, "asym-pc"},
      {OperationKind::kSymPS, "sym-ps"},   {OperationKind::kSymPA, "sym-pa"},   {OperationKind::kSymPC, "sym-pc"}};
  return t;
}

struct GridPoint {
  double lambda;
  NGOperationSpec spec;
  double phi;
};

std::vector<GridPoint> expand_grid(const SweepRequest& r) {
  std::vector<std::pair<double, double>> taus;
  if (r.tau_pair) {
    taus.emplace_back((*r.tau_pair)[0], (*r.tau_pair)[1]);
  } else {
    for (double t : r.tau.values()) taus.emplace_back(t, t);
  }
  std::vector<GridPoint> grid;
  grid.reserve(r.size());
  for (double lam : r.lambda.values()) {
    for (const auto& [t1, t2] : taus) {
      const NGOperationSpec spec = r.spec.resolve(t1, t2);
      for (double phi : r.phi.values()) grid.push_back({lam, spec, phi});
    }
  }
  return grid;
}

SweepRecord evaluate_point(const SweepRequest& r, const GridPoint& g) {
  SweepRecord rec{g.lambda, g.spec.tau1, g.spec.tau2, g.phi, std::nullopt, RecordStatus::kOk};
  try {
    rec.value = evaluate_quantity(r.quantity, g.lambda, g.spec, g.phi, r.point);
  } catch (const StationaryPointError&) {
    rec.status = RecordStatus::kStationary;
  } catch (const DegenerateStateError&) {
    rec.status = RecordStatus::kDegenerate;
  } catch (const NumericalConsistencyError&) {
    rec.status = RecordStatus::kDegenerate;
  }
  return rec;
}

}  // namespace

std::string to_string(Quantity q) { return name_of(quantity_names(), q); }
std::string to_string(OutputFormat f) { return name_of(format_names(), f); }
std::string to_string(RecordStatus s) { return name_of(status_names(), s); }
Quantity parse_quantity(const std::string& text) { return lookup(quantity_names(), trim(text), "quantity"); }
OutputFormat parse_format(const std::string& text) { return lookup(format_names(), trim(text), "format"); }
RecordStatus parse_status(const std::string& text) { return lookup(status_names(), trim(text), "status"); }

std::vector<double> Axis::values() const {
  std::vector<double> v(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    v[static_cast<std::size_t>(i)] =
        (count == 1) ? start : (i == count - 1 ? stop : start + (stop - start) * i / (count - 1));
  }
  return v;
}

Axis parse_axis(const std::string& key, const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) return Axis::point(parse_number(key, parts[0]));
  if (parts.size() != 3) usage("axis for '" + key + "' must be 'value' or 'start:stop:count', got '" + text + "'");
  Axis a{parse_number(key, parts[0]), parse_number(key, parts[1]), parse_int(key, parts[2])};
  if (a.count < 1) usage("grid count for '" + key + "' must be at least 1");
  return a;
}

SpecSelector SpecSelector::preset(OperationKind op, int n) {
  if (n < 1) usage("preset photon number must be at least 1");
  SpecSelector s;
  s.kind = Kind::kPreset;
  s.op = op;
  s.n = n;
  return s;
}

SpecSelector SpecSelector::custom(int m1, int m2, int n1, int n2) {
  SpecSelector s;
  s.kind = Kind::kCustom;
  s.photons = {m1, m2, n1, n2};
  return s;
}

NGOperationSpec SpecSelector::resolve(double tau1, double tau2) const {
  switch (kind) {
    case Kind::kTmsv: return NGOperationSpec::tmsv();
    case Kind::kPreset: return operation_from_table(op, n, tau2);
    case Kind::kCustom: return NGOperationSpec::custom(photons[0], photons[1], photons[2], photons[3], tau1, tau2);
  }
  return NGOperationSpec::tmsv();
}

std::string SpecSelector::label() const {
  switch (kind) {
    case Kind::kTmsv: return "tmsv";
    case Kind::kPreset: return name_of(kind_names(), op) + "-" + std::to_string(n);
    case Kind::kCustom: {
      std::ostringstream os;
      os << "photons " << photons[0] << ',' << photons[1] << ',' << photons[2] << ',' << photons[3];
      return os.str();
    }
  }
  return "?";
}

SpecSelector parse_preset(const std::string& raw) {
  const std::string text = trim(raw);
  if (text == "tmsv") return SpecSelector::tmsv();
  const auto dash = text.find_last_of('-');
  if (dash == std::string::npos) usage("unknown preset '" + text + "'");
  const std::string stem = text.substr(0, dash);
  const std::string count = text.substr(dash + 1);
  for (const auto& [kind, name] : kind_names()) {
    if (text.rfind(std::string(name) + "-", 0) == 0 && stem != name) {
      usage("preset '" + text + "' mixes photon numbers; use --photons m1,m2,n1,n2 instead");
    }
  }
  const OperationKind kind = lookup(kind_names(), stem, "preset");
  const int n = parse_int("preset", count);
  return SpecSelector::preset(kind, n);
}

std::size_t SweepRequest::size() const {
  const std::size_t taus = tau_pair ? 1 : static_cast<std::size_t>(tau.count);
  return static_cast<std::size_t>(lambda.count) * taus * static_cast<std::size_t>(phi.count);
}

const std::vector<std::string>& setting_keys() {
  static const std::vector<std::string> keys = {"quantity", "preset", "photons", "lambda", "tau",
                                                "phi",      "point",  "format",  "output", "allow-partial"};
  return keys;
}

Settings parse_config_text(const std::string& text) {
  Settings s;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) usage("config line " + std::to_string(number) + " is not key=value: '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const auto& keys = setting_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) usage("unknown config key '" + key + "'");
    s[key] = trim(line.substr(eq + 1));
  }
  return s;
}

Settings read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

SweepRequest request_from_settings(const Settings& s) {
  for (const auto& [key, value] : s) {
    const auto& keys = setting_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) usage("unknown config key '" + key + "'");
  }
  auto get = [&](const char* key) -> const std::string* {
    auto it = s.find(key);
    return it == s.end() ? nullptr : &it->second;
  };

  SweepRequest r;
  if (const auto* q = get("quantity")) {
    r.quantity = parse_quantity(*q);
  } else {
    usage("missing required key 'quantity'");
  }

  const auto* preset = get("preset");
  const auto* photons = get("photons");
  if (preset && photons) usage("keys 'preset' and 'photons' are mutually exclusive");
  if (!preset && !photons) usage("missing required key 'preset' (or 'photons')");
  if (preset) {
    r.spec = parse_preset(*preset);
  } else {
    const auto parts = split(*photons, ',');
    if (parts.size() != 4) usage("'photons' must be m1,m2,n1,n2, got '" + *photons + "'");
    std::array<int, 4> p{};
    int total = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      p[i] = parse_int("photons", parts[i]);
      if (p[i] < 0) usage("'photons' entries must be non-negative");
      total += p[i];
    }
    if (total > kMaxSpecPhotons) usage("'photons' total must be at most " + std::to_string(kMaxSpecPhotons));
    r.spec = SpecSelector::custom(p[0], p[1], p[2], p[3]);
  }

  if (const auto* lam = get("lambda")) {
    r.lambda = parse_axis("lambda", *lam);
  } else {
    usage("missing required key 'lambda'");
  }
  for (double v : r.lambda.values()) check_lambda(v);

  if (const auto* tau = get("tau")) {
    if (tau->find(',') != std::string::npos) {
      const auto parts = split(*tau, ',');
      if (parts.size() != 2) usage("'tau' must be t, t1,t2 or start:stop:count, got '" + *tau + "'");
      if (r.spec.kind == SpecSelector::Kind::kPreset) usage("'tau' pair needs explicit 'photons'; presets take one tau");
      r.tau_pair = std::array<double, 2>{parse_number("tau", parts[0]), parse_number("tau", parts[1])};
      check_tau("tau", (*r.tau_pair)[0]);
      check_tau("tau", (*r.tau_pair)[1]);
    } else {
      r.tau = parse_axis("tau", *tau);
      for (double v : r.tau.values()) check_tau("tau", v);
    }
  }

  if (const auto* phi = get("phi")) r.phi = parse_axis("phi", *phi);

  if (const auto* pt = get("point")) {
    const auto parts = split(*pt, ',');
    if (parts.size() != 4) usage("'point' must be q1,p1,q2,p2, got '" + *pt + "'");
    r.point = {parse_number("point", parts[0]), parse_number("point", parts[1]), parse_number("point", parts[2]),
               parse_number("point", parts[3])};
  }
  if (const auto* f = get("format")) r.format = parse_format(*f);
  if (const auto* o = get("output")) {
    if (o->empty()) usage("'output' must not be empty");
    r.output = *o;
  }
  if (const auto* a = get("allow-partial")) r.allow_partial = parse_bool("allow-partial", *a);
  return r;
}

double evaluate_quantity(Quantity q, double lambda, const NGOperationSpec& spec, double phi,
                         const PhaseSpacePoint& point) {
  const ModelParams p = derive_params(lambda, spec);
  switch (q) {
    case Quantity::kProbability: return success_probability(p, spec);
    case Quantity::kQfi: return qfi(p, spec);
    case Quantity::kQcrb: return qcrb(p, spec);
    case Quantity::kParity: return parity_expectation(p, spec, phi);
    case Quantity::kSensitivity: return phase_sensitivity(p, spec, phi);
    case Quantity::kMerit: return merit(p, spec, phi);
    case Quantity::kWeightedMerit: return weighted_merit(p, spec, phi);
    case Quantity::kWigner: return wigner(p, spec, point);
  }
  throw ParameterError("unknown quantity");
}

int sweep_thread_count() {
  int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("NGI_THREADS")) {
    int cap = 0;
    const std::string s = trim(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (ec != std::errc{} || ptr != s.data() + s.size() || cap < 1) {
      usage("NGI_THREADS must be a positive integer, got '" + std::string(env) + "'");
    }
    n = std::min(n, cap);
  }
  return n;
}

std::vector<SweepRecord> run_sweep(const SweepRequest& request, int threads) {
  const std::vector<GridPoint> grid = expand_grid(request);
  std::vector<SweepRecord> records(grid.size());
  const int workers = std::clamp(threads > 0 ? threads : sweep_thread_count(), 1,
                                 static_cast<int>(std::max<std::size_t>(grid.size(), 1)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        records[i] = evaluate_point(request, grid[i]);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = grid.size();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

bool all_ok(const std::vector<SweepRecord>& records) {
  return std::all_of(records.begin(), records.end(), [](const SweepRecord& r) { return r.status == RecordStatus::kOk; });
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw NumericalConsistencyError("failed to format number");
  return std::string(buf, ptr);
}

void emit_table(const std::vector<SweepRecord>& records, OutputFormat format, std::ostream& out) {
  if (records.empty()) throw ParameterError("no records to emit");
  if (format == OutputFormat::kCsv) {
    out << "lambda,tau1,tau2,phi,value,status\n";
    for (const auto& r : records) {
      out << format_double(r.lambda) << ',' << format_double(r.tau1) << ',' << format_double(r.tau2) << ','
          << format_double(r.phi) << ',' << (r.value ? format_double(*r.value) : std::string{}) << ','
          << to_string(r.status) << '\n';
    }
    return;
  }
  out << "[\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    nlohmann::ordered_json j;
    j["lambda"] = r.lambda;
    j["tau1"] = r.tau1;
    j["tau2"] = r.tau2;
    j["phi"] = r.phi;
    j["value"] = r.value ? nlohmann::ordered_json(*r.value) : nlohmann::ordered_json(nullptr);
    j["status"] = to_string(r.status);
    out << "  " << j.dump() << (i + 1 < records.size() ? ",\n" : "\n");
  }
  out << "]\n";
}

void write_table(const std::vector<SweepRecord>& records, OutputFormat format, const std::string& path) {
  if (path == "-") {
    emit_table(records, format, std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write output file '" + path + "'");
  emit_table(records, format, out);
  out.flush();
  if (!out) throw IoError("failed writing output file '" + path + "'");
}

std::vector<SweepRecord> parse_json_table(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  if (!doc.is_array()) throw ParameterError("expected a JSON array of records");
  std::vector<SweepRecord> out;
  for (const auto& j : doc) {
    SweepRecord r;
    r.lambda = j.at("lambda").get<double>();
    r.tau1 = j.at("tau1").get<double>();
    r.tau2 = j.at("tau2").get<double>();
    r.phi = j.at("phi").get<double>();
    if (!j.at("value").is_null()) r.value = j.at("value").get<double>();
    r.status = parse_status(j.at("status").get<std::string>());
    out.push_back(r);
  }
  return out;
}

const std::vector<FigurePreset>& figure_presets() {
  static const std::vector<FigurePreset> presets = [] {
    using K = OperationKind;
    const Axis unit_2d{0.01, 0.99, 101};
    const Axis lam_1d{0.01, 0.99, 99};
    const Axis tau_1d{0.01, 1.0, 100};
    const Axis phi_1d{0.01, 1.0, 100};
    const Axis phi0 = Axis::point(0.01);
    std::vector<FigurePreset> v;

    // Probability maps: per operation family, Asym n=1,2 then Sym n=1,2.
    const std::pair<K, K> families[3] = {{K::kAsymPS, K::kSymPS}, {K::kAsymPA, K::kSymPA}, {K::kAsymPC, K::kSymPC}};
    char panel = 'a';
    for (const auto& [asym, sym] : families) {
      for (const auto& [kind, n] : {std::pair{asym, 1}, {asym, 2}, {sym, 1}, {sym, 2}}) {
        const auto spec = SpecSelector::preset(kind, n);
        v.push_back({std::string("fig2") + panel++, "success probability over (lambda, tau), " + spec.label(),
                     Quantity::kProbability, spec, unit_2d, unit_2d, phi0});
      }
    }

    // One-dimensional scans; panels a, b, c default to the PS, PA and PC families.
    const SpecSelector defaults[3] = {SpecSelector::preset(K::kAsymPS, 1), SpecSelector::preset(K::kAsymPA, 1),
                                      SpecSelector::preset(K::kAsymPC, 1)};
    const double tau_abc[3] = {0.9, 0.9, 0.2};
    for (int i = 0; i < 3; ++i) {
      const char p = static_cast<char>('a' + i);
      const Axis tau = Axis::point(tau_abc[i]);
      v.push_back({std::string("fig3") + p, "QCRB versus lambda", Quantity::kQcrb, defaults[i], lam_1d, tau, phi0});
      v.push_back({std::string("fig4") + p, "QCRB versus tau at lambda=0.4", Quantity::kQcrb, defaults[i],
                   Axis::point(0.4), tau_1d, phi0});
      v.push_back({std::string("fig5") + p, "sensitivity versus lambda", Quantity::kSensitivity, defaults[i], lam_1d,
                   tau, phi0});
      v.push_back({std::string("fig6") + p, "sensitivity versus tau at lambda=0.4", Quantity::kSensitivity,
                   defaults[i], Axis::point(0.4), tau_1d, phi0});
      v.push_back({std::string("fig7") + p, "sensitivity versus phi at lambda=0.4", Quantity::kSensitivity,
                   defaults[i], Axis::point(0.4), tau, phi_1d});
    }

    // Merit contours.
    const char figs[3] = {'8', '9', '1'};
    int f = 0;
    for (const auto& [asym, sym] : families) {
      const std::string stem = figs[f] == '1' ? "fig10" : std::string("fig") + figs[f];
      ++f;
      char q = 'a';
      for (const auto& [kind, n] : {std::pair{asym, 1}, {asym, 2}, {sym, 1}, {sym, 2}}) {
        const auto spec = SpecSelector::preset(kind, n);
        v.push_back({stem + q++, "merit over (lambda, tau), " + spec.label(), Quantity::kMerit, spec, unit_2d, unit_2d,
                     phi0});
      }
    }
    const auto mixed = SpecSelector::custom(1, 2, 1, 2);
    v.push_back({"fig10e", "merit over (lambda, tau), " + mixed.label(), Quantity::kMerit, mixed, unit_2d, unit_2d, phi0});

    const double lam_11[3] = {0.1, 0.5, 0.9};
    for (int i = 0; i < 3; ++i) {
      v.push_back({std::string("fig11") + static_cast<char>('a' + i), "weighted merit versus tau",
                   Quantity::kWeightedMerit, SpecSelector::preset(K::kAsymPA, 1), Axis::point(lam_11[i]), tau_1d,
                   phi0});
    }
    std::sort(v.begin(), v.end(), [](const FigurePreset& a, const FigurePreset& b) {
      const auto key = [](const std::string& s) { return std::pair{std::stoi(s.substr(3)), s}; };
      return key(a.name) < key(b.name);
    });
    return v;
  }();
  return presets;
}

const FigurePreset& find_figure(const std::string& name) {
  for (const auto& f : figure_presets()) {
    if (f.name == name) return f;
  }
  usage("unknown figure '" + name + "'");
}

SweepRequest figure_request(const FigurePreset& figure) {
  SweepRequest r;
  r.quantity = figure.quantity;
  r.spec = figure.spec;
  r.lambda = figure.lambda;
  r.tau = figure.tau;
  r.phi = figure.phi;
  return r;
}

}  // namespace ngtmsv
