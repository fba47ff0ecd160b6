#include "lerc/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "lerc/errors.hpp"

namespace lerc::io {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

// Reads the header and then every data row with exactly `width` fields.
std::vector<std::vector<std::string>> read_table(std::istream& in,
                                                 std::string_view header) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "csv: missing header");
  require(strip_cr(line) == header,
          fmt::format("csv: expected header '{}', got '{}'", header, strip_cr(line)));
  const std::size_t width = split(std::string(header)).size();
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    auto fields = split(line);
    require(fields.size() == width,
            fmt::format("csv: row has {} fields, expected {}", fields.size(), width));
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::string flag(bool value) { return value ? "1" : "0"; }

bool parse_flag(const std::string& text) {
  require(text == "0" || text == "1", fmt::format("csv: bad flag '{}'", text));
  return text == "1";
}

double number_or_nan(const json& value) {
  return value.is_null() ? std::nan("") : value.get<double>();
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  return fmt::format("{:.17g}", value);
}

double parse_number(std::string_view text) {
  const std::string buffer(text);
  require(!buffer.empty(), "parse_number: empty field");
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(buffer.c_str(), &end);
  require(end == buffer.c_str() + buffer.size() && errno != EINVAL,
          fmt::format("parse_number: '{}' is not a number", buffer));
  return value;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    out << format_number(r.a) << ',' << format_number(r.gamma_star) << ','
        << format_number(r.lower_bound) << ',' << format_number(r.upper_bound) << ','
        << format_number(r.P) << ',' << flag(r.p_feasible) << ','
        << flag(r.curvature_ok) << ',' << flag(r.negativity_ok) << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::vector<SweepRow> rows;
  for (const auto& f : read_table(in, kSweepHeader)) {
    SweepRow r;
    r.a = parse_number(f[0]);
    r.gamma_star = parse_number(f[1]);
    r.lower_bound = parse_number(f[2]);
    r.upper_bound = parse_number(f[3]);
    r.P = parse_number(f[4]);
    r.p_feasible = parse_flag(f[5]);
    r.curvature_ok = parse_flag(f[6]);
    r.negativity_ok = parse_flag(f[7]);
    r.within_bounds = !std::isnan(r.gamma_star) && r.gamma_star >= r.lower_bound &&
                      r.gamma_star <= r.upper_bound;
    rows.push_back(r);
  }
  return rows;
}

void write_quadfuns_csv(std::ostream& out, std::span<const QuadfunRow> rows) {
  out << kQuadfunsHeader << '\n';
  for (const QuadfunRow& r : rows) {
    out << format_number(r.y) << ',' << format_number(r.l1_next) << ','
        << format_number(r.lm1_next) << ',' << format_number(r.threshold) << '\n';
  }
}

std::vector<QuadfunRow> read_quadfuns_csv(std::istream& in) {
  std::vector<QuadfunRow> rows;
  for (const auto& f : read_table(in, kQuadfunsHeader)) {
    rows.push_back(QuadfunRow{parse_number(f[0]), parse_number(f[1]),
                              parse_number(f[2]), parse_number(f[3])});
  }
  return rows;
}

void write_trace_csv(std::ostream& out, const SimulationTrace& tr) {
  validate_trace(tr);
  require(tr.x_hat.size() == 2, "trace csv: expects the two-observer bank");
  const auto last = tr.x.size() - 1;
  out << kTraceHeader << '\n';
  for (std::size_t t = 0; t <= last; ++t) {
    const bool final_row = t == last;
    out << t << ',' << format_number(tr.x[t]) << ','
        << (final_row ? "" : format_number(tr.u[t])) << ',' << format_number(tr.y[t])
        << ',' << (final_row ? "" : format_number(tr.w[t])) << ','
        << format_number(tr.v[t]) << ',' << format_number(tr.x_hat[0][t]) << ','
        << format_number(tr.x_hat[1][t]) << ',' << format_number(tr.l[0][t]) << ','
        << format_number(tr.l[1][t]) << ','
        << (final_row ? "" : format_number(tr.alpha[t])) << '\n';
  }
}

SimulationTrace read_trace_csv(std::istream& in) {
  const auto rows = read_table(in, kTraceHeader);
  require(rows.size() >= 2, "trace csv: need at least two rows");
  SimulationTrace tr;
  tr.x_hat.assign(2, {});
  tr.l.assign(2, {});
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const auto& f = rows[t];
    require(f[0] == std::to_string(t), fmt::format("trace csv: row {} out of order", t));
    const bool final_row = t + 1 == rows.size();
    require(final_row == (f[2].empty() && f[4].empty() && f[10].empty()),
            "trace csv: only the last row may omit u, w and alpha");
    tr.x.push_back(parse_number(f[1]));
    tr.y.push_back(parse_number(f[3]));
    tr.v.push_back(parse_number(f[5]));
    tr.x_hat[0].push_back(parse_number(f[6]));
    tr.x_hat[1].push_back(parse_number(f[7]));
    tr.l[0].push_back(parse_number(f[8]));
    tr.l[1].push_back(parse_number(f[9]));
    if (!final_row) {
      tr.u.push_back(parse_number(f[2]));
      tr.w.push_back(parse_number(f[4]));
      tr.alpha.push_back(parse_number(f[10]));
    }
  }
  return tr;
}

json trace_meta(const SimulationTrace& tr) {
  return json{{"a", tr.true_model.a},   {"b_true", tr.true_model.b},
              {"c", tr.true_model.c},   {"gamma", tr.gamma},
              {"P", tr.P},              {"horizon", tr.horizon()},
              {"prng", tr.prng}};
}

void apply_trace_meta(const json& meta, SimulationTrace& tr) {
  tr.true_model = Model::make(meta.at("a").get<double>(), meta.at("b_true").get<double>(),
                              meta.at("c").get<double>());
  tr.gamma = meta.at("gamma").get<double>();
  tr.P = meta.at("P").get<double>();
  tr.prng = meta.at("prng").get<std::string>();
  require(meta.at("horizon").get<int>() == tr.horizon(),
          "trace meta: horizon does not match the table");
}

json to_json(const SolvedModel& s) {
  return json{{"P", s.P},         {"X", s.X},
              {"a_hat", s.a_hat}, {"g_hat", s.g_hat},
              {"feasible_gain", s.feasible_gain()}};
}

json to_json(const CertificationReport& r) {
  return json{{"a", r.a},
              {"gamma", r.gamma},
              {"P", std::isnan(r.P) ? json(nullptr) : json(r.P)},
              {"p_feasible", r.p_feasible},
              {"curvature_ok", r.curvature_ok},
              {"negativity_ok", r.negativity_ok},
              {"certified", r.certified}};
}

json to_json(const GammaStarSearch& s) {
  return json{{"a", s.a},
              {"gamma_star", s.gamma ? json(*s.gamma) : json(nullptr)},
              {"lower_bound", s.lower_bound},
              {"upper_bound", s.upper_bound},
              {"within_bounds", s.within_bounds}};
}

json to_json(const verify::OracleReport& report) {
  json failures = json::array();
  for (const auto& f : report.failures) {
    json entry{{"a", f.model.a},
               {"b", f.model.b},
               {"c", f.model.c},
               {"trial", f.trial},
               {"horizon", f.horizon},
               {"gap", std::isnan(f.gap) ? json(nullptr) : json(f.gap)}};
    if (!f.error.empty()) entry["error"] = f.error;
    failures.push_back(std::move(entry));
  }
  return json{{"trials", report.trials},
              {"max_gap", report.max_gap},
              {"failures", std::move(failures)}};
}

verify::OracleReport oracle_report_from_json(const json& doc) {
  verify::OracleReport report;
  report.trials = doc.at("trials").get<int>();
  report.max_gap = doc.at("max_gap").get<double>();
  for (const json& f : doc.at("failures")) {
    verify::OracleFailure failure;
    failure.model = Model::make(f.at("a").get<double>(), f.at("b").get<double>(),
                                f.at("c").get<double>());
    failure.trial = f.at("trial").get<int>();
    failure.horizon = f.at("horizon").get<int>();
    failure.gap = number_or_nan(f.at("gap"));
    failure.error = f.value("error", "");
    report.failures.push_back(std::move(failure));
  }
  return report;
}

json to_json(const ModelSet& models) {
  json list = json::array();
  for (const Model& m : models.models()) {
    list.push_back(json{{"a", m.a}, {"b", m.b}, {"c", m.c}});
  }
  return json{{"models", std::move(list)}};
}

ModelSet model_set_from_json(const json& doc) {
  require(doc.is_object() && doc.contains("models") && doc.at("models").is_array(),
          "model set: expected {\"models\": [...]}");
  std::vector<Model> models;
  for (const json& m : doc.at("models")) {
    models.push_back(Model::make(m.at("a").get<double>(), m.at("b").get<double>(),
                                 m.at("c").get<double>()));
  }
  return ModelSet(std::move(models));
}

}  // namespace lerc::io
