#include "mfkc/report_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "mfkc/error.hpp"

namespace mfkc {

using json = nlohmann::json;

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json summary_json(const Summary& s) {
  return {{"mean", number(s.mean)}, {"stddev", number(s.stddev)}, {"n", s.n}};
}

Summary summary_from(const json& j) {
  return {j.at("mean").get<double>(), j.at("stddev").get<double>(),
          j.at("n").get<std::size_t>()};
}

json spec_json(const DistanceSpec& spec) {
  return {{"k", spec.k},
          {"limit", spec.limit},
          {"variant", std::string(to_string(spec.variant))},
          {"clamp", spec.clamp},
          {"unit", std::string(to_string(spec.unit))}};
}

DistanceSpec spec_from(const json& j) {
  DistanceSpec spec;
  spec.k = j.at("k").get<std::size_t>();
  spec.limit = j.at("limit").get<double>();
  spec.variant = parse_variant(j.at("variant").get<std::string>());
  spec.clamp = j.at("clamp").get<bool>();
  spec.unit = parse_char_unit(j.at("unit").get<std::string>());
  return spec;
}

json cv_json(const CvConfig& c) {
  return {{"folds", c.folds},
          {"neighbors", c.neighbors},
          {"seed", c.seed},
          {"threads", c.threads}};
}

CvConfig cv_from(const json& j) {
  CvConfig c;
  c.folds = j.at("folds").get<std::size_t>();
  c.neighbors = j.at("neighbors").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.threads = j.at("threads").get<std::size_t>();
  return c;
}

template <typename Fn>
auto parse_document(std::string_view text, std::string_view what, Fn&& fn) {
  try {
    return fn(json::parse(text));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what(), e.byte);
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what(), 0);
  } catch (const ConfigError& e) {
    throw ParseError(std::string(what) + ": " + e.what(), 0);
  }
}

}  // namespace

std::string to_json(const EvalReport& report) {
  json folds = json::array();
  for (const auto& f : report.per_fold) {
    folds.push_back({{"fold", f.fold},
                     {"test_size", f.test_size},
                     {"accuracy", number(f.accuracy)},
                     {"rmse", number(f.rmse)},
                     {"rae", f.rae ? number(*f.rae) : json(nullptr)}});
  }
  const json doc = {
      {"method", report.method},
      {"config", cv_json(report.config)},
      {"documents", report.documents},
      {"labels", report.labels},
      {"per_fold", folds},
      {"aggregate",
       {{"accuracy", summary_json(report.accuracy)},
        {"rmse", summary_json(report.rmse)},
        {"rae", summary_json(report.rae)}}},
      {"confusion", report.confusion},
  };
  return doc.dump(2);
}

EvalReport eval_report_from_json(std::string_view text) {
  return parse_document(text, "eval report", [](const json& j) {
    EvalReport r;
    r.method = j.at("method").get<std::string>();
    r.config = cv_from(j.at("config"));
    r.documents = j.at("documents").get<std::size_t>();
    r.labels = j.at("labels").get<std::vector<std::string>>();
    for (const auto& f : j.at("per_fold")) {
      FoldMetrics m;
      m.fold = f.at("fold").get<std::size_t>();
      m.test_size = f.at("test_size").get<std::size_t>();
      m.accuracy = f.at("accuracy").get<double>();
      m.rmse = f.at("rmse").get<double>();
      if (!f.at("rae").is_null()) m.rae = f.at("rae").get<double>();
      r.per_fold.push_back(m);
    }
    const auto& agg = j.at("aggregate");
    r.accuracy = summary_from(agg.at("accuracy"));
    r.rmse = summary_from(agg.at("rmse"));
    r.rae = summary_from(agg.at("rae"));
    r.confusion =
        j.at("confusion").get<std::vector<std::vector<std::size_t>>>();
    return r;
  });
}

std::string to_json(const SweepReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"k", row.k},
                    {"mean_accuracy", number(row.mean_accuracy)},
                    {"mean_pair_ns", number(row.mean_pair_ns)}});
  }
  const auto& c = report.config;
  const json doc = {
      {"config",
       {{"k_values", c.k_values},
        {"cv", cv_json(c.cv)},
        {"distance", spec_json(c.base)},
        {"timing_docs", c.timing_docs},
        {"timing_batches", c.timing_batches}}},
      {"documents", report.documents},
      {"rows", rows},
  };
  return doc.dump(2);
}

SweepReport sweep_report_from_json(std::string_view text) {
  return parse_document(text, "sweep report", [](const json& j) {
    SweepReport r;
    const auto& c = j.at("config");
    r.config.k_values = c.at("k_values").get<std::vector<std::size_t>>();
    r.config.cv = cv_from(c.at("cv"));
    r.config.base = spec_from(c.at("distance"));
    r.config.timing_docs = c.at("timing_docs").get<std::size_t>();
    r.config.timing_batches = c.at("timing_batches").get<std::size_t>();
    r.documents = j.at("documents").get<std::size_t>();
    for (const auto& row : j.at("rows")) {
      r.rows.push_back({row.at("k").get<std::size_t>(),
                        row.at("mean_accuracy").get<double>(),
                        row.at("mean_pair_ns").get<double>()});
    }
    return r;
  });
}

std::string to_json(const BenchReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"function", row.function},
                    {"n", row.n},
                    {"reps", row.reps},
                    {"inner", row.inner},
                    {"mean_ns", number(row.mean_ns)},
                    {"stddev_ns", number(row.stddev_ns)}});
  }
  json ratios = json::array();
  for (const auto& r : report.ratios) {
    ratios.push_back(
        {{"function", r.function}, {"n", r.n}, {"ratio", number(r.ratio)}});
  }
  const json doc = {{"alphabet_size", report.alphabet_size},
                    {"seed", report.seed},
                    {"rows", rows},
                    {"ratios", ratios}};
  return doc.dump(2);
}

BenchReport bench_report_from_json(std::string_view text) {
  return parse_document(text, "bench report", [](const json& j) {
    BenchReport r;
    r.alphabet_size = j.at("alphabet_size").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& row : j.at("rows")) {
      r.rows.push_back({row.at("function").get<std::string>(),
                        row.at("n").get<std::size_t>(),
                        row.at("reps").get<std::size_t>(),
                        row.at("inner").get<std::size_t>(),
                        row.at("mean_ns").get<double>(),
                        row.at("stddev_ns").get<double>()});
    }
    for (const auto& ratio : j.at("ratios")) {
      r.ratios.push_back({ratio.at("function").get<std::string>(),
                          ratio.at("n").get<std::size_t>(),
                          ratio.at("ratio").get<double>()});
    }
    return r;
  });
}

std::string to_tsv(const EvalReport& report) {
  std::ostringstream out;
  out << "fold\ttest_size\taccuracy\trmse\trae\n";
  for (const auto& f : report.per_fold) {
    out << f.fold << '\t' << f.test_size << '\t' << format_number(f.accuracy)
        << '\t' << format_number(f.rmse) << '\t'
        << (f.rae ? format_number(*f.rae) : "NA") << '\n';
  }
  auto line = [&](std::string_view name, const Summary& s) {
    out << "# " << name << "\tmean=" << format_number(s.mean)
        << "\tstddev=" << format_number(s.stddev) << "\tn=" << s.n << '\n';
  };
  out << "# method=" << report.method << "\tdocuments=" << report.documents
      << "\tfolds=" << report.config.folds
      << "\tneighbors=" << report.config.neighbors
      << "\tseed=" << report.config.seed << '\n';
  line("accuracy", report.accuracy);
  line("rmse", report.rmse);
  line("rae", report.rae);
  return out.str();
}

std::string to_tsv(const SweepReport& report) {
  std::ostringstream out;
  out << "k\tmean_accuracy\tmean_pair_ns\n";
  for (const auto& row : report.rows) {
    out << row.k << '\t' << format_number(row.mean_accuracy) << '\t'
        << format_number(row.mean_pair_ns) << '\n';
  }
  return out.str();
}

std::string to_tsv(const BenchReport& report) {
  std::ostringstream out;
  out << "function\tn\treps\tmean_ns\tstddev_ns\n";
  for (const auto& row : report.rows) {
    out << row.function << '\t' << row.n << '\t' << row.reps << '\t'
        << format_number(row.mean_ns) << '\t' << format_number(row.stddev_ns)
        << '\n';
  }
  for (const auto& r : report.ratios) {
    out << "# doubling_ratio\t" << r.function << '\t' << r.n << '\t'
        << format_number(r.ratio) << '\n';
  }
  return out.str();
}

}  // namespace mfkc
