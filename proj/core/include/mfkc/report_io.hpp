#pragma once

#include <string>
#include <string_view>

#include "mfkc/bench.hpp"
#include "mfkc/eval.hpp"

namespace mfkc {

/// Shortest decimal form that parses back to the same double; "inf" and
/// "nan" for non-finite values.
std::string format_number(double value);

// JSON documents. The *_from_json parsers accept exactly what the writers
// produce and throw ParseError otherwise. Non-finite numbers are written
// as null.
std::string to_json(const EvalReport& report);
std::string to_json(const SweepReport& report);
std::string to_json(const BenchReport& report);

EvalReport eval_report_from_json(std::string_view text);
SweepReport sweep_report_from_json(std::string_view text);
BenchReport bench_report_from_json(std::string_view text);

// Flat TSV: a header line, one row per fold / k / (function, n). Summary
// lines that do not fit the table are appended as '#' comments.
std::string to_tsv(const EvalReport& report);
std::string to_tsv(const SweepReport& report);
std::string to_tsv(const BenchReport& report);

}  // namespace mfkc
