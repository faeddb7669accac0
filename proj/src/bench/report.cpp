#include "ects/bench/report.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <system_error>

#include "ects/error.hpp"
#include "ects/util/format.hpp"

namespace ects {
namespace {

constexpr const char* kRecordsHeader =
    "dataset,method,alpha,series_id,true_label,predicted_label,trigger_time,trigger_index,series_length,"
    "weighted_cost,misclassification_cost,delay_cost,oracle_time,oracle_cost,regret";
constexpr const char* kSkippedHeader = "dataset,method,alpha,reason";

// Names never hold commas (checked on load); free text gets them replaced.
std::string text_field(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  }
  return s;
}

class Row {
 public:
  template <typename T>
  Row& operator<<(const T& value) {
    if (!first_) out_ += ',';
    first_ = false;
    if constexpr (std::is_same_v<T, double>) {
      out_ += format_double(value);
    } else if constexpr (std::is_same_v<T, bool>) {
      out_ += value ? "true" : "false";
    } else if constexpr (std::is_integral_v<T>) {
      out_ += std::to_string(value);
    } else {
      out_ += text_field(std::string(value));
    }
    return *this;
  }
  std::string str() const { return out_ + '\n'; }

 private:
  std::string out_;
  bool first_ = true;
};

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T parse_number(const std::string& field, std::size_t line_no) {
  T value{};
  const auto* end = field.data() + field.size();
  const auto res = std::from_chars(field.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw DataError("line " + std::to_string(line_no) + ": cannot parse '" + field + "'");
  }
  return value;
}

// Data lines of a CSV with the expected header and column count.
std::vector<std::pair<std::size_t, std::vector<std::string>>> csv_rows(const std::string& text, const char* header,
                                                                       std::size_t columns) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != header) throw DataError("line 1: unexpected header");
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != columns) {
      throw DataError("line " + std::to_string(line_no) + ": expected " + std::to_string(columns) + " fields");
    }
    rows.emplace_back(line_no, std::move(fields));
  }
  return rows;
}

}  // namespace

std::string records_csv(const std::vector<EvalRecord>& records) {
  std::string out = std::string(kRecordsHeader) + '\n';
  for (const auto& r : records) {
    Row row;
    row << r.dataset << r.method << r.alpha << r.series_id << r.true_label << r.predicted_label << r.trigger_time
        << r.trigger_index << r.series_length << r.weighted_cost << r.misclassification_cost << r.delay_cost
        << r.oracle_time << r.oracle_cost << r.regret;
    out += row.str();
  }
  return out;
}

std::string summaries_csv(const std::vector<RunSummary>& summaries) {
  std::string out = "dataset,method,alpha,count,avg_cost,accuracy,earliness,mean_regret,mean_trigger_index\n";
  for (const auto& s : summaries) {
    Row row;
    row << s.dataset << s.method << s.alpha << s.count << s.avg_cost << s.accuracy << s.earliness << s.mean_regret
        << s.mean_trigger_index;
    out += row.str();
  }
  return out;
}

std::string ranks_csv(const std::vector<RankRow>& ranks) {
  std::string out = "alpha,method,mean_rank,ci_low,ci_high,datasets\n";
  for (const auto& r : ranks) {
    Row row;
    row << r.alpha << r.method << r.mean_rank << r.ci_low << r.ci_high << r.datasets;
    out += row.str();
  }
  return out;
}

std::string pairwise_csv(const std::vector<PairwiseRow>& rows) {
  std::string out = "alpha,method_a,method_b,wins,ties,losses,p_value,p_holm\n";
  for (const auto& r : rows) {
    Row row;
    row << r.alpha << r.method_a << r.method_b << r.wins << r.ties << r.losses << r.p_value << r.p_holm;
    out += row.str();
  }
  return out;
}

std::string pareto_csv(const std::vector<ParetoRow>& rows) {
  std::string out = "alpha,method,earliness,accuracy,on_front\n";
  for (const auto& r : rows) {
    Row row;
    row << r.alpha << r.method << r.earliness << r.accuracy << r.on_front;
    out += row.str();
  }
  return out;
}

std::string skipped_csv(const std::vector<SkipRecord>& rows) {
  std::string out = std::string(kSkippedHeader) + '\n';
  for (const auto& r : rows) {
    Row row;
    row << r.dataset << r.method << r.alpha << r.reason;
    out += row.str();
  }
  return out;
}

std::string ranks_svg(const std::vector<RankRow>& ranks) {
  constexpr double width = 640.0, height = 400.0, left = 60.0, right = 150.0, top = 20.0, bottom = 40.0;
  std::map<std::string, std::vector<const RankRow*>> lines;
  double max_rank = 1.0;
  for (const auto& r : ranks) {
    lines[r.method].push_back(&r);
    max_rank = std::max(max_rank, r.mean_rank);
  }
  const auto x_of = [&](double alpha) { return left + alpha * (width - left - right); };
  const auto y_of = [&](double rank) {
    return top + (max_rank > 1.0 ? (rank - 1.0) / (max_rank - 1.0) : 0.0) * (height - top - bottom);
  };
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
      << height - bottom << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 10; ++i) {
    const double a = i / 10.0;
    svg << "<text x=\"" << format_double(x_of(a)) << "\" y=\"" << height - bottom + 15
        << "\" font-size=\"10\" text-anchor=\"middle\">" << format_double(a) << "</text>\n";
  }
  svg << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 5
      << "\" font-size=\"12\" text-anchor=\"middle\">alpha</text>\n";
  svg << "<text x=\"15\" y=\"" << (top + height - bottom) / 2
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 15 " << (top + height - bottom) / 2
      << ")\">mean rank</text>\n";
  std::size_t colour = 0;
  for (const auto& [method, rows] : lines) {
    const char* stroke = palette[colour % std::size(palette)];
    svg << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i) svg << ' ';
      svg << format_double(x_of(rows[i]->alpha)) << ',' << format_double(y_of(rows[i]->mean_rank));
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << width - right + 10 << "\" y=\"" << top + 15.0 * static_cast<double>(colour + 1)
        << "\" font-size=\"11\" fill=\"" << stroke << "\">" << method << "</text>\n";
    ++colour;
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_reports(const ReportBundle& bundle, const std::filesystem::path& out_dir, bool emit_svg) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create '" + out_dir.string() + "': " + ec.message());
  write_file(out_dir / "records.csv", records_csv(bundle.records));
  write_file(out_dir / "summaries.csv", summaries_csv(bundle.summaries));
  write_file(out_dir / "ranks.csv", ranks_csv(bundle.ranks));
  write_file(out_dir / "pairwise.csv", pairwise_csv(bundle.pairwise));
  write_file(out_dir / "pareto.csv", pareto_csv(bundle.pareto));
  write_file(out_dir / "skipped.csv", skipped_csv(bundle.skipped));
  if (emit_svg) write_file(out_dir / "ranks.svg", ranks_svg(bundle.ranks));
}

std::vector<EvalRecord> parse_records_csv(const std::string& text) {
  std::vector<EvalRecord> out;
  for (const auto& [n, f] : csv_rows(text, kRecordsHeader, 15)) {
    EvalRecord r;
    r.dataset = f[0];
    r.method = f[1];
    r.alpha = parse_number<double>(f[2], n);
    r.series_id = f[3];
    r.true_label = parse_number<std::size_t>(f[4], n);
    r.predicted_label = parse_number<std::size_t>(f[5], n);
    r.trigger_time = parse_number<Timestamp>(f[6], n);
    r.trigger_index = parse_number<std::size_t>(f[7], n);
    r.series_length = parse_number<Timestamp>(f[8], n);
    r.weighted_cost = parse_number<double>(f[9], n);
    r.misclassification_cost = parse_number<double>(f[10], n);
    r.delay_cost = parse_number<double>(f[11], n);
    r.oracle_time = parse_number<Timestamp>(f[12], n);
    r.oracle_cost = parse_number<double>(f[13], n);
    r.regret = parse_number<double>(f[14], n);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SkipRecord> parse_skipped_csv(const std::string& text) {
  std::vector<SkipRecord> out;
  for (const auto& [n, f] : csv_rows(text, kSkippedHeader, 4)) {
    out.push_back({f[0], f[1], parse_number<double>(f[2], n), f[3]});
  }
  return out;
}

std::vector<EvalRecord> read_records_csv(const std::filesystem::path& path) {
  try {
    return parse_records_csv(read_file(path));
  } catch (const IoError&) {
    throw;
  } catch (const DataError& e) {
    throw DataError(path.string() + ":" + std::string(e.what()).substr(5));
  }
}

std::vector<SkipRecord> read_skipped_csv(const std::filesystem::path& path) {
  try {
    return parse_skipped_csv(read_file(path));
  } catch (const IoError&) {
    throw;
  } catch (const DataError& e) {
    throw DataError(path.string() + ":" + std::string(e.what()).substr(5));
  }
}

}  // namespace ects
