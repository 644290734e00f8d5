#include <charconv>
#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "cdmd/systems.hpp"

namespace cdmd {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::optional<double> parse_real(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const char* b = s.data();
  const char* e = b + s.size();
  if (*b == '+') ++b;
  double v = 0;
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e || !std::isfinite(v)) return std::nullopt;
  return v;
}

// "a", "bi", "a+bi", "a-bi", "i", "-i".
std::optional<cplx> parse_cell(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const char last = s.back();
  if (last != 'i' && last != 'j') {
    auto r = parse_real(s);
    if (!r) return std::nullopt;
    return cplx(*r, 0.0);
  }
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split_at = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  const std::string re_s = split_at == std::string::npos ? "" : body.substr(0, split_at);
  std::string im_s = split_at == std::string::npos ? body : body.substr(split_at);
  if (im_s.empty() || im_s == "+") im_s = "1";
  if (im_s == "-") im_s = "-1";
  double re = 0.0;
  if (!re_s.empty()) {
    auto r = parse_real(re_s);
    if (!r) return std::nullopt;
    re = *r;
  }
  auto im = parse_real(im_s);
  if (!im) return std::nullopt;
  return cplx(re, *im);
}

bool looks_like_label(const std::string& s) {
  return !s.empty() && (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_') && !parse_cell(s);
}

}  // namespace

TimeSeries parse_csv(const std::string& text, std::string label) {
  std::vector<std::string> lines;
  {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
      line = trim(line);
      if (!line.empty()) lines.push_back(line);
    }
  }
  if (lines.empty()) throw InvalidArgument("csv: empty input");
  const bool paired = text.find(';') != std::string::npos;

  auto cells_of = [&](const std::string& line) { return split(line, paired ? ';' : ','); };
  std::size_t first = 0;
  {
    auto head = split(lines[0], paired ? ';' : ',');
    bool all_labels = true;
    for (const auto& c : head) {
      for (const auto& part : paired ? split(c, ',') : std::vector<std::string>{c})
        all_labels = all_labels && looks_like_label(part);
    }
    if (all_labels) first = 1;
  }
  if (first >= lines.size()) throw InvalidArgument("csv: no data rows");

  std::vector<std::vector<cplx>> rows;
  for (std::size_t li = first; li < lines.size(); ++li) {
    std::vector<cplx> row;
    for (const auto& cell : cells_of(lines[li])) {
      if (paired) {
        auto parts = split(cell, ',');
        if (parts.size() != 2) throw InvalidArgument("csv: line " + std::to_string(li + 1) + ": expected re,im pair");
        auto re = parse_real(parts[0]);
        auto im = parse_real(parts[1]);
        if (!re || !im) throw InvalidArgument("csv: line " + std::to_string(li + 1) + ": non-numeric cell '" + cell + "'");
        row.emplace_back(*re, *im);
      } else {
        auto v = parse_cell(cell);
        if (!v) throw InvalidArgument("csv: line " + std::to_string(li + 1) + ": non-numeric cell '" + cell + "'");
        row.push_back(*v);
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw InvalidArgument("csv: ragged row at line " + std::to_string(li + 1));
    rows.push_back(std::move(row));
  }
  const auto m = static_cast<Eigen::Index>(rows.size());
  const auto n = static_cast<Eigen::Index>(rows.front().size());
  if (n < 2) throw InvalidArgument("csv: need at least 2 snapshot columns");
  CMatrix data(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) data(i, j) = rows[i][j];
  return TimeSeries(std::move(data), std::move(label));
}

TimeSeries ingest_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("csv: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str(), path);
}

std::string format_csv(const TimeSeries& z, CsvLayout layout) {
  const CMatrix& d = z.data();
  const bool real = d.imag().cwiseAbs().maxCoeff() == 0.0;
  std::string out;
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      const cplx v = d(i, j);
      if (layout == CsvLayout::Paired) {
        if (j) out += ';';
        out += format_double(v.real()) + ',' + format_double(v.imag());
      } else {
        if (j) out += ',';
        out += format_double(v.real());
        if (!real) {
          const std::string im = format_double(v.imag());
          if (im[0] != '-') out += '+';
          out += im + 'i';
        }
      }
    }
    out += '\n';
  }
  return out;
}

void export_csv(const TimeSeries& z, const std::string& path, CsvLayout layout) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("csv: cannot write '" + path + "'");
  out << format_csv(z, layout);
  if (!out) throw InvalidArgument("csv: write failed for '" + path + "'");
}

}  // namespace cdmd
