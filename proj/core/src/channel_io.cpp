#include "zest/channel_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace zest::io {

namespace {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty())
    throw InputError("channel file: matrix must be a nonempty array of rows");
  const std::size_t ncols = rows[0].size();
  ComplexMatrix m(rows.size(), ncols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != ncols)
      throw InputError("channel file: ragged matrix rows");
    for (std::size_t j = 0; j < ncols; ++j) {
      const auto& e = row[j];
      if (!e.is_array() || e.size() != 2)
        throw InputError("channel file: entries must be [re, im] pairs");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          linalg::Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

RealMatrix real_matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty())
    throw InputError("channel file: matrix must be a nonempty array of rows");
  const std::size_t ncols = rows[0].size();
  RealMatrix m(rows.size(), ncols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != ncols)
      throw InputError("channel file: ragged matrix rows");
    for (std::size_t j = 0; j < ncols; ++j) {
      if (!row[j].is_number())
        throw InputError("channel file: classical entries must be numbers");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          row[j].get<double>();
    }
  }
  return m;
}

}  // namespace

ChannelFile parse_channel_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("channel file: invalid JSON: ") + e.what());
  }
  ChannelFile cf;
  try {
    cf.name = doc.value("name", std::string("channel"));
    const bool has_kraus = doc.contains("kraus");
    const bool has_classical = doc.contains("classical");
    if (has_kraus == has_classical)
      throw InputError(
          "channel file: exactly one of 'kraus'/'classical' must be present");
    if (has_kraus) {
      cf.dim_in = doc.at("dim_in").get<int>();
      cf.dim_out = doc.at("dim_out").get<int>();
      std::vector<ComplexMatrix> ops;
      for (const auto& k : doc.at("kraus")) ops.push_back(matrix_from_json(k));
      if (ops.empty()) throw InputError("channel file: empty Kraus list");
      for (const auto& op : ops)
        if (op.rows() != cf.dim_out || op.cols() != cf.dim_in)
          throw InputError(
              "channel file: Kraus shape disagrees with dim_in/dim_out");
      cf.kraus = std::move(ops);
    } else {
      const RealMatrix m = real_matrix_from_json(doc.at("classical"));
      cf.classical = m;
      cf.dim_in = static_cast<int>(m.cols());
      cf.dim_out = static_cast<int>(m.rows());
      if (doc.contains("dim_in") && doc.at("dim_in").get<int>() != cf.dim_in)
        throw InputError("channel file: dim_in disagrees with matrix shape");
      if (doc.contains("dim_out") &&
          doc.at("dim_out").get<int>() != cf.dim_out)
        throw InputError("channel file: dim_out disagrees with matrix shape");
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("channel file: ") + e.what());
  }
  return cf;
}

std::string channel_to_json(const ChannelFile& cf) {
  json doc;
  doc["name"] = cf.name;
  doc["dim_in"] = cf.dim_in;
  doc["dim_out"] = cf.dim_out;
  if (cf.kraus) {
    json ops = json::array();
    for (const auto& k : *cf.kraus) ops.push_back(matrix_to_json(k));
    doc["kraus"] = std::move(ops);
  } else if (cf.classical) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < cf.classical->rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < cf.classical->cols(); ++j)
        row.push_back((*cf.classical)(i, j));
      rows.push_back(std::move(row));
    }
    doc["classical"] = std::move(rows);
  }
  return doc.dump(2) + "\n";
}

ChannelFile read_channel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open channel file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_channel_json(ss.str());
}

void write_channel_file(const ChannelFile& cf, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write channel file: " + path);
  out << channel_to_json(cf);
}

QuantumChannel to_channel(const ChannelFile& cf) {
  if (cf.kraus) return channels::make_channel(*cf.kraus, cf.name);
  if (cf.classical) return channels::classical_channel(*cf.classical, cf.name);
  throw InputError("channel file: no channel data");
}

ChannelFile nalpha_file(double alpha) {
  const auto ch = channels::family_nalpha(alpha);
  ChannelFile cf;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", alpha);
  cf.name = std::string("nalpha:") + buf;
  cf.dim_in = ch.dim_in;
  cf.dim_out = ch.dim_out;
  cf.kraus = ch.kraus;
  return cf;
}

std::optional<double> alpha_from_name(const std::string& name) {
  constexpr const char* prefix = "nalpha:";
  if (name.rfind(prefix, 0) != 0) return std::nullopt;
  const std::string digits = name.substr(7);
  double v = 0.0;
  const auto* first = digits.data();
  const auto* last = digits.data() + digits.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) return std::nullopt;
  return v;
}

std::string format_double(double v) {
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 10);
  return std::string(buf, res.ptr);
}

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
  std::string out =
      "label,alpha,quantity,value,log2_value,closed_form,abs_error,"
      "iterations,status\n";
  for (const auto& r : rows) {
    out += r.label + ",";
    out += (r.alpha ? format_double(*r.alpha) : "") + ",";
    out += r.quantity + ",";
    out += format_double(r.value) + ",";
    out += format_double(r.log2_value) + ",";
    out += (r.closed_form ? format_double(*r.closed_form) : "") + ",";
    out += (r.abs_error ? format_double(*r.abs_error) : "") + ",";
    out += std::to_string(r.iterations) + ",";
    out += r.status + "\n";
  }
  return out;
}

std::string rows_to_json(const std::vector<ReportRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json o;
    o["label"] = r.label;
    if (r.alpha) o["alpha"] = *r.alpha;
    o["quantity"] = r.quantity;
    o["value"] = r.value;
    o["log2_value"] = r.log2_value;
    if (r.closed_form) o["closed_form"] = *r.closed_form;
    if (r.abs_error) o["abs_error"] = *r.abs_error;
    o["iterations"] = r.iterations;
    o["status"] = r.status;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

}  // namespace zest::io
