#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zest/channels.hpp"
#include "zest/linalg.hpp"

namespace zest::io {

using channels::QuantumChannel;
using linalg::ComplexMatrix;
using linalg::RealMatrix;

/// On-disk channel description (JSON). Exactly one of `kraus` / `classical`
/// is present; complex entries are [re, im] pairs, matrices row-major.
/// Serialized doubles round-trip bit-exactly.
struct ChannelFile {
  std::string name;
  int dim_in = 0;
  int dim_out = 0;
  std::optional<std::vector<ComplexMatrix>> kraus;
  std::optional<RealMatrix> classical;
};

ChannelFile parse_channel_json(const std::string& text);
std::string channel_to_json(const ChannelFile& cf);
ChannelFile read_channel_file(const std::string& path);
void write_channel_file(const ChannelFile& cf, const std::string& path);

/// Validates and converts to a channel (classical matrices go through the
/// stochastic construction).
QuantumChannel to_channel(const ChannelFile& cf);

/// ChannelFile for the family channel; the name encodes alpha so derived
/// reports can attach closed forms.
ChannelFile nalpha_file(double alpha);

/// Recovers alpha from a name of the form "nalpha:<decimal>".
std::optional<double> alpha_from_name(const std::string& name);

/// One output line of `compute` / `sweep`.
struct ReportRow {
  std::string label;
  std::optional<double> alpha;
  std::string quantity;
  double value = 0.0;
  double log2_value = 0.0;
  std::optional<double> closed_form;
  std::optional<double> abs_error;
  int iterations = 0;
  std::string status;
};

/// Locale-independent formatting with 10 significant digits.
std::string format_double(double v);

/// Fixed schema: label,alpha,quantity,value,log2_value,closed_form,
/// abs_error,iterations,status.
std::string rows_to_csv(const std::vector<ReportRow>& rows);
std::string rows_to_json(const std::vector<ReportRow>& rows);

}  // namespace zest::io
