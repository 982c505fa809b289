// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/io/exporters.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "rica/errors.hpp"
#include "rica/io/bundle.hpp"

namespace rica {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// node fill colors cycled by community id
constexpr const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

double strict_f64(const std::string& s, std::size_t row, std::size_t col) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw Error(ErrorCode::TypeError,
                "csv field at row " + std::to_string(row) + ", column " +
                    std::to_string(col) + " is not a number: '" + s + "'");
  }
  return v;
}

void byte_hex(std::string& out, int v) {
  static const char digits[] = "0123456789abcdef";
  out.push_back(digits[(v >> 4) & 0xf]);
  out.push_back(digits[v & 0xf]);
}

// blend from white toward an endpoint of the diverging scale
void diverging_color(std::string& out, double v, double vmax) {
  if (!std::isfinite(v)) {
    out += "#808080";
    return;
  }
  double t = vmax > 0.0 ? std::fabs(v) / vmax : 0.0;
  if (t > 1.0) t = 1.0;
  const int target_r = v >= 0.0 ? 178 : 33;
  const int target_g = v >= 0.0 ? 24 : 102;
  const int target_b = v >= 0.0 ? 43 : 172;
  out.push_back('#');
  byte_hex(out, static_cast<int>(std::lround(255.0 + t * (target_r - 255.0))));
  byte_hex(out, static_cast<int>(std::lround(255.0 + t * (target_g - 255.0))));
  byte_hex(out, static_cast<int>(std::lround(255.0 + t * (target_b - 255.0))));
}

}  // namespace

std::string export_dot(const ConnectivityGraph& graph, double threshold) {
  const DenseMatrix& w = graph.weights;
  const std::size_t n = w.rows();
  if (w.cols() != n) {
    throw Error(ErrorCode::InvalidArgument, "graph weights must be square");
  }
  std::string out = "digraph rica {\n";
  for (std::size_t i = 0; i < n; ++i) {
    const std::string label =
        i < graph.labels.size() ? graph.labels[i] : "c" + std::to_string(i);
    out += "  n" + std::to_string(i) + " [label=\"" + label + "\"";
    if (i < graph.communities.size()) {
      out += ", style=filled, fillcolor=\"";
      out += kPalette[graph.communities[i] % kPaletteSize];
      out += "\"";
    }
    out += "];\n";
  }
  double wmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double a = std::fabs(w(i, j));
      if (a >= threshold && a > wmax) wmax = a;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double a = std::fabs(w(i, j));
      if (a < threshold) continue;
      const double pen = wmax > 0.0 ? 1.0 + 3.0 * a / wmax : 1.0;
      out += "  n" + std::to_string(i) + " -> n" + std::to_string(j) +
             " [weight=" + fmt(w(i, j)) + ", penwidth=" + fmt(pen) + "];\n";
    }
  }
  out += "}\n";
  return out;
}

std::string matrix_csv(const DenseMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out.push_back(',');
      out += fmt(m(i, j));
    }
    out.push_back('\n');
  }
  return out;
}

DenseMatrix parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    pos = eol + 1;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t field_start = 0;
    for (;;) {
      std::size_t comma = line.find(',', field_start);
      const std::string field =
          line.substr(field_start, comma == std::string::npos
                                       ? std::string::npos
                                       : comma - field_start);
      row.push_back(strict_f64(field, rows.size(), row.size()));
      if (comma == std::string::npos) break;
      field_start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::TypeError,
                  "csv row " + std::to_string(rows.size()) + " has " +
                      std::to_string(row.size()) + " fields, expected " +
                      std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return DenseMatrix();
  DenseMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string svg_heatmap(const DenseMatrix& m) {
  constexpr int kCell = 20;
  const std::size_t width = m.cols() * kCell;
  const std::size_t height = m.rows() * kCell;
  double vmax = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (std::isfinite(v) && std::fabs(v) > vmax) vmax = std::fabs(v);
    }
  }
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    std::to_string(width) + "\" height=\"" +
                    std::to_string(height) + "\" viewBox=\"0 0 " +
                    std::to_string(width) + " " + std::to_string(height) +
                    "\">\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out += "  <rect x=\"" + std::to_string(j * kCell) + "\" y=\"" +
             std::to_string(i * kCell) + "\" width=\"" + std::to_string(kCell) +
             "\" height=\"" + std::to_string(kCell) + "\" fill=\"";
      diverging_color(out, m(i, j), vmax);
      out += "\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  io_detail::write_binary_file(path, text);
}

std::string read_text(const std::string& path) {
  return io_detail::read_binary_file(path);
}

void write_csv(const std::string& path, const DenseMatrix& m) {
  io_detail::write_binary_file(path, matrix_csv(m));
}

DenseMatrix read_csv(const std::string& path) {
  return parse_csv(io_detail::read_binary_file(path));
}

}  // namespace rica
