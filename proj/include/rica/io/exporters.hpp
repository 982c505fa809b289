// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "rica/analysis/louvain.hpp"
#include "rica/matcore/dense_matrix.hpp"

namespace rica {

// Graphviz text for a weighted directed graph. One node line per vertex
// (community membership, when present, colors the node), then one edge line
//
//   ni -> nj [weight=w, penwidth=p]
//
// per ordered pair with |w| >= threshold, scanned row by row with the
// diagonal skipped. Pen widths scale linearly from 1 to 4 over the included
// edges. Output is deterministic; an empty graph renders as the bare header
// and closing brace.
std::string export_dot(const ConnectivityGraph& graph, double threshold);

// Comma-separated rows, 17 significant digits, one '\n' per row. parse_csv
// accepts exactly that shape back (ragged rows or non-numeric fields throw
// TypeError) so export -> import recovers every value to the last bit or two.
std::string matrix_csv(const DenseMatrix& m);
DenseMatrix parse_csv(const std::string& text);

// Fixed-geometry heatmap: 20 px cells on a diverging blue-white-red scale,
// symmetric about zero and normalized by max |value|. Non-finite cells paint
// gray.
std::string svg_heatmap(const DenseMatrix& m);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

void write_csv(const std::string& path, const DenseMatrix& m);
DenseMatrix read_csv(const std::string& path);

}  // namespace rica
