// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rica/matcore/dense_matrix.hpp"

namespace rica {

struct BundleArray {
  std::vector<std::uint64_t> dims;
  std::vector<double> values;  // row-major
};

// Named-array container behind every binary artifact. Arrays and metadata
// keep insertion order so serialization is deterministic byte for byte.
struct MatrixBundle {
  std::vector<std::pair<std::string, BundleArray>> arrays;
  std::vector<std::pair<std::string, std::string>> metadata;

  void add(const std::string& name, const DenseMatrix& m);
  void add(const std::string& name, const std::vector<double>& v);  // 1-D
  void add_array(const std::string& name, BundleArray a);
  // insert or overwrite
  void set_meta(const std::string& key, const std::string& value);

  bool has(const std::string& name) const;
  const BundleArray& array(const std::string& name) const;
  DenseMatrix matrix(const std::string& name) const;     // 2-D arrays only
  std::vector<double> vec(const std::string& name) const;  // 1-D arrays only
  bool has_meta(const std::string& key) const;
  const std::string& meta(const std::string& key) const;
};

// On-disk layout, all little-endian:
//   magic (8 bytes) | u32 array count
//   per array:  u16 name length | name | u8 ndim | ndim x u64 dims
//               | product(dims) x f64 payload
//   u32 metadata count
//   per entry:  u16 key length | key | u32 value length | value
void write_bundle(const std::string& path, const MatrixBundle& bundle);
MatrixBundle read_bundle(const std::string& path);

namespace io_detail {
std::string serialize_bundle(const MatrixBundle& bundle, const char* magic);
MatrixBundle parse_bundle(const std::string& bytes, const char* magic);
std::string read_binary_file(const std::string& path);
void write_binary_file(const std::string& path, const std::string& bytes);
}  // namespace io_detail

}  // namespace rica
