// Copyright (c) 2026 The rica authors
// SPDX-License-Identifier: Apache-2.0

#include "rica/io/bundle.hpp"

#include <cstring>
#include <fstream>
#include <limits>

#include "rica/errors.hpp"

namespace rica {

namespace {

constexpr char kBundleMagic[] = "RICAMB01";

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  put_u64(out, bits);
}

struct Cursor {
  const std::string& bytes;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (bytes.size() - pos < n) {
      throw Error(ErrorCode::TruncatedFile, "file ends inside a record");
    }
  }
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(bytes[pos++]);
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = 0;
    for (int i = 0; i < 2; ++i) {
      v |= static_cast<std::uint16_t>(static_cast<std::uint8_t>(bytes[pos++]))
           << (8 * i);
    }
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes[pos++]))
           << (8 * i);
    }
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(bytes[pos++]))
           << (8 * i);
    }
    return v;
  }
  double f64() {
    const std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }
  std::string str(std::size_t n) {
    need(n);
    std::string s = bytes.substr(pos, n);
    pos += n;
    return s;
  }
};

std::uint64_t checked_product(const std::vector<std::uint64_t>& dims) {
  std::uint64_t p = 1;
  for (std::uint64_t d : dims) {
    if (d != 0 && p > std::numeric_limits<std::uint64_t>::max() / d) {
      throw Error(ErrorCode::DimOverflow, "dimension product overflows");
    }
    p *= d;
  }
  if (p > std::numeric_limits<std::uint64_t>::max() / 8) {
    throw Error(ErrorCode::DimOverflow, "payload size overflows");
  }
  return p;
}

}  // namespace

void MatrixBundle::add_array(const std::string& name, BundleArray a) {
  if (has(name)) {
    throw Error(ErrorCode::DuplicateName, "array '" + name + "' already present");
  }
  std::uint64_t p = checked_product(a.dims);
  if (p != a.values.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "dims of '" + name + "' do not match its payload");
  }
  arrays.emplace_back(name, std::move(a));
}

void MatrixBundle::add(const std::string& name, const DenseMatrix& m) {
  BundleArray a;
  a.dims = {m.rows(), m.cols()};
  a.values = m.data();
  add_array(name, std::move(a));
}

void MatrixBundle::add(const std::string& name, const std::vector<double>& v) {
  BundleArray a;
  a.dims = {v.size()};
  a.values = v;
  add_array(name, std::move(a));
}

void MatrixBundle::set_meta(const std::string& key, const std::string& value) {
  for (auto& kv : metadata) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  metadata.emplace_back(key, value);
}

bool MatrixBundle::has(const std::string& name) const {
  for (const auto& kv : arrays) {
    if (kv.first == name) return true;
  }
  return false;
}

const BundleArray& MatrixBundle::array(const std::string& name) const {
  for (const auto& kv : arrays) {
    if (kv.first == name) return kv.second;
  }
  throw Error(ErrorCode::MissingRequired, "no array named '" + name + "'");
}

DenseMatrix MatrixBundle::matrix(const std::string& name) const {
  const BundleArray& a = array(name);
  if (a.dims.size() != 2) {
    throw Error(ErrorCode::TypeError, "array '" + name + "' is not 2-D");
  }
  DenseMatrix m(a.dims[0], a.dims[1]);
  m.data() = a.values;
  return m;
}

std::vector<double> MatrixBundle::vec(const std::string& name) const {
  const BundleArray& a = array(name);
  if (a.dims.size() != 1) {
    throw Error(ErrorCode::TypeError, "array '" + name + "' is not 1-D");
  }
  return a.values;
}

bool MatrixBundle::has_meta(const std::string& key) const {
  for (const auto& kv : metadata) {
    if (kv.first == key) return true;
  }
  return false;
}

const std::string& MatrixBundle::meta(const std::string& key) const {
  for (const auto& kv : metadata) {
    if (kv.first == key) return kv.second;
  }
  throw Error(ErrorCode::MissingRequired, "no metadata named '" + key + "'");
}

namespace io_detail {

std::string serialize_bundle(const MatrixBundle& bundle, const char* magic) {
  for (std::size_t i = 0; i < bundle.arrays.size(); ++i) {
    for (std::size_t j = i + 1; j < bundle.arrays.size(); ++j) {
      if (bundle.arrays[i].first == bundle.arrays[j].first) {
        throw Error(ErrorCode::DuplicateName,
                    "array '" + bundle.arrays[i].first + "' repeats");
      }
    }
  }

  std::string out(magic, 8);
  if (bundle.arrays.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::DimOverflow, "too many arrays");
  }
  put_u32(out, static_cast<std::uint32_t>(bundle.arrays.size()));
  for (const auto& [name, a] : bundle.arrays) {
    if (name.size() > std::numeric_limits<std::uint16_t>::max()) {
      throw Error(ErrorCode::InvalidArgument, "array name too long");
    }
    if (a.dims.size() > 255) {
      throw Error(ErrorCode::DimOverflow, "more than 255 dimensions");
    }
    if (checked_product(a.dims) != a.values.size()) {
      throw Error(ErrorCode::InvalidArgument,
                  "dims of '" + name + "' do not match its payload");
    }
    put_u16(out, static_cast<std::uint16_t>(name.size()));
    out += name;
    out.push_back(static_cast<char>(a.dims.size()));
    for (std::uint64_t d : a.dims) put_u64(out, d);
    for (double v : a.values) put_f64(out, v);
  }

  put_u32(out, static_cast<std::uint32_t>(bundle.metadata.size()));
  for (const auto& [key, value] : bundle.metadata) {
    if (key.size() > std::numeric_limits<std::uint16_t>::max()) {
      throw Error(ErrorCode::InvalidArgument, "metadata key too long");
    }
    if (value.size() > std::numeric_limits<std::uint32_t>::max()) {
      throw Error(ErrorCode::InvalidArgument, "metadata value too long");
    }
    put_u16(out, static_cast<std::uint16_t>(key.size()));
    out += key;
    put_u32(out, static_cast<std::uint32_t>(value.size()));
    out += value;
  }
  return out;
}

MatrixBundle parse_bundle(const std::string& bytes, const char* magic) {
  Cursor cur{bytes};
  if (bytes.size() < 8) {
    throw Error(ErrorCode::TruncatedFile, "file shorter than its magic");
  }
  if (bytes.compare(0, 8, magic, 8) != 0) {
    throw Error(ErrorCode::BadMagic, "expected magic " + std::string(magic, 8));
  }
  cur.pos = 8;

  MatrixBundle b;
  const std::uint32_t n_arrays = cur.u32();
  for (std::uint32_t i = 0; i < n_arrays; ++i) {
    const std::uint16_t name_len = cur.u16();
    std::string name = cur.str(name_len);
    const std::uint8_t ndim = cur.u8();
    BundleArray a;
    a.dims.resize(ndim);
    for (std::uint8_t d = 0; d < ndim; ++d) a.dims[d] = cur.u64();
    const std::uint64_t count = checked_product(a.dims);
    if ((bytes.size() - cur.pos) / 8 < count) {
      throw Error(ErrorCode::TruncatedFile,
                  "payload of '" + name + "' is cut short");
    }
    a.values.resize(count);
    for (std::uint64_t k = 0; k < count; ++k) a.values[k] = cur.f64();
    b.add_array(name, std::move(a));
  }

  const std::uint32_t n_meta = cur.u32();
  for (std::uint32_t i = 0; i < n_meta; ++i) {
    const std::uint16_t key_len = cur.u16();
    std::string key = cur.str(key_len);
    const std::uint32_t val_len = cur.u32();
    std::string value = cur.str(val_len);
    for (const auto& kv : b.metadata) {
      if (kv.first == key) {
        throw Error(ErrorCode::DuplicateName,
                    "metadata '" + key + "' repeats");
      }
    }
    b.metadata.emplace_back(std::move(key), std::move(value));
  }
  if (cur.pos != bytes.size()) {
    throw Error(ErrorCode::TruncatedFile,
                "file length does not match its contents");
  }
  return b;
}

std::string read_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileError, "cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::FileError, "cannot read " + path);
  return bytes;
}

void write_binary_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::FileError, "cannot open " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::FileError, "cannot write " + path);
}

}  // namespace io_detail

void write_bundle(const std::string& path, const MatrixBundle& bundle) {
  io_detail::write_binary_file(path,
                               io_detail::serialize_bundle(bundle, kBundleMagic));
}

MatrixBundle read_bundle(const std::string& path) {
  return io_detail::parse_bundle(io_detail::read_binary_file(path),
                                 kBundleMagic);
}

}  // namespace rica
