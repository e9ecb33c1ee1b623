#pragma once

#include <string>
#include <utility>
#include <vector>

#include "snapcap/tensor.hpp"

namespace snapcap {

/// Binary tensor container, shared repo-wide so any language can read it:
///   8-byte magic "SNAPTNSR"
///   u32 little-endian dtype code (1 = float64, 2 = float32, 3 = int64)
///   u32 little-endian rank
///   rank x u64 little-endian dims
///   row-major data, little-endian
/// In-memory tensors are double; float32 files are widened on read.
namespace dtype {
constexpr uint32_t f64 = 1;
constexpr uint32_t f32 = 2;
constexpr uint32_t i64 = 3;
}

void write_tensor(const std::string& path, const Tensor& t, uint32_t dt = dtype::f64);
Tensor read_tensor(const std::string& path);

std::vector<unsigned char> tensor_to_bytes(const Tensor& t, uint32_t dt = dtype::f64);
Tensor tensor_from_bytes(const unsigned char* buf, size_t len, size_t* consumed = nullptr);

/// Archive of named tensors (one file per model component):
///   8-byte magic "SNAPARCH", u32 record count, then per record
///   u32 name length, name bytes, and a full tensor container blob.
struct NamedTensor {
    std::string name;
    Tensor value;
};

void write_archive(const std::string& path, const std::vector<NamedTensor>& entries);
std::vector<NamedTensor> read_archive(const std::string& path);

} // namespace snapcap
