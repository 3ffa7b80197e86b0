// Copyright 2026 The MxT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mxt/distill/checkpoint.h"

#include "mxt/common/error.h"
#include "mxt/common/io.h"

namespace mxt {
namespace {

constexpr char kMagic[] = "CGCK";
constexpr char kTensorTag[] = "tensors";

void WriteTable(ByteWriter& w, const std::vector<std::string>& names,
                const std::vector<Tensor>& tensors) {
  w.U32(static_cast<uint32_t>(names.size()));
  for (size_t i = 0; i < names.size(); ++i) {
    const Tensor& t = tensors[i];
    w.String(names[i]);
    w.U32(static_cast<uint32_t>(t.shape.size()));
    for (int extent : t.shape) w.U32(static_cast<uint32_t>(extent));
    for (double v : t.data) w.F64(v);
  }
}

TensorTable ReadTable(ByteReader& r) {
  TensorTable table;
  uint32_t count = r.U32();
  for (uint32_t i = 0; i < count; ++i) {
    std::string name = r.String();
    uint32_t rank = r.U32();
    if (rank > 8) throw Error(ErrorKind::kCorruption, name + ": implausible rank");
    Tensor t;
    size_t size = 1;
    for (uint32_t k = 0; k < rank; ++k) {
      t.shape.push_back(static_cast<int>(r.U32()));
      size *= t.shape.back();
    }
    if (size > r.remaining() / 8) {
      throw Error(ErrorKind::kCorruption, name + ": tensor exceeds the file");
    }
    t.data.resize(size);
    for (double& v : t.data) v = r.F64();
    table.names.push_back(std::move(name));
    table.tensors.push_back(std::move(t));
  }
  return table;
}

std::vector<uint8_t> Frame(std::string_view tag, std::string_view config,
                           const std::vector<std::string>& names,
                           const std::vector<Tensor>& tensors) {
  ByteWriter w;
  w.Bytes(std::string_view(kMagic, 4));
  w.U32(kCheckpointFormatVersion);
  w.String(tag);
  w.String(config);
  WriteTable(w, names, tensors);
  uint64_t sum = Fnv1a64(w.data());
  w.U64(sum);
  return std::move(w.data());
}

struct Unframed {
  std::string tag;
  std::string config;
  TensorTable table;
};

Unframed Unframe(std::span<const uint8_t> bytes) {
  if (bytes.size() < 16) throw Error(ErrorKind::kCorruption, "checkpoint is truncated");
  std::span<const uint8_t> body = bytes.first(bytes.size() - 8);
  ByteReader tail(bytes.last(8));
  if (tail.U64() != Fnv1a64(body)) {
    throw Error(ErrorKind::kCorruption, "checkpoint checksum mismatch");
  }
  ByteReader r(body);
  if (r.Bytes(4) != std::string_view(kMagic, 4)) {
    throw Error(ErrorKind::kCorruption, "not a checkpoint (bad magic)");
  }
  uint32_t version = r.U32();
  if (version != kCheckpointFormatVersion) {
    throw Error(ErrorKind::kCorruption,
                "unsupported checkpoint version " + std::to_string(version));
  }
  Unframed out;
  out.tag = r.String();
  out.config = r.String();
  out.table = ReadTable(r);
  if (r.remaining() != 0) {
    throw Error(ErrorKind::kCorruption, "trailing bytes before the checksum");
  }
  return out;
}

}  // namespace

std::vector<uint8_t> EncodeCheckpoint(const PolicyParams& policy) {
  return Frame(policy.config.ArchTag(), policy.config.Serialize(), policy.params.names,
               policy.params.values);
}

PolicyParams DecodeCheckpoint(std::span<const uint8_t> bytes) {
  Unframed u = Unframe(bytes);
  PolicyConfig config;
  try {
    config = PolicyConfig::Parse(u.config);
  } catch (const Error& e) {
    throw Error(ErrorKind::kCorruption, std::string("bad config block: ") + e.what());
  }
  if (config.ArchTag() != u.tag) {
    throw Error(ErrorKind::kCorruption, "arch tag '" + u.tag +
                                            "' disagrees with the config block");
  }
  PolicyParams policy = InitParams(config, 0);
  if (policy.params.names != u.table.names) {
    throw Error(ErrorKind::kCorruption, "tensor table does not match the architecture");
  }
  for (size_t i = 0; i < u.table.tensors.size(); ++i) {
    if (!u.table.tensors[i].SameShape(policy.params.values[i])) {
      throw Error(ErrorKind::kCorruption, u.table.names[i] + ": unexpected shape");
    }
  }
  policy.params.values = std::move(u.table.tensors);
  policy.params.ZeroGrads();
  return policy;
}

void SaveCheckpoint(const std::string& path, const PolicyParams& policy) {
  WriteFileBytes(path, EncodeCheckpoint(policy));
}

PolicyParams LoadCheckpoint(const std::string& path) {
  return DecodeCheckpoint(ReadFileBytes(path));
}

PolicyParams LoadCheckpointAs(const std::string& path, const PolicyConfig& expected) {
  PolicyParams policy = LoadCheckpoint(path);
  if (policy.config.ArchTag() != expected.ArchTag()) {
    throw Error(ErrorKind::kConfig, "checkpoint holds a " + policy.config.ArchTag() +
                                        " policy, expected " + expected.ArchTag());
  }
  return policy;
}

std::vector<uint8_t> EncodeTensorTable(const TensorTable& table) {
  return Frame(kTensorTag, "", table.names, table.tensors);
}

TensorTable DecodeTensorTable(std::span<const uint8_t> bytes) {
  Unframed u = Unframe(bytes);
  if (u.tag != kTensorTag) {
    throw Error(ErrorKind::kCorruption, "expected a tensor table, found '" + u.tag + "'");
  }
  return std::move(u.table);
}

}  // namespace mxt
