/* Copyright 2026 The winoint Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "winoint/tensor.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "winoint/winograd.h"

namespace winoint {
namespace {

void CheckShape(const Shape& shape) {
  if (shape.n < 0 || shape.h < 0 || shape.w < 0 || shape.c < 0) {
    throw WinoError(ErrorCode::kInvalidArgument,
                    "negative dimension in shape " + ToString(shape));
  }
}

int64_t CheckedElements(const Shape& shape) {
  int64_t count = 1;
  for (int64_t d : {shape.n, shape.h, shape.w, shape.c}) count = CheckedMul(count, d);
  return count;
}

DType ParseDType(const std::string& s) {
  if (s == "u8") return DType::kU8;
  if (s == "i32") return DType::kI32;
  throw WinoError(ErrorCode::kUnknownDtype, "dtype '" + s + "'");
}

void AppendLe32(std::string& out, int32_t v) {
  const auto u = static_cast<uint32_t>(v);
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((u >> (8 * i)) & 0xFF));
}

int32_t ReadLe32(const unsigned char* p) {
  const uint32_t u = static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
                     (static_cast<uint32_t>(p[2]) << 16) |
                     (static_cast<uint32_t>(p[3]) << 24);
  return static_cast<int32_t>(u);
}

}  // namespace

std::string ToString(const Shape& shape) {
  std::ostringstream os;
  os << shape.n << "x" << shape.h << "x" << shape.w << "x" << shape.c;
  return os.str();
}

const char* DTypeName(DType dtype) {
  return dtype == DType::kU8 ? "u8" : "i32";
}

QTensor::QTensor(Shape shape, DType dtype, int zero_point, double scale,
                 std::vector<int32_t> data)
    : shape_(shape),
      dtype_(dtype),
      zero_point_(zero_point),
      scale_(scale),
      data_(std::move(data)) {
  CheckShape(shape_);
  if (static_cast<int64_t>(data_.size()) != CheckedElements(shape_)) {
    throw WinoError(ErrorCode::kLengthMismatch,
                    std::to_string(data_.size()) + " elements for shape " +
                        ToString(shape_));
  }
  if (zero_point_ < 0 || zero_point_ > 255) {
    throw WinoError(ErrorCode::kOutOfRange,
                    "zero point " + std::to_string(zero_point_));
  }
  if (dtype_ == DType::kU8) {
    for (int32_t v : data_) {
      if (v < 0 || v > 255) {
        throw WinoError(ErrorCode::kOutOfRange,
                        "u8 element " + std::to_string(v));
      }
    }
  }
}

ITensor::ITensor(Shape shape, int bit_width, std::vector<int32_t> data)
    : shape_(shape), bit_width_(bit_width), data_(std::move(data)) {
  CheckShape(shape_);
  if (bit_width_ < 2 || bit_width_ > 32) {
    throw WinoError(ErrorCode::kInvalidArgument,
                    "bit width " + std::to_string(bit_width_));
  }
  if (static_cast<int64_t>(data_.size()) != CheckedElements(shape_)) {
    throw WinoError(ErrorCode::kLengthMismatch,
                    std::to_string(data_.size()) + " elements for shape " +
                        ToString(shape_));
  }
  if (bit_width_ < 32) {
    const int64_t hi = (int64_t{1} << (bit_width_ - 1)) - 1;
    for (int32_t v : data_) {
      if (v < -hi - 1 || v > hi) {
        throw WinoError(ErrorCode::kOutOfRange,
                        std::to_string(v) + " does not fit int" +
                            std::to_string(bit_width_));
      }
    }
  }
}

QTensor ITensor::ToQTensor() const {
  return QTensor(shape_, DType::kI32, 0, 1.0, data_);
}

ITensor ZeroPointAdjust(const QTensor& t) {
  if (t.dtype() != DType::kU8) {
    throw WinoError(ErrorCode::kInvalidArgument,
                    "zero-point adjustment expects u8 data");
  }
  std::vector<int32_t> out;
  out.reserve(t.data().size());
  for (int32_t v : t.data()) out.push_back(v - t.zero_point());
  return ITensor(t.shape(), 9, std::move(out));
}

int64_t ConvOutputExtent(int64_t input, int padding) {
  return input + 2 * static_cast<int64_t>(padding) - 2;
}

std::array<int64_t, 2> TileGridExtent(const Shape& shape, int padding, int m) {
  const int64_t oh = ConvOutputExtent(shape.h, padding);
  const int64_t ow = ConvOutputExtent(shape.w, padding);
  return {(oh + m - 1) / m, (ow + m - 1) / m};
}

std::vector<Tile> ExtractTiles(const ITensor& t, const WinoAlgorithm& algorithm,
                               int padding) {
  if (padding < 0) {
    throw WinoError(ErrorCode::kInvalidArgument, "negative padding");
  }
  const Shape& s = t.shape();
  if (ConvOutputExtent(s.h, padding) < 1 || ConvOutputExtent(s.w, padding) < 1) {
    throw WinoError(ErrorCode::kShapeMismatch,
                    "input " + ToString(s) + " with padding " +
                        std::to_string(padding) + " is smaller than the filter");
  }
  const int side = algorithm.t;
  const int stride = algorithm.m;
  const auto [tiles_y, tiles_x] = TileGridExtent(s, padding, stride);
  std::vector<Tile> tiles;
  tiles.reserve(static_cast<size_t>(s.n * tiles_y * tiles_x * s.c));
  for (int64_t b = 0; b < s.n; ++b) {
    for (int64_t ty = 0; ty < tiles_y; ++ty) {
      for (int64_t tx = 0; tx < tiles_x; ++tx) {
        const int64_t row0 = ty * stride - padding;
        const int64_t col0 = tx * stride - padding;
        for (int64_t ch = 0; ch < s.c; ++ch) {
          Tile tile{b, row0, col0, ch, Grid<int64_t>(side, side)};
          for (int u = 0; u < side; ++u) {
            const int64_t y = row0 + u;
            if (y < 0 || y >= s.h) continue;
            for (int v = 0; v < side; ++v) {
              const int64_t x = col0 + v;
              if (x < 0 || x >= s.w) continue;
              tile.data(u, v) = t.at(b, y, x, ch);
            }
          }
          tiles.push_back(std::move(tile));
        }
      }
    }
  }
  return tiles;
}

std::string EncodeQtf(const QTensor& t) {
  nlohmann::ordered_json header = {
      {"dtype", DTypeName(t.dtype())},
      {"shape", {t.shape().n, t.shape().h, t.shape().w, t.shape().c}},
      {"zero_point", t.zero_point()},
      {"scale", t.scale()},
  };
  std::string out = header.dump();
  out.push_back('\n');
  if (t.dtype() == DType::kU8) {
    for (int32_t v : t.data()) out.push_back(static_cast<char>(static_cast<uint8_t>(v)));
  } else {
    for (int32_t v : t.data()) AppendLe32(out, v);
  }
  return out;
}

QTensor DecodeQtf(const std::string& bytes) {
  const size_t eol = bytes.find('\n');
  if (eol == std::string::npos) {
    throw WinoError(ErrorCode::kMalformedHeader, "no header line");
  }
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(0, eol));
  } catch (const nlohmann::json::exception& e) {
    throw WinoError(ErrorCode::kMalformedHeader, e.what());
  }
  if (!header.is_object() || !header.contains("dtype") || !header.contains("shape") ||
      !header["dtype"].is_string() || !header["shape"].is_array() ||
      header["shape"].size() != 4) {
    throw WinoError(ErrorCode::kMalformedHeader,
                    "header needs a dtype string and a 4-element shape");
  }
  const DType dtype = ParseDType(header["dtype"].get<std::string>());
  Shape shape;
  try {
    shape = {header["shape"][0].get<int64_t>(), header["shape"][1].get<int64_t>(),
             header["shape"][2].get<int64_t>(), header["shape"][3].get<int64_t>()};
  } catch (const nlohmann::json::exception& e) {
    throw WinoError(ErrorCode::kMalformedHeader, e.what());
  }
  CheckShape(shape);
  int zero_point = 0;
  double scale = 1.0;
  if (header.contains("zero_point")) {
    if (!header["zero_point"].is_number_integer()) {
      throw WinoError(ErrorCode::kMalformedHeader, "zero_point must be an integer");
    }
    zero_point = header["zero_point"].get<int>();
  }
  if (header.contains("scale")) {
    if (!header["scale"].is_number()) {
      throw WinoError(ErrorCode::kMalformedHeader, "scale must be a number");
    }
    scale = header["scale"].get<double>();
  }

  const int64_t count = CheckedElements(shape);
  const int64_t width = dtype == DType::kU8 ? 1 : 4;
  const int64_t payload = static_cast<int64_t>(bytes.size() - eol - 1);
  if (payload != CheckedMul(count, width)) {
    throw WinoError(ErrorCode::kLengthMismatch,
                    "payload has " + std::to_string(payload) + " bytes, shape " +
                        ToString(shape) + " needs " + std::to_string(count * width));
  }
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + eol + 1);
  std::vector<int32_t> data(static_cast<size_t>(count));
  for (int64_t i = 0; i < count; ++i) {
    data[i] = dtype == DType::kU8 ? p[i] : ReadLe32(p + 4 * i);
  }
  return QTensor(shape, dtype, zero_point, scale, std::move(data));
}

void SaveQtf(const QTensor& t, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw WinoError(ErrorCode::kIo, "cannot open " + path.string());
  const std::string bytes = EncodeQtf(t);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw WinoError(ErrorCode::kIo, "write failed for " + path.string());
}

QTensor LoadQtf(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WinoError(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return DecodeQtf(buf.str());
}

}  // namespace winoint
