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

#ifndef WINOINT_TENSOR_H_
#define WINOINT_TENSOR_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "winoint/grid.h"

namespace winoint {

struct WinoAlgorithm;

// Dimensions in batch, row, column, channel order.
struct Shape {
  int64_t n = 0;
  int64_t h = 0;
  int64_t w = 0;
  int64_t c = 0;

  int64_t elements() const { return n * h * w * c; }
  friend bool operator==(const Shape&, const Shape&) = default;
};

std::string ToString(const Shape& shape);

enum class DType { kU8, kI32 };

const char* DTypeName(DType dtype);

// Quantized tensor as stored on disk. The dequantization scale is carried
// through untouched; no kernel reads it.
class QTensor {
 public:
  QTensor() = default;
  // Validates length, element range for kU8 and the zero point.
  QTensor(Shape shape, DType dtype, int zero_point, double scale,
          std::vector<int32_t> data);

  const Shape& shape() const { return shape_; }
  DType dtype() const { return dtype_; }
  int zero_point() const { return zero_point_; }
  double scale() const { return scale_; }
  const std::vector<int32_t>& data() const { return data_; }

  int32_t at(int64_t b, int64_t y, int64_t x, int64_t ch) const {
    return data_[((b * shape_.h + y) * shape_.w + x) * shape_.c + ch];
  }

  friend bool operator==(const QTensor&, const QTensor&) = default;

 private:
  Shape shape_;
  DType dtype_ = DType::kU8;
  int zero_point_ = 0;
  double scale_ = 1.0;
  std::vector<int32_t> data_;
};

// Signed integer tensor whose elements all fit a declared signed bit width.
class ITensor {
 public:
  ITensor() = default;
  ITensor(Shape shape, int bit_width, std::vector<int32_t> data);

  const Shape& shape() const { return shape_; }
  int bit_width() const { return bit_width_; }
  const std::vector<int32_t>& data() const { return data_; }

  int32_t at(int64_t b, int64_t y, int64_t x, int64_t ch) const {
    return data_[((b * shape_.h + y) * shape_.w + x) * shape_.c + ch];
  }

  // Stored as a QTF i32 tensor with zero point 0.
  QTensor ToQTensor() const;

  friend bool operator==(const ITensor&, const ITensor&) = default;

 private:
  Shape shape_;
  int bit_width_ = 32;
  std::vector<int32_t> data_;
};

// element − zero_point for every element; declared width 9.
ITensor ZeroPointAdjust(const QTensor& t);

struct Tile {
  int64_t batch = 0;
  int64_t row = 0;  // origin in the unpadded input; may be negative
  int64_t col = 0;
  int64_t channel = 0;
  Grid<int64_t> data;
};

// Number of output rows/cols of a 3×3, stride-1 convolution.
int64_t ConvOutputExtent(int64_t input, int padding);

// Tile grid for one spatial plane: ceil(out_h/m) × ceil(out_w/m).
std::array<int64_t, 2> TileGridExtent(const Shape& shape, int padding, int m);

// Cuts t×t tiles at stride m over the zero-padded input. Tiles are ordered
// batch, tile row, tile column, channel. Reads past the padded border give 0.
std::vector<Tile> ExtractTiles(const ITensor& t, const WinoAlgorithm& algorithm,
                               int padding);

// QTF: one JSON header line, then raw little-endian element data.
void SaveQtf(const QTensor& t, const std::filesystem::path& path);
QTensor LoadQtf(const std::filesystem::path& path);

std::string EncodeQtf(const QTensor& t);
QTensor DecodeQtf(const std::string& bytes);

}  // namespace winoint

#endif  // WINOINT_TENSOR_H_
