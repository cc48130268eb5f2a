// Copyright 2026 The Xapi Authors. All Rights Reserved.
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

#pragma once

#include <memory>
#include <utility>

namespace xapi {

/// Nullable, deep-copying owner of a heap value. Lets syntax trees nest
/// (`ReferenceExpr` inside `ReferenceExpr`) while keeping value semantics and
/// structural equality.
template <typename T>
class indirect {
 public:
  indirect() = default;
  indirect(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT(implicit)
  indirect(const indirect& other) : ptr_(other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr) {}
  indirect(indirect&&) noexcept = default;
  indirect& operator=(const indirect& other) {
    if (this != &other) ptr_ = other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr;
    return *this;
  }
  indirect& operator=(indirect&&) noexcept = default;
  ~indirect() = default;

  explicit operator bool() const noexcept { return ptr_ != nullptr; }
  bool has_value() const noexcept { return ptr_ != nullptr; }

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

  void reset() noexcept { ptr_.reset(); }

  friend bool operator==(const indirect& a, const indirect& b) {
    if (!a.ptr_ || !b.ptr_) return !a.ptr_ && !b.ptr_;
    return *a.ptr_ == *b.ptr_;
  }

 private:
  std::unique_ptr<T> ptr_;
};

}  // namespace xapi
