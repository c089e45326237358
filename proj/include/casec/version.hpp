// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace casec {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace casec
