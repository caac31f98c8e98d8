// Copyright 2026 The GTR Authors.
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

#include <gtest/gtest.h>

#include "gtr/error.hpp"

// Expects `statement` to throw gtr::Error with the given Errc.
#define EXPECT_GTR_ERROR(statement, errc)                                       \
  do {                                                                          \
    try {                                                                       \
      statement;                                                                \
      ADD_FAILURE() << "expected " << gtr::to_string(errc) << ", nothing thrown"; \
    } catch (const gtr::Error& e_) {                                            \
      EXPECT_EQ(e_.code(), errc) << e_.what();                                  \
    }                                                                           \
  } while (false)
