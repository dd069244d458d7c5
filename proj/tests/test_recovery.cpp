// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
