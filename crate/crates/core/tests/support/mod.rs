// Copyright 2026 the Qalam Authors
// SPDX-License-Identifier: Apache-2.0

pub mod gen;
pub mod oracle;
