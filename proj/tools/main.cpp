// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors
int main() { return 0; }
